"""Command-line interface: build, search, verify, baer-check, demo, mols.

Exit codes: 0 success, 2 a construction hypothesis or verification failed,
3 the searched-for object does not exist, 4 a resource cap was hit, 5 the
input was malformed (including usage errors).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import baer, constructions as cons, field_instances as fi, quasigroup as qg
from .errors import (
    ConsistencyError,
    ConstructionError,
    GroupError,
    MalformedTableError,
    ParseError,
    ResourceLimitError,
)
from .group import (
    LEFT,
    RIGHT,
    FiniteGroup,
    Subgroup,
    conjugates,
    cosets,
    default_transversal,
    find_complement,
    from_permutations,
    is_regular,
    make_alternating,
    make_cyclic,
    make_dihedral,
    make_symmetric,
    make_transversal,
    read_group_file,
    search_regular_subgroups,
    stabilizer,
    subgroup_generated,
    trivial_subgroup,
    whole_group,
)
from .perm import generate_closure, parity, parse_cycles, render_cycles
from .sudoku_table import (
    CayleySudokuTable,
    dump_document,
    from_exchange,
    render_text,
    to_exchange,
    verify_sudoku,
)

EXIT_OK = 0
EXIT_CONDITION = 2
EXIT_NONE = 3
EXIT_RESOURCE = 4
EXIT_MALFORMED = 5

CONSTRUCTIONS = ("1R", "1L", "2L", "2R", "3")
DEMOS = ("z9", "s3-c1", "s3-c2", "q6-left", "q6-right", "qn:<n>", "mols:<p>")


class Outcome(Exception):
    """Carries a non-zero exit code and the document to print."""

    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


# ------------------------------------------------------------------ specs


def parse_quasigroup_spec(spec: str) -> qg.Quasigroup:
    if spec.startswith("qn:"):
        try:
            n = int(spec[3:])
        except ValueError:
            raise ParseError(f"bad quasigroup spec {spec!r}") from None
        return qg.make_qn(n)
    return qg.read_quasigroup_file(spec)


def parse_group_spec(spec: str) -> FiniteGroup:
    """Z<n>, S<n>, A<n>, D<n>, perm:<deg>:<gen>;..., table:<path>,
    lmult:<quasigroup>, rmult:<quasigroup>, gfp2:<p>.

    A quasigroup is a file path or ``qn:<n>``.
    """
    spec = spec.strip()
    try:
        if spec[:1] in "ZSAD" and spec[1:].isdigit():
            n = int(spec[1:])
            G = {"Z": make_cyclic, "S": make_symmetric, "A": make_alternating, "D": make_dihedral}[spec[0]](n)
        elif spec.startswith("perm:"):
            _, deg, gens = spec.split(":", 2)
            perms = [parse_cycles(g, int(deg)) for g in gens.split(";") if g.strip()]
            if not perms:
                perms = [parse_cycles("()", int(deg))]
            G = from_permutations(generate_closure(perms))
        elif spec.startswith("table:"):
            G = read_group_file(spec[6:])
        elif spec.startswith("lmult:"):
            G = qg.lmult(parse_quasigroup_spec(spec[6:]))
        elif spec.startswith("rmult:"):
            G = qg.rmult(parse_quasigroup_spec(spec[6:]))
        elif spec.startswith("gfp2:"):
            G = fi.make_field(int(spec[5:])).additive_group
        else:
            raise ParseError(f"unknown group spec {spec!r}")
    except (ValueError, OSError) as exc:
        if isinstance(exc, (ParseError, GroupError)):
            raise
        raise ParseError(f"bad group spec {spec!r}: {exc}") from None
    G.spec = spec
    return G


def parse_elements(G: FiniteGroup, text: str) -> list[int]:
    """Semicolon-separated element labels (cycle notation accepted for permutation groups)."""
    return [G.index_of(tok) for tok in text.split(";") if tok.strip()]


def parse_subgroup_spec(G: FiniteGroup, spec: str) -> Subgroup:
    """Generators separated by ';', or trivial, whole, stab:<point>, subfield."""
    spec = spec.strip()
    if spec in ("", "trivial"):
        return trivial_subgroup(G)
    if spec == "whole":
        return whole_group(G)
    if spec.startswith("stab:"):
        return stabilizer(G, int(spec[5:]) - 1)
    if spec == "subfield":
        if not (G.spec or "").startswith("gfp2:"):
            raise ParseError("'subfield' needs a gfp2:<p> group")
        return Subgroup(G, tuple(range(int(G.spec[5:]))))
    return subgroup_generated(G, parse_elements(G, spec))


def read_partition(G: FiniteGroup, path: str) -> list[tuple[int, ...]]:
    """JSON list of parts, each a list of element labels."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read partition {path}: {exc}") from None
    if not isinstance(doc, list) or not all(isinstance(p, list) for p in doc):
        raise ParseError("partition file must be a JSON list of lists of labels")
    return [tuple(G.index_of(str(x)) for x in part) for part in doc]


# -------------------------------------------------------------- commands


def _emit_table(T: CayleySudokuTable, output: str) -> str:
    if output == "exchange":
        return to_exchange(T)
    return render_text(T)


def build_table(args) -> CayleySudokuTable:
    G = parse_group_spec(args.group)
    S = parse_subgroup_spec(G, args.subgroup)
    c = args.construction
    if c in ("1R", "1L"):
        side = LEFT if c == "1R" else RIGHT
        if args.partition:
            P = cons.make_partition(S, side, read_partition(G, args.partition))
        else:
            P = cons.default_partition(S, side)
        return cons.construct1_right(S, P) if c == "1R" else cons.construct1_left(S, P)
    if c in ("2L", "2R"):
        side = LEFT if c == "2L" else RIGHT
        if args.partition:
            P = cons.make_partition(S, side, read_partition(G, args.partition))
        else:
            R = cons.find_universal_transversal(S, side, cap=args.cap)
            if R is None:
                raise Outcome(
                    EXIT_NONE,
                    f"none: exhaustive search found no {side} transversal common to all "
                    f"{len(conjugates(S))} conjugates of the subgroup",
                )
            P = cons.translate_transversal_partition(R)
        return cons.construct2_left(S, P) if c == "2L" else cons.construct2_right(S, P)
    # Construction 3: S plays the role of A
    if not args.inner:
        raise ParseError("construction 3 needs --inner <exchange file>")
    inner_src = from_exchange(Path(args.inner).read_text(encoding="utf-8"))
    AG = S.as_group
    try:
        inner = CayleySudokuTable.arrange(
            AG,
            [[AG.index_of(inner_src.group.labels[x]) for x in p] for p in inner_src.row_parts()],
            [[AG.index_of(inner_src.group.labels[x]) for x in p] for p in inner_src.col_parts()],
        )
    except ParseError as exc:
        raise ParseError(f"inner table labels do not match the subgroup: {exc}") from None
    lreps = (
        make_transversal(S, LEFT, parse_elements(G, args.left_reps))
        if args.left_reps else default_transversal(S, LEFT)
    )
    rreps = (
        make_transversal(S, RIGHT, parse_elements(G, args.right_reps))
        if args.right_reps else default_transversal(S, RIGHT)
    )
    return cons.construct3(S, inner, lreps, rreps)


def cmd_build(args) -> str:
    return _emit_table(build_table(args), args.output)


def cmd_search(args) -> str:
    G = parse_group_spec(args.group)
    if args.kind == "regular":
        found = search_regular_subgroups(G, cap=args.cap)
        doc = {"group_order": G.order, "regular_subgroups": [H.labels() for H in found]}
        if not found:
            raise Outcome(EXIT_NONE, dump_document({**doc, "result": "none"}))
        return dump_document(doc)
    S = parse_subgroup_spec(G, args.subgroup)
    if args.kind == "complement":
        C = find_complement(S, cap=args.cap)
        doc = {"subgroup": S.labels(), "complement": C.labels() if C else None}
    else:
        R = cons.find_universal_transversal(S, args.side, cap=args.cap)
        doc = {
            "subgroup": S.labels(),
            "side": args.side,
            "conjugates": len(conjugates(S)),
            "universal_transversal": [G.labels[a] for a in R.reps] if R else None,
        }
    if doc.get("complement", 0) is None or doc.get("universal_transversal", 0) is None:
        raise Outcome(EXIT_NONE, dump_document({**doc, "result": "none"}))
    return dump_document(doc)


def cmd_verify(args) -> str:
    try:
        text = Path(args.path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {args.path}: {exc}") from None
    T = from_exchange(text)
    report = verify_sudoku(T)
    doc = {
        "verdict": "pass" if report else "fail",
        "block_shape": list(T.block_shape) if T.block_shape else None,
    }
    if not report:
        doc["reason"] = report.reason
        doc["failures"] = [f.describe(T.group) for f in report.failures]
        raise Outcome(EXIT_CONDITION, dump_document(doc))
    return dump_document(doc)


def cmd_baer_check(args) -> str:
    G = parse_group_spec(args.group)
    S = parse_subgroup_spec(G, args.subgroup)
    side = args.side
    if args.partition:
        parts = read_partition(G, args.partition)
    else:
        R = cons.find_universal_transversal(S, side, cap=args.cap)
        if R is not None:
            parts = list(cons.translate_transversal_partition(R).parts)
        else:
            parts = list(cons.default_partition(S, side).parts)
    report = baer.baer_equivalence_check(S, parts, side=side)
    doc = {
        "subgroup": S.labels(),
        "side": side,
        "parts": [[G.labels[a] for a in p] for p in parts],
        "report": report.to_dict(),
    }
    if not all(report.verdicts):
        raise Outcome(EXIT_CONDITION, dump_document(doc))
    return dump_document(doc)


def cmd_mols(args) -> str:
    spec = args.field
    p = int(spec[5:]) if spec.startswith("gfp2:") else int(spec)
    K = fi.make_field(p)
    fam = fi.mols_family(K)
    doc = fam.to_dict()
    doc["verified"] = [bool(verify_sudoku(T)) for T in fam.tables]
    return dump_document(doc)


# ------------------------------------------------------------------ demos


def _labels(G: FiniteGroup, elems) -> list[str]:
    return [G.labels[a] for a in elems]


def _table_doc(T: CayleySudokuTable) -> dict:
    report = verify_sudoku(T)
    return {
        "block_shape": list(T.block_shape),
        "verified": bool(report),
        "table": render_text(T),
    }


def demo_z9() -> dict:
    G = make_cyclic(9)
    S = subgroup_generated(G, [3])
    P = cons.default_partition(S, LEFT)
    T = cons.construct1_right(S, P)
    return {
        "demo": "z9",
        "group": "Z9",
        "subgroup": S.labels(),
        "right_cosets": [c.labels() for c in cosets(S, RIGHT)],
        "row_parts": [_labels(G, p) for p in P.parts],
        "construction": "1R",
        **_table_doc(T),
    }


def demo_s3_c1() -> dict:
    G = make_symmetric(3)
    S = subgroup_generated(G, [G.index_of("(12)")])
    R1 = parse_elements(G, "(1);(13);(132)")
    R2 = parse_elements(G, "(12);(123);(23)")
    T = cons.construct1_left(S, cons.make_partition(S, RIGHT, [R1, R2]))
    return {
        "demo": "s3-c1",
        "group": "S3",
        "subgroup": S.labels(),
        "left_cosets": [c.labels() for c in cosets(S, LEFT)],
        "right_cosets": [c.labels() for c in cosets(S, RIGHT)],
        "column_parts": [_labels(G, R1), _labels(G, R2)],
        "construction": "1L",
        **_table_doc(T),
    }


def demo_s3_c2() -> dict:
    G = make_symmetric(3)
    S = subgroup_generated(G, [G.index_of("(12)")])
    R = cons.find_universal_transversal(S, LEFT)
    P = cons.translate_transversal_partition(R)
    T = cons.construct2_left(S, P)
    C = find_complement(S)
    return {
        "demo": "s3-c2",
        "group": "S3",
        "subgroup": S.labels(),
        "conjugates": [H.labels() for H in conjugates(S)],
        "left_cosets": [c.labels() for c in cosets(S, LEFT)],
        "universal_transversal": _labels(G, R.reps),
        "row_parts": [_labels(G, p) for p in P.parts],
        "complement": C.labels() if C else None,
        "construction": "2L",
        **_table_doc(T),
    }


def demo_q6(side: str) -> dict:
    Q = qg.make_qn(6)
    if side == LEFT:
        trans = [qg.left_translation(Q, l) for l in range(1, 7)]
        G = qg.lmult(Q)
    else:
        trans = [qg.right_translation(Q, l) for l in range(1, 7)]
        G = qg.rmult(Q)
    U = qg.quasieg_transversal(Q, side, 1, group=G)
    S = U.subgroup
    C = find_complement(S)
    P = cons.translate_transversal_partition(U)
    if side == LEFT:
        T = cons.construct2_left(S, P)
    else:
        T = cons.construct2_right(S, P)
    name = "lambda" if side == LEFT else "rho"
    doc = {
        "demo": f"q6-{side}",
        "quasigroup": [list(r) for r in Q.table],
        "translations": {f"{name}_{l}": render_cycles(p) for l, p in enumerate(trans, 1)},
        "parities": {f"{name}_{l}": parity(p) for l, p in enumerate(trans, 1)},
        "group": "LMult(Q6)" if side == LEFT else "RMult(Q6)",
        "group_order": G.order,
        "stabilizer_of_1": S.labels(),
        "translations_universal": True,
        "complement": C.labels() if C else None,
        "complement_is_regular": is_regular(C) if C else None,
        "construction": "2L" if side == LEFT else "2R",
        "parts": len(P.parts),
        **_table_doc(T),
    }
    if side == LEFT:
        doc["regular_subgroups_of_A6"] = len(search_regular_subgroups(make_alternating(6)))
        doc["regular_subgroups"] = len(search_regular_subgroups(G))
    else:
        doc["baer"] = baer.baer_equivalence_check(S, P.parts, side=RIGHT).to_dict()
    return doc


def demo_qn(n: int) -> dict:
    Q = qg.make_qn(n)
    lambdas = [qg.qn_lambda_formula(n, i) for i in range(1, n + 1)]
    doc = {
        "demo": f"qn:{n}",
        "quasigroup": [list(r) for r in Q.table],
        "lambda_formula_matches_table": True,
        "lambdas": [render_cycles(p) for p in lambdas],
        "all_even": all(parity(p) == "even" for p in lambdas),
        "n_is_2_mod_4": qg.qn_has_even_case(n),
        "no_regular_subgroup_by_parity": qg.no_regular_subgroup_by_parity(lambdas),
    }
    if n <= 6:
        G = qg.lmult(Q)
        U = qg.quasieg_transversal(Q, LEFT, 1, group=G)
        T = cons.construct2_left(U.subgroup, cons.translate_transversal_partition(U))
        doc["group_order"] = G.order
        doc["stabilizer_of_1"] = U.subgroup.labels()
        doc["complement"] = (lambda C: C.labels() if C else None)(find_complement(U.subgroup))
        doc.update(_table_doc(T))
    return doc


def demo_mols(p: int) -> dict:
    K = fi.make_field(p)
    fam = fi.mols_family(K)
    F = K.subfield
    oracle_equal = []
    for x, T in zip(fam.xs, fam.tables):
        P = cons.make_partition(F, LEFT, fi.row_partition(K, x))
        oracle_equal.append(cons.construct1_right(F, P) == T)
    return {
        "demo": f"mols:{p}",
        **fam.to_dict(),
        "tables": len(fam.tables),
        "verified": all(bool(verify_sudoku(T)) for T in fam.tables),
        "equals_construction_1R": all(oracle_equal),
        "first_table": render_text(fam.tables[0]),
    }


def run_demo(name: str) -> dict:
    if name == "z9":
        return demo_z9()
    if name == "s3-c1":
        return demo_s3_c1()
    if name == "s3-c2":
        return demo_s3_c2()
    if name == "q6-left":
        return demo_q6(LEFT)
    if name == "q6-right":
        return demo_q6(RIGHT)
    if name.startswith("qn:") and name[3:].isdigit():
        return demo_qn(int(name[3:]))
    if name.startswith("mols:") and name[5:].isdigit():
        return demo_mols(int(name[5:]))
    raise ParseError(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}")


def format_document(doc: dict) -> str:
    lines = []
    for key, value in doc.items():
        if isinstance(value, str) and "\n" in value:
            lines.append(f"{key}:")
            lines.extend("  " + ln for ln in value.rstrip("\n").splitlines())
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {k}: {json.dumps(v, ensure_ascii=False)}" for k, v in value.items())
        else:
            lines.append(f"{key}: {json.dumps(value, ensure_ascii=False)}")
    return "\n".join(lines) + "\n"


def cmd_demo(args) -> str:
    doc = run_demo(args.name)
    if args.output == "exchange":
        return dump_document(doc)
    return format_document(doc)


# ------------------------------------------------------------------- main


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cayley-sudoku", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, subgroup=True):
        p.add_argument("--group", required=True, help="group spec, e.g. Z9, S3, lmult:qn:6")
        if subgroup:
            p.add_argument("--subgroup", default="trivial",
                           help="generators separated by ';', or trivial, whole, stab:<point>, subfield")
        p.add_argument("--cap", type=int, default=cons.DEFAULT_NODE_CAP, help="search budget")

    p = sub.add_parser("build", help="build and verify a Cayley-Sudoku table")
    common(p)
    p.add_argument("--construction", required=True, choices=CONSTRUCTIONS)
    p.add_argument("--partition", help="JSON file: list of parts (lists of labels)")
    p.add_argument("--inner", help="construction 3: exchange file of a table of the subgroup")
    p.add_argument("--left-reps", help="construction 3: left coset representatives, ';'-separated")
    p.add_argument("--right-reps", help="construction 3: right coset representatives, ';'-separated")
    p.add_argument("--output", choices=("text", "exchange"), default="text")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("search", help="search for universal transversals, complements, regular subgroups")
    p.add_argument("kind", choices=("universal", "complement", "regular"))
    common(p)
    p.add_argument("--side", choices=(LEFT, RIGHT), default=LEFT)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="re-verify a table in exchange format")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("baer-check", help="three-way Construction 2 equivalence report")
    common(p)
    p.add_argument("--partition", help="JSON file: list of parts (lists of labels)")
    p.add_argument("--side", choices=(LEFT, RIGHT), default=RIGHT)
    p.set_defaults(func=cmd_baer_check)

    p = sub.add_parser("demo", help="reproduce a worked example end to end")
    p.add_argument("name", help=", ".join(DEMOS))
    p.add_argument("--output", choices=("text", "exchange"), default="text")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("mols", help="orthogonality matrix of the GF(p^2) tables")
    p.add_argument("--field", required=True, help="p or gfp2:<p>")
    p.set_defaults(func=cmd_mols)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except Outcome as exc:
        stream = sys.stdout if exc.code == EXIT_NONE or str(exc).startswith("{") else sys.stderr
        print(str(exc).rstrip("\n"), file=stream)
        return exc.code
    except ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        if exc.witness:
            print(json.dumps(exc.witness, sort_keys=True, ensure_ascii=False), file=sys.stderr)
        return EXIT_CONDITION
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, GroupError, MalformedTableError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
