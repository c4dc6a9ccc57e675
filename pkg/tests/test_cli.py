import json
import subprocess
import sys

import pytest

from cayley_sudoku.cli import main, parse_group_spec, parse_subgroup_spec
from cayley_sudoku.errors import ParseError
from cayley_sudoku.sudoku_table import parse_rendered
from paper_tables import TABLE1_COLS, TABLE1_ROWS, TABLE2_ROWS, TABLE7_COLS, TABLE7_ROWS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def body_from_render(text):
    rows = []
    for ln in text.splitlines()[2:]:
        if set(ln.strip()) <= set("-+"):
            continue
        label, cells = ln.split("||")
        rows.append([label.strip()] + cells.replace("|", " ").split())
    return rows


def test_build_table1(capsys):
    code, out, _ = run(capsys, "build", "--group", "Z9", "--subgroup", "3", "--construction", "1R")
    assert code == 0
    assert out.splitlines()[0].split("||")[1].replace("|", " ").split() == TABLE1_COLS
    assert body_from_render(out) == [r.split() for r in TABLE1_ROWS]


def test_build_table7(capsys):
    code, out, _ = run(capsys, "build", "--group", "S3", "--subgroup", "(12)", "--construction", "2L")
    assert code == 0
    assert out.splitlines()[0].split("||")[1].replace("|", " ").split() == TABLE7_COLS
    assert body_from_render(out) == [r.split() for r in TABLE7_ROWS]


def test_build_s4_none(capsys):
    code, out, _ = run(capsys, "build", "--group", "S4", "--subgroup", "(12)(34)", "--construction", "2L")
    assert code == 3
    assert out.startswith("none:")


def test_build_is_deterministic(capsys):
    argv = ["build", "--group", "D4", "--subgroup", "(13)", "--construction", "2R", "--output", "exchange"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0


@pytest.mark.parametrize("construction", ["1R", "1L", "2L", "2R"])
def test_build_exchange_verifies(capsys, tmp_path, construction):
    code, out, _ = run(capsys, "build", "--group", "A4", "--subgroup", "(12)(34);(13)(24)",
                       "--construction", construction, "--output", "exchange")
    assert code == 0
    path = tmp_path / "t.json"
    path.write_text(out, encoding="utf-8")
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_build_with_partition_file(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps([["(1)", "(13)", "(132)"], ["(12)", "(123)", "(23)"]]), encoding="utf-8")
    code, out, _ = run(capsys, "build", "--group", "S3", "--subgroup", "(12)", "--construction", "1L",
                       "--partition", str(path))
    assert code == 0
    assert out.splitlines()[0].split("||")[1].split() == ["(1)", "(13)", "(132)", "|", "(12)", "(123)", "(23)", "|"]


def test_build_condition_failure(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps([["(1)", "(12)", "(13)"], ["(23)", "(123)", "(132)"]]), encoding="utf-8")
    code, _, err = run(capsys, "build", "--group", "S3", "--subgroup", "(12)", "--construction", "1L",
                       "--partition", str(path))
    assert code == 2
    assert "double-hit" in err


def test_build_2l_with_non_universal_partition(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps([["(1)", "(13)", "(23)"], ["(12)", "(123)", "(132)"]]), encoding="utf-8")
    code, _, err = run(capsys, "build", "--group", "S3", "--subgroup", "(12)", "--construction", "2L",
                       "--partition", str(path))
    assert code == 2
    assert "conjugate" in err


def test_build_construction3(capsys, tmp_path):
    # inner: Z3 = <(123)> with its trivial subgroup, labelled as in S3
    code, inner, _ = run(capsys, "build", "--group", "perm:3:(123)", "--subgroup", "whole",
                         "--construction", "1R", "--output", "exchange")
    assert code == 0
    path = tmp_path / "inner.json"
    path.write_text(inner, encoding="utf-8")
    code, out, _ = run(capsys, "build", "--group", "S3", "--subgroup", "(123)", "--construction", "3",
                       "--inner", str(path), "--output", "exchange")
    assert code == 0
    assert json.loads(out)["verified"] is True
    code, _, err = run(capsys, "build", "--group", "S3", "--subgroup", "(12)", "--construction", "3",
                       "--inner", str(path))
    assert code == 5


def test_build_resource_cap(capsys):
    code, _, err = run(capsys, "build", "--group", "S4", "--subgroup", "(12)(34)", "--construction", "2L",
                       "--cap", "5")
    assert code == 4
    assert "cap=5" in err


def test_verify_mutated_and_malformed(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "--group", "Z9", "--subgroup", "3", "--construction", "1R",
                       "--output", "exchange")
    doc = json.loads(out)
    # swap two columns inside the border and body consistently: still a table, but blocks break
    doc["col_labels"][2], doc["col_labels"][3] = doc["col_labels"][3], doc["col_labels"][2]
    for row in doc["body"]:
        row[2], row[3] = row[3], row[2]
    path = tmp_path / "swapped.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 2
    report = json.loads(out)
    assert report["verdict"] == "fail"
    assert report["failures"][0]["row_block"] == 0 and report["failures"][0]["col_block"] == 0

    doc["body"][0][0] = doc["body"][0][1]
    path.write_text(json.dumps(doc), encoding="utf-8")
    assert run(capsys, "verify", str(path))[0] == 5

    path.write_text("not json", encoding="utf-8")
    assert run(capsys, "verify", str(path))[0] == 5
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 5


def test_verify_body_cell_swap(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "--group", "Z9", "--subgroup", "3", "--construction", "1R",
                       "--output", "exchange")
    doc = json.loads(out)
    doc["body"][0][0], doc["body"][0][1] = doc["body"][0][1], doc["body"][0][0]
    path = tmp_path / "t.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = run(capsys, "verify", str(path))
    assert code == 5
    assert "body cell (0, 0)" in err


def test_search_commands(capsys):
    code, out, _ = run(capsys, "search", "universal", "--group", "S3", "--subgroup", "(12)")
    assert code == 0 and json.loads(out)["universal_transversal"] == ["(1)", "(123)", "(132)"]
    code, out, _ = run(capsys, "search", "complement", "--group", "rmult:qn:6", "--subgroup", "stab:1")
    assert code == 0 and "(153426)" in json.loads(out)["complement"]
    code, out, _ = run(capsys, "search", "complement", "--group", "lmult:qn:6", "--subgroup", "stab:1")
    assert code == 3 and json.loads(out)["result"] == "none"
    code, out, _ = run(capsys, "search", "regular", "--group", "A6")
    assert code == 3 and json.loads(out)["regular_subgroups"] == []
    code, out, _ = run(capsys, "search", "regular", "--group", "S3")
    assert code == 0


def test_baer_check_command(capsys, tmp_path):
    code, out, _ = run(capsys, "baer-check", "--group", "S3", "--subgroup", "(12)")
    assert code == 0
    assert json.loads(out)["report"]["quasigroup"] is True
    path = tmp_path / "p.json"
    path.write_text(json.dumps([["(1)", "(13)", "(23)"], ["(12)", "(123)", "(132)"]]), encoding="utf-8")
    code, out, _ = run(capsys, "baer-check", "--group", "S3", "--subgroup", "(12)", "--partition", str(path))
    assert code == 2
    report = json.loads(out)["report"]
    assert (report["sudoku"], report["universal_transversal"], report["quasigroup"]) == (False, False, False)


def test_mols_command(capsys):
    code, out, _ = run(capsys, "mols", "--field", "gfp2:3")
    doc = json.loads(out)
    assert code == 0 and doc["pairs"] == 15 and doc["all_pairs_orthogonal"]
    assert all(doc["verified"])


@pytest.mark.parametrize("name", ["z9", "s3-c1", "s3-c2", "q6-left", "q6-right", "qn:6", "qn:10", "mols:2", "mols:3"])
def test_demos_run_and_verify(capsys, name):
    code, out, _ = run(capsys, "demo", name, "--output", "exchange")
    assert code == 0
    doc = json.loads(out)
    if "verified" in doc:
        assert doc["verified"] is True


def test_demo_q6_numbers(capsys):
    left = json.loads(run(capsys, "demo", "q6-left", "--output", "exchange")[1])
    right = json.loads(run(capsys, "demo", "q6-right", "--output", "exchange")[1])
    assert left["group_order"] == 36 and left["complement"] is None and left["block_shape"] == [6, 6]
    assert left["regular_subgroups_of_A6"] == 0
    assert right["group_order"] == 18
    assert set(right["stabilizer_of_1"]) == {"(1)", "(456)", "(465)"}
    assert "(153426)" in right["complement"]
    assert sorted(right["block_shape"]) == [3, 6]


def test_demo_s3_c1_text_contains_table2(capsys):
    code, out, _ = run(capsys, "demo", "s3-c1")
    assert code == 0
    table = "\n".join(ln[2:] for ln in out.split("table:\n", 1)[1].splitlines())
    assert body_from_render(table) == [r.split() for r in TABLE2_ROWS]


def test_unknown_demo_and_usage_errors(capsys):
    assert run(capsys, "demo", "nope")[0] == 5
    with pytest.raises(SystemExit) as info:
        main(["build", "--group", "Z9"])
    assert info.value.code == 5
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 5
    assert run(capsys, "build", "--group", "Q9", "--construction", "1R")[0] == 5
    assert run(capsys, "build", "--group", "S3", "--subgroup", "(14)", "--construction", "1R")[0] == 5


def test_group_specs():
    assert parse_group_spec("Z9").order == 9
    assert parse_group_spec("S4").order == 24
    assert parse_group_spec("A5").order == 60
    assert parse_group_spec("D6").order == 12
    assert parse_group_spec("perm:5:(12);(12345)").order == 120
    assert parse_group_spec("perm:4:").order == 1
    assert parse_group_spec("lmult:qn:6").order == 36
    assert parse_group_spec("gfp2:3").order == 9
    with pytest.raises(ParseError):
        parse_group_spec("perm:x:(12)")
    with pytest.raises(ParseError):
        parse_group_spec("table:/nonexistent/file")


def test_group_spec_from_files(tmp_path):
    g = tmp_path / "z2.txt"
    g.write_text("e a\ne a\na e\n", encoding="utf-8")
    assert parse_group_spec(f"table:{g}").order == 2
    q = tmp_path / "q.txt"
    q.write_text("1 2\n2 1\n", encoding="utf-8")
    assert parse_group_spec(f"rmult:{q}").order == 2


def test_subgroup_specs():
    G = parse_group_spec("gfp2:3")
    assert parse_subgroup_spec(G, "subfield").labels() == ["0", "1", "2"]
    assert parse_subgroup_spec(G, "whole").order == 9
    assert parse_subgroup_spec(G, "trivial").order == 1
    with pytest.raises(ParseError):
        parse_subgroup_spec(parse_group_spec("Z9"), "subfield")
    H = parse_group_spec("S3")
    assert parse_subgroup_spec(H, "stab:3").labels() == ["(1)", "(12)"]


def test_rendered_output_parses(capsys):
    code, out, _ = run(capsys, "build", "--group", "gfp2:3", "--subgroup", "subfield", "--construction", "1R")
    assert code == 0
    G = parse_group_spec("gfp2:3")
    rows, cols, rb, cb = parse_rendered(out, G)
    assert len(rows) == len(cols) == 9 and len(rb) == len(cb) == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cayley_sudoku", "build", "--group", "Z9", "--subgroup", "3", "--construction", "1R"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert body_from_render(proc.stdout) == [r.split() for r in TABLE1_ROWS]
