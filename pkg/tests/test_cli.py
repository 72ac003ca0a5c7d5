"""Interpreter semantics and the command-line exit-code contract."""

import json
import subprocess
import sys

import pytest

from mvgamma.cli import main
from mvgamma.interp import RunConfig, SemanticError, execute
from mvgamma.script import parse_script
from mvgamma.serialize import import_json


def run_text(text, **kwargs):
    return execute(parse_script(text), RunConfig(**kwargs))


# ---------------------------------------------------------------- interpreter


def test_passing_script_report():
    report = run_text(
        "algebra A = chain 2\nspec A\nstar A\nroundtrip A\n"
        "group G = fibers [3] unit [(1,0)]\ngamma G"
    )
    assert report.exit_code == 0
    payload = json.loads(report.to_text())
    assert payload["overall"] == "pass"
    assert [c["command"] for c in payload["commands"]] == [
        "spec",
        "star",
        "roundtrip",
        "gamma",
    ]
    assert all(c["status"] == "pass" for c in payload["commands"])


def test_failing_check_sets_exit_one():
    report = run_text("algebra A = chain 1\nfreequotient A --keep-zero")
    assert report.exit_code == 1
    payload = json.loads(report.to_text())
    assert payload["overall"] == "fail"
    assert payload["commands"][0]["status"] == "fail"


def test_member_failure_is_exit_one_not_an_error():
    # the middle of a three-element chain is not generated by a hom from chain 1
    report = run_text(
        "algebra A = chain 1\nalgebra B = chain 2\n"
        'hom h : A -> B { 0->0, 1->2 }\nmember h {"coords":[{"m":0,"a":1}]}'
    )
    assert report.exit_code == 1
    detail = json.loads(report.to_text())["commands"][0]["detail"]
    assert detail["member"] is False
    assert detail["missing"] == {"coords": [{"m": 0, "a": 1}]}


def test_member_success_reports_witness():
    report = run_text('algebra A = chain 2\nmember A {"coords":[{"m":0,"a":1}]}')
    assert report.exit_code == 0
    detail = json.loads(report.to_text())["commands"][0]["detail"]
    assert detail["member"] is True


def test_goodseq_command():
    report = run_text('group G = fibers [3] unit [(1,0)]\ngoodseq G {"coords":[{"m":2,"a":1}]}')
    assert report.exit_code == 0
    detail = json.loads(report.to_text())["commands"][0]["detail"]
    assert detail["entries"]  # canonical entries listed in segment indices


def test_goodseq_rejects_negative_element():
    with pytest.raises(SemanticError, match="nonnegative"):
        run_text('group G = fibers [3] unit [(1,0)]\ngoodseq G {"coords":[{"m":-1,"a":1}]}')


def test_kind_mismatch_is_semantic():
    with pytest.raises(SemanticError, match="needs 'group'"):
        run_text("algebra A = chain 2\ngamma A")


def test_chain_zero_is_semantic():
    with pytest.raises(SemanticError, match="chain height"):
        run_text("algebra A = chain 0")


def test_table_failing_axioms_is_semantic():
    with pytest.raises(SemanticError, match="violates the"):
        run_text('algebra A = table {"size":2,"oplus":[[0,1],[1,0]],"neg":[1,0]}')


def test_lawless_hom_is_semantic():
    with pytest.raises(SemanticError, match="oplus law") as err:
        run_text(
            "algebra A = chain 1\nalgebra B = chain 2\nhom h : A -> B { 0->0, 1->1 }"
        )
    assert err.value.counterexample is not None


def test_non_total_hom_is_semantic():
    with pytest.raises(SemanticError, match="unassigned"):
        run_text("algebra A = chain 2\nalgebra B = chain 2\nhom h : A -> B { 0->0 }")


def test_group_unit_must_be_positive():
    with pytest.raises(SemanticError, match="unit"):
        run_text("group G = fibers [2, 2] unit [(1,0), (0,0)]")


def test_group_unit_arity_mismatch():
    with pytest.raises(SemanticError, match="unit"):
        run_text("group G = fibers [2, 2] unit [(1,0)]")


def test_element_out_of_range_is_semantic():
    with pytest.raises(SemanticError, match="offset"):
        run_text('group G = fibers [2] unit [(1,0)]\ngoodseq G {"coords":[{"m":0,"a":7}]}')


def test_check_single_group():
    report = run_text("group G = fibers [2, 3] unit [(1,0),(1,0)]\ncheck G")
    assert report.exit_code == 0
    detail = json.loads(report.to_text())["commands"][0]["detail"]
    assert detail == {
        "upsilon": True,
        "coordinate_ideals": True,
        "good_sequence_sums": True,
    }


def test_check_single_hom():
    report = run_text(
        "algebra A = chain 1\nalgebra B = chain 3\n"
        "hom h : A -> B { 0->0, 1->3 }\ncheck h"
    )
    assert report.exit_code == 0


def test_roundtrip_group_command():
    report = run_text("group G = fibers [2, 2] unit [(1,1),(1,0)]\nroundtrip G", window=3)
    assert report.exit_code == 0
    detail = json.loads(report.to_text())["commands"][0]["detail"]
    for flag in (
        "additive",
        "order_embedding",
        "preserves_unit",
        "segment_identity",
        "surjective",
        "box_is_circle",
    ):
        assert detail[flag] is True


def test_export_writes_canonical_json(tmp_path):
    out = tmp_path / "алгебра.json"
    report = run_text(f'algebra A = chain 2\nexport A "{out}"')
    assert report.exit_code == 0
    loaded = import_json(str(out))
    assert loaded.size == 3


def test_export_to_unwritable_path_is_semantic(tmp_path):
    with pytest.raises(SemanticError, match="cannot write"):
        run_text(f'algebra A = chain 2\nexport A "{tmp_path}/no/such/dir/a.json"')


def test_report_is_deterministic():
    text = "algebra A = chain 2\nalgebra B = A * A\nspec B\nroundtrip B"
    assert run_text(text).to_text() == run_text(text).to_text()


# ------------------------------------------------------------------ CLI shell


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_cli_pass_is_zero(tmp_path, capsys):
    path = write(tmp_path, "ok.mvg", "algebra A = chain 2\nroundtrip A\n")
    assert main(["run", path]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["overall"] == "pass"


def test_cli_failed_check_is_one(tmp_path, capsys):
    path = write(tmp_path, "fail.mvg", "algebra A = chain 1\nfreequotient A --keep-zero\n")
    assert main(["run", path]) == 1
    assert json.loads(capsys.readouterr().out)["overall"] == "fail"


def test_cli_parse_error_is_two(tmp_path, capsys):
    path = write(tmp_path, "parse.mvg", "algebra A = chain")
    assert main(["run", path]) == 2
    error = json.loads(capsys.readouterr().out)["error"]
    assert error["code"] == "syntax"
    assert error["line"] == 1 and error["column"] == 18


def test_cli_semantic_error_is_three(tmp_path, capsys):
    path = write(
        tmp_path,
        "sem.mvg",
        "algebra A = chain 1\nalgebra B = chain 2\nhom h : A -> B { 0->0, 1->1 }\n",
    )
    assert main(["run", path]) == 3
    error = json.loads(capsys.readouterr().out)["error"]
    assert error["code"] == "semantic"
    assert error["counterexample"]["violations"]


def test_cli_missing_file_is_two(tmp_path, capsys):
    assert main(["run", str(tmp_path / "absent.mvg")]) == 2
    assert json.loads(capsys.readouterr().out)["error"]["code"] == "io"


def test_cli_json_out(tmp_path, capsys):
    path = write(tmp_path, "ok.mvg", "algebra A = chain 2\nspec A\n")
    out = tmp_path / "report.json"
    assert main(["run", path, "--json-out", str(out)]) == 0
    assert json.loads(out.read_text()) == json.loads(capsys.readouterr().out)


def test_cli_check_all(capsys):
    assert main(["check-all", "--max-size", "4", "--window", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    suites = {s["name"]: s for s in payload["commands"][0]["detail"]["suites"]}
    assert set(suites) == {
        "axioms",
        "pair_groups",
        "chain_roundtrip",
        "general_roundtrip",
        "good_sequences",
        "naturality",
        "segment_ideals",
        "spectrum_oracle",
        "free_quotient",
    }
    assert all(s["ok"] for s in suites.values())


def test_cli_byte_identical_runs(tmp_path):
    path = write(
        tmp_path,
        "mix.mvg",
        "algebra A = chain 2 * chain 3\nspec A\nstar A\nroundtrip A\n"
        'group G = fibers [2,3] unit [(1,0),(1,1)]\ngamma G\ngoodseq G '
        '{"coords":[{"m":1,"a":0},{"m":0,"a":1}]}\nfreequotient A\n',
    )
    cmd = [sys.executable, "-m", "mvgamma.cli", "run", path]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.returncode == 0
    assert first.stdout == second.stdout


def test_cli_entry_point_installed():
    proc = subprocess.run(["mvgamma", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "run" in proc.stdout and "check-all" in proc.stdout
