import io
import subprocess
import sys

import pytest

from artinsplit.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def test_split_54_prints_amalgam_ranks():
    code, text = call("split", "--m", "5", "--n", "4")
    assert code == 0
    assert "splitting amalgam A=F2 B=F3 C=F5" in text
    assert "ranks 2 3 5" in text


def test_split_even_prints_hnn():
    code, text = call("split", "--m", "4", "--n", "4")
    assert code == 0
    assert "splitting hnn" in text and "beta x^-1.y -> y.x^-1" in text


def test_verify_grid_passes():
    code, text = call("verify", "--grid", "4:9")
    assert code == 0
    assert text.rstrip().endswith("RESULT 144/144")


def test_verify_corrupt_beta_exits_one():
    code, text = call("verify", "--m", "4", "--n", "6", "--corrupt-beta")
    assert code == 1
    assert "CHECK abelianization fail" in text


def test_intersect_one_odd_preset_runs_and_validates():
    code, text = call("intersect", "--preset", "artin-C", "--m", "2", "--n", "2", "--odd")
    assert code == 0
    assert "VALIDATED yes" in text
    assert any(line.startswith("isect rank=") for line in text.splitlines())


def test_intersect_from_generators():
    code, text = call("intersect", "--gens", "x^2,y^2,x^-1.y")
    assert code == 0 and "VALIDATED yes" in text


def test_abelianize_agrees():
    code, text = call("abelianize", "--m", "5", "--n", "5")
    assert code == 0
    assert "AGREE yes" in text and text.count("free_rank=1") == 3


def test_rf_even_passes_and_one_odd_reports_condition_d():
    code, text = call("rf", "--m", "6", "--n", "4")
    assert code == 0 and "RF b_order pass" in text
    code, text = call("rf", "--m", "5", "--n", "4", "--ping-pong", "2")
    assert "PINGPONG syllables<=2 words=60 failures=0" in text
    # condition d fails for one odd label, so the run as a whole fails
    assert code == 1 and "RF d_intersections fail" in text


def test_rf_csv():
    code, text = call("rf", "--m", "5", "--n", "4", "--ping-pong", "1", "--format", "csv")
    assert code == 0
    assert text.splitlines()[0] == "word,syllables,distance"


def test_export_formats():
    code, text = call("export", "--m", "5", "--n", "4", "--what", "xc-folded", "--format", "dot")
    assert code == 0 and text.startswith("digraph")
    code, text = call("export", "--m", "5", "--n", "4", "--what", "presentation")
    assert code == 0 and text.startswith("gens x y u v w")


@pytest.mark.parametrize("argv", [
    ["rf", "--m", "5", "--n", "4", "--p", "5"],
    ["split", "--m", "3", "--n", "4"],
    ["split", "--bogus"],
    ["nonsense"],
    ["verify", "--grid", "9:4"],
    ["intersect", "--preset", "artin-C", "--m", "2", "--n", "2"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert run(argv, stdout=io.StringIO()) == 2


def test_out_path(tmp_path):
    target = tmp_path / "report.txt"
    out = io.StringIO()
    assert run(["split", "--m", "5", "--n", "4", "--out", str(target)], stdout=out) == 0
    assert out.getvalue() == ""
    assert "ranks 2 3 5" in target.read_text()


def test_output_is_deterministic_across_processes():
    argv = [sys.executable, "-m", "artinsplit", "intersect", "--preset", "artin-C", "--m", "2", "--n", "2",
            "--both-odd"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True, env={"PYTHONHASHSEED": "7"}).stdout
    assert first == second and first
