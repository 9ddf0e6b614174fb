import json
import subprocess
import sys
import time

import pytest

from cherednik_zl.cli import main


def run(argv, capsys):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def test_analyze_example(capsys):
    code, rep = run(["analyze", "--theta=-1,-1,2", "--c", "1/3,1/3,-2/3"], capsys)
    assert code == 0
    assert rep["eta"] == [3, 1, 2]
    assert rep["c_tilde"] == ["1/3", "1/3"]
    assert rep["thm1_condition"] in (True, False)
    assert set(rep["epsilon"]) == {"1", "2", "3"}


def test_analyze_single_chart(capsys):
    code, rep = run(["analyze", "--l", "1"], capsys)
    assert code == 0
    assert rep["eta"] == [1]
    assert rep["c_tilde"] == []


def test_analyze_bad_theta(capsys):
    code, rep = run(["analyze", "--theta", "0,0"], capsys)
    assert code == 2
    assert rep["vanishing_arcs"] == [[1, 2], [2, 1]]


def test_kappa_and_c_exclusive(capsys):
    code, rep = run(["analyze", "--c", "1/2,-1/2", "--kappa", "0,1/3"], capsys)
    assert code == 2
    code, rep = run(["analyze", "--kappa", "0,1/3", "--theta=-1,1"], capsys)
    assert code == 0
    assert rep["c"] == ["1/6", "-1/6"]


def test_multiplicity_example(capsys):
    code, rep = run(["multiplicity", "--theta=-3,1,1,1", "--c=4,-3,-1/2,-1/2", "--i", "1"], capsys)
    assert code == 0
    assert rep["formula"] == [1, 3, 4]
    assert rep["agree"] is True
    code, rep = run(["multiplicity", "--theta=-3,1,1,1", "--c=4,-3,-1/2,-1/2", "--i", "4"], capsys)
    assert rep["formula"] == [4]


def test_multiplicity_condition_violated(capsys):
    code, rep = run(["multiplicity", "--theta=-1,1", "--c=-1,1"], capsys)
    assert code == 3
    assert rep["error"] == "condition violated"


def test_sections_delta_l1(capsys):
    code, rep = run(["sections", "--l", "1", "--cutoff", "4"], capsys)
    assert code == 0
    assert rep["graded_dimensions"] == {str(n): 1 for n in range(5)}
    assert [b["charts"][0]["exponent"] for b in rep["basis"]] == [0, 1, 2, 3, 4]


def test_sections_L_is_finite(capsys):
    code, rep = run(["sections", "--theta=-3,1,1,1", "--c=4,-3,-1/2,-1/2",
                     "--i", "3", "--kind", "L", "--cutoff", "10"], capsys)
    assert code == 0
    assert len(rep["basis"]) == 3
    assert rep["irreducible"]["ok"] is True


def test_verify_default_and_fault(capsys):
    code, rep = run(["verify"], capsys)
    assert code == 0 and rep["passed"]
    code, rep = run(["verify", "--inject-fault", "microlocal.gluing"], capsys)
    assert code == 1
    assert rep["first_failure"] == "microlocal.gluing"


def test_verify_larger_ranks(capsys):
    start = time.perf_counter()
    for l in (3, 4, 5):
        code, rep = run(["verify", "--l", str(l)], capsys)
        assert code == 0, rep
    assert time.perf_counter() - start < 60


def test_output_is_byte_identical(tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        assert main(["sections", "--l", "3", "--cutoff", "5", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cherednik_zl", "analyze", "--l", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["eta"] == [2, 1]


@pytest.mark.parametrize("argv", [["multiplicity", "--l", "2", "--i", "5"], ["analyze", "--c", "1,1"]])
def test_invalid_parameters(argv, capsys):
    code, rep = run(argv, capsys)
    assert code == 2
    assert rep["error"] == "invalid parameters"
