import io
import json
import subprocess
import sys

import pytest

from irredbound.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--json")
    assert code == 0, err
    return json.loads(out)


def test_bound_gaussian():
    data = call_json("bound", "--quadratic", "-1", "--lmo-A", "1")
    assert data["c_K"] == 26873856
    assert data["degenerate_rank"] is True


def test_bound_requires_A():
    code, _, err = call("bound", "--quadratic", "-1")
    assert code == 2 and "--lmo-A" in err


def test_bound_large_prints_bracket():
    data = call_json("bound", "--quadratic", "2", "--lmo-A", "50")
    assert set(data["c_K"]) == {"ln", "decimal_digits"}


def test_criteria_real_quadratic():
    data = call_json("criteria", "--quadratic", "5")
    assert data["verdict"] == "proved" and set(data["matched_cases"]) == {"1b", "2a"}


def test_criteria_compositum_negative_value():
    data = call_json("criteria", "--compositum", "-1,2")
    assert data["matched_cases"] == ["2b"] and data["witnesses"]["2b"]["unit"] == "1+sqrt(2)"


def test_candidates_eleven_a_one():
    data = call_json("candidates", "--quadratic", "5", "--curve", "0,-1,1,-10,-20", "--primes", "5")
    assert 5 in data["candidates"]
    for key in ("field", "invariants", "primes_used", "families", "candidates", "exceptions", "coherence",
                "certificate_text"):
        assert key in data
    assert all(set(f) == {"a", "surviving_primes"} for f in data["families"])


def test_certify_gates_and_warns():
    data = call_json("certify", "--quadratic", "5", "--curve", "0,-1,1,-10,-20", "--primes", "6")
    assert data["warnings"] and "(i)" not in data["certificate_text"]
    data = call_json("certify", "--quadratic", "5", "--curve", "0,-1,1,-10,-20", "--primes", "6", "--lmo-A", "1")
    assert data["certificate_text"].startswith("(i)")


def test_invariants_and_file(tmp_path):
    data = call_json("invariants", "--quadratic", "-5")
    assert data["invariants"]["class_number"] == 2 and data["invariants"]["source"] == "computed"
    path = tmp_path / "k.json"
    path.write_text(json.dumps({"degree": 4, "discriminant": 1125, "class_number": 1, "regulator": "0.96242",
                                "totally_real": False, "galois": True}))
    data = call_json("invariants", "--field", str(path))
    assert data["invariants"]["source"] == "ingested" and data["invariants"]["unit_rank"] == 1
    data = call_json("criteria", "--field", str(path))
    assert data["verdict"] == "unresolved"


def test_split_primes_and_coverage():
    assert call_json("split-primes", "--quadratic", "-1", "--cap", "20")["split_primes"] == [5, 13, 17]
    cov = call_json("coverage", "--quadratic", "-5", "--cap", "50")
    assert {tuple(c["form"]): c["prime"] for c in cov["covered"]} == {(1, 0, 5): 29, (2, 2, 3): 3}


def test_analyze_local_data():
    data = call_json("analyze", "--curve", "0,-1,1,-10,-20", "--cap", "13")
    T = {row["q"]: row["T"] for row in data["local"]}
    assert (T[2], T[3], T[13]) == (-2, -1, 4) and T[11] is None
    assert data["discriminant"] == -(11**5)


@pytest.mark.parametrize("argv,code", [
    (("criteria", "--quadratic", "4"), 2),
    (("criteria",), 2),
    (("candidates", "--quadratic", "5"), 2),
    (("candidates", "--quadratic", "5", "--curve", "1,2"), 2),
    (("bound", "--quadratic", "-1", "--lmo-A", "-1"), 2),
    (("nonsense",), 2),
    (("criteria", "--quadratic", "-1", "--compositum", "-1,2"), 2),
    (("coverage", "--quadratic", "-1000003"), 0),
    (("invariants", "--quadratic", "10007", "--precision-bits", "64"), 0),
    (("split-primes", "--quadratic", "5", "--primes", "0"), 2),
])
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_cap_exit_code():
    code, _, err = call("candidates", "--quadratic", "5", "--curve", "0,-1,1,-10,-20", "--primes", "50", "--cap", "60")
    assert code == 3 and "cap" in err


def test_human_and_json_same_numbers():
    argv = ("candidates", "--quadratic", "5", "--curve", "0,-1,1,-10,-20", "--primes", "5")
    data = call_json(*argv)
    code, human, _ = call(*argv)
    assert code == 0
    assert f"candidates: [{', '.join(map(str, data['candidates']))}]" in human
    assert f"primes_used: [{', '.join(map(str, data['primes_used']))}]" in human
    data = call_json("bound", "--quadratic", "-1", "--lmo-A", "1")
    assert f"c_K: {data['c_K']}" in call("bound", "--quadratic", "-1", "--lmo-A", "1")[1]


def test_deterministic():
    argv = ("certify", "--quadratic", "-1", "--curve", "0,0,0,1,0", "--primes", "6", "--lmo-A", "1", "--json")
    assert call(*argv)[1] == call(*argv)[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "irredbound.cli", "criteria", "--quadratic", "-1", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"] == "proved"
