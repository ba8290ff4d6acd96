"""Command-line behaviour: parsing, exit codes, deterministic JSON."""

import json

import pytest

from cobordlab.cli import is_raw_input, main, parse_raw_bpoly
from cobordlab.fpring import BPoly


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # keep every run away from the real ~/.cobordlab cache
    monkeypatch.setenv("COBORDLAB_CACHE", str(tmp_path / "cache.json"))


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_class_text_output(capsys):
    code, out, _ = run(capsys, "class", "P(4)", "-p", "2")
    assert code == 0
    assert out.strip() == "1*b[4] + 1*b[2]^2 + 1*b[2]*b[1]^2"


def test_class_json_output(capsys):
    code, out, _ = run(capsys, "class", "P(4)", "-p", "2", "--json")
    assert code == 0
    blob = json.loads(out)
    assert blob["p"] == 2 and blob["maxWeight"] is None
    assert [t["partition"] for t in blob["terms"]] == [[4], [2, 2], [2, 1, 1]]


def test_dimq_json(capsys):
    code, out, _ = run(capsys, "dimq", "P(4)", "-p", "2", "-q", "2", "--json")
    assert code == 0
    assert json.loads(out) == {"direct": 2, "viaGenerators": 2}


def test_express_witness_json(capsys):
    code, out, _ = run(capsys, "express", "b[2]*b[1]^2", "-p", "2", "--json")
    assert code == 0  # reporting non-membership is a successful run
    assert json.loads(out) == {"notInLp": {"p": 2, "witness": [4]}}


def test_express_member_text(capsys):
    code, out, _ = run(capsys, "express", "b[2]^2", "-p", "2")
    assert code == 0
    assert out.strip() == "1*X[2]^2"


def test_dimq_requires_membership(capsys):
    code, _, err = run(capsys, "dimq", "b[2]*b[1]^2", "-p", "2", "-q", "2")
    assert code == 2
    assert "c_(4)" in err


def test_realize_json(capsys):
    code, out, _ = run(capsys, "realize", "b[2]", "-p", "2", "-q", "2", "--json")
    assert code == 0
    blob = json.loads(out)
    assert blob["achievedDim"] == 1
    assert blob["action"]["type"] == "Disjoint"


def test_bound_report(capsys):
    code, out, _ = run(
        capsys, "bound", "P(4)", "-p", "2", "-q", "2",
        "--indices", "", "--parts", "0", "--small-d", "1", "--milnor-d", "2", "--json",
    )
    assert code == 0
    blob = json.loads(out)
    assert blob["main"] == 2
    assert blob["ratio"]["bound"] == 2 and blob["ratio"]["certificate"] == [4]
    # q = 2 has no parts of index <= q-2 = 0, so the weight cannot hide at d = 1
    assert blob["smallFixed"] is False
    assert blob["milnor"] is True  # need ceil((12-14)/15) <= 0: vacuous
    # d violating the n >= (2q-1)d precondition is a usage error, not False
    assert run(capsys, "bound", "P(4)", "-p", "2", "-q", "2", "--small-d", "2")[0] == 1


def test_rho_outputs(capsys):
    code, out, _ = run(capsys, "rho", "-p", "2", "-q", "2", "--np-minus", "")
    assert code == 0 and out.strip() == "rho_2 = 2/5"
    code, out, _ = run(capsys, "rho", "-p", "3", "-q", "3", "--members", "6,8", "--json")
    assert code == 0 and json.loads(out) == {"rho": "1/4"}
    code, _, _ = run(capsys, "rho", "-p", "2", "-q", "2")
    assert code == 1  # one of the two index-set flags is required
    code, _, _ = run(capsys, "rho", "-p", "2", "-q", "2", "--members", "4", "--np-minus", "")
    assert code == 1


def test_localize(capsys):
    code, out, _ = run(capsys, "localize", "-p", "2", "--weights", "0,1", "--zeta", "1", "--json")
    assert code == 0
    assert json.loads(out) == {"lhs": 1, "match": True, "rhs": 1}
    code, _, _ = run(capsys, "localize", "-p", "3", "--weights", "0,1,2", "--zeta", "2", "--r", "2")
    assert code == 0
    code, _, _ = run(capsys, "localize", "-p", "2", "--weights", "0,1", "--r", "0")
    assert code == 1


def test_usage_errors(capsys):
    assert run(capsys, "class", "P(4)")[0] == 1  # missing -p
    assert run(capsys, "nosuchcommand")[0] == 1
    assert run(capsys)[0] == 1
    assert run(capsys, "class", "P(", "-p", "2")[0] == 1
    assert run(capsys, "class", "b[0]", "-p", "2")[0] == 1
    assert run(capsys, "dimq", "P(4)", "-p", "2", "-q", "3")[0] == 1  # 3 not a power of 2
    assert run(capsys, "express", "P(4)", "-p", "2", "--family", "bogus")[0] == 1


def test_raw_parser():
    assert parse_raw_bpoly("b[2]*b[1]^2 + b[4]", 2) == BPoly(2, {(2, 1, 1): 1, (4,): 1})
    assert parse_raw_bpoly("3", 5) == BPoly(5, {(): 3})
    assert parse_raw_bpoly("2*b[3]", 5) == BPoly(5, {(3,): 2})
    assert parse_raw_bpoly("b[1]*b[1]", 3) == BPoly(3, {(1, 1): 1})
    # output format parses back in
    assert parse_raw_bpoly("1*b[4] + 1*b[2]^2", 2) == BPoly(2, {(4,): 1, (2, 2): 1})
    with pytest.raises(ValueError):
        parse_raw_bpoly("b[2]^0", 2)
    with pytest.raises(ValueError):
        parse_raw_bpoly("b[2] + ", 2)


def test_is_raw_input():
    assert is_raw_input("b[4]")
    assert is_raw_input(" 12 ")
    assert not is_raw_input("P(4)")
    assert not is_raw_input("2.P(4)")


def test_raw_weight_ceiling(capsys):
    assert run(capsys, "class", "b[17]", "-p", "2")[0] == 1
    code, out, _ = run(capsys, "class", "b[17]", "-p", "2", "--max-weight", "17")
    assert code == 0 and out.strip() == "1*b[17]"


def test_expression_truncation(capsys):
    code, out, _ = run(capsys, "class", "P(4)", "-p", "2", "--max-weight", "3", "--json")
    assert code == 0
    blob = json.loads(out)
    assert blob["maxWeight"] == 3 and blob["terms"] == []


def test_h_swap_note_on_stderr(capsys):
    code, out_a, err = run(capsys, "class", "H(4,2)", "-p", "2")
    assert code == 0 and "normalized" in err
    _, out_b, _ = run(capsys, "class", "H(2,4)", "-p", "2")
    assert out_a == out_b


def test_cache_env_override_and_determinism(capsys, tmp_path, monkeypatch):
    env_cache = tmp_path / "env-cache.json"
    monkeypatch.setenv("COBORDLAB_CACHE", str(env_cache))
    argv = ["express", "P(4)", "-p", "2", "--json", "--cache", str(tmp_path / "flag-cache.json")]
    code, first, _ = run(capsys, *argv)
    assert code == 0
    assert env_cache.exists()  # the environment wins over --cache
    assert not (tmp_path / "flag-cache.json").exists()
    code, second, _ = run(capsys, *argv)  # cache hit
    assert code == 0
    assert first == second  # byte-identical across cache states


def test_selftest_json(capsys):
    code, out, _ = run(capsys, "selftest", "--json")
    blob = json.loads(out)
    assert code == 0
    assert blob["failed"] == 0 and blob["passed"] == 12
    assert len(blob["checks"]) == 12
    assert all(row["ok"] and "detail" not in row for row in blob["checks"])
    names = [row["name"] for row in blob["checks"]]
    assert names[0] == "projective-4-class" and names[-1] == "action-soundness"
