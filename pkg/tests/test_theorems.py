import dataclasses

import pytest

from hilbkit import theorems
from hilbkit.cli import EXIT_FAIL, EXIT_INTERNAL, exit_code
from hilbkit.laurent import IntegralityError
from hilbkit.theorems import REGISTRY, Params, instances, nonneg_sequences, run_instance

REQUIRED_IDS = [
    "prop-m1", "cor-m0", "prop-duality", "lem-limind3", "lem-limind4", "thm-push-Ty", "cor-push-noneq",
    "lem-adams1", "lem-adams2", "rem-Q2-T", "thm-pushH-Ty", "cor-pushH", "lem-ch2-coeffs", "lem-LRRcoh",
    "prop-q1-ses", "cor-q1", "thm-q1-chern", "thm-nakp", "prop-rho", "thm-evain-consistency", "thm-qm",
    "cor-qm", "prop-qK", "lem-qm-comb", "appendix-A", "nakajima-basis", "creation-commute",
]


def test_registry_covers_required_ids():
    assert set(REQUIRED_IDS) <= set(REGISTRY)


def test_default_grids_respect_n_max():
    for tid in REGISTRY:
        for _, n, m in instances(tid, Params(n_max=3)):
            assert n is None or n <= 3


def test_m_range_is_honoured():
    ms = {m for _, _, m in instances("prop-duality", Params(n_max=2, m_min=-1, m_max=2))}
    assert ms == {-1, 0, 1, 2}


@pytest.mark.parametrize("tid", REQUIRED_IDS)
def test_small_instances_pass(tid):
    work = instances(tid, Params(n_max=3, m_min=-2, m_max=3))
    assert work
    results = [run_instance(*w) for w in work]
    assert [r for r in results if r.status != "pass"] == []


def test_injected_failure_is_reported(monkeypatch):
    fake = dataclasses.replace(REGISTRY["prop-m1"], check=lambda n, m: [{"partition": "1", "lhs": "0", "rhs": "1"}])
    monkeypatch.setitem(REGISTRY, "prop-m1", fake)
    result = run_instance("prop-m1", 1, 1)
    assert result.status == "fail"
    assert result.witnesses == [{"partition": "1", "lhs": "0", "rhs": "1"}]
    assert exit_code([result]) == EXIT_FAIL


def test_arithmetic_errors_become_error_status(monkeypatch):
    def boom(n, m):
        raise IntegralityError("not divisible")
    monkeypatch.setitem(REGISTRY, "prop-m1", dataclasses.replace(REGISTRY["prop-m1"], check=boom))
    result = run_instance("prop-m1", 1, 1)
    assert result.status == "error"
    assert exit_code([result]) == EXIT_INTERNAL


def test_wrong_right_hand_side_is_caught():
    # shifting the closed form by one power of t must be detected
    from hilbkit.theorems import P, diff_witness, ty
    from hilbkit.pushforward import push_Q_power
    lhs = ty(push_Q_power(2, 2))
    assert diff_witness(lhs, ty(theorems.push_Ty_formula(2, 3)), route="x") == []
    assert diff_witness(lhs, ty(theorems.push_Ty_formula(2, 3)) + ty(P(1, 3)), route="x") != []


def test_nonneg_sequences():
    seqs = nonneg_sequences(4, 3, 3)
    assert () in seqs and (3, 1) in seqs and (1, 1, 1) in seqs
    assert (4,) not in seqs and (1, 3) not in seqs
    assert all(sum(s) <= 4 and len(s) <= 3 for s in seqs)
