from __future__ import annotations

from fractions import Fraction

import pytest

from matsys.classify import Params
from matsys.construct import (
    SolutionTriple,
    IdempotentShape,
    HalfSumShape,
    construct_generic,
    construct_nilpotent,
    construct_sigma_pattern2,
    construct_idempotent_model,
    construct_half_sum,
    construct_tsys,
)
from matsys.matrix import Mat
from matsys.verify import (
    MissingContextError,
    PreconditionError,
    check_pattern721,
    check_relations,
    check_system,
    check_nilpotent_monomials,
    commutator_nilpotency,
    implied_context,
    perturb,
    projector_sum_check,
    tsys_projector_check,
)

F = Fraction


def test_system_examples():
    assert check_system(construct_idempotent_model(IdempotentShape(1, 1, 1))).passed
    assert check_system(construct_nilpotent("n9")).passed


def test_perturbation_is_localized():
    sol = construct_nilpotent("n9")
    bad = SolutionTriple(perturb(sol.a, 2, 5), sol.b, sol.c, sol.params)
    rep = check_system(bad)
    assert not rep.passed
    lin = rep["a+b+c=alpha"]
    assert lin.status == "residual"
    assert [(i, j) for i, j, _ in lin.nonzero_entries()] == [(2, 5)]
    assert [e[:2] for e in lin.to_json()["nonzero"]] == [[3, 6]]


def test_size_mismatch():
    with pytest.raises(ValueError):
        check_system(SolutionTriple(Mat.zeros(2), Mat.zeros(3), Mat.zeros(2), Params(0, 0, 0)))


def test_r21_first_case_on_scalars():
    # roots 1, 2, -3 sum to zero, so u^2 = beta and v^3 = gamma
    params = Params(0, 14, -18)
    for assign in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        sol = construct_generic(params, [assign])
        rep = check_relations(sol, "R21", implied_context(sol))
        assert rep.passed, rep.summary()


def test_r21_first_case_needs_invertible_v():
    sol = construct_half_sum(HalfSumShape(0, [(0, 1, 2)], 2))
    with pytest.raises(PreconditionError):
        check_relations(sol, "R21", implied_context(sol), case=1)


def test_r21_second_case_on_noncommuting_triple():
    sol = construct_half_sum(HalfSumShape(2, [(0, 1, 2)], 3))
    rep = check_relations(sol, "R21", implied_context(sol), case=2)
    assert rep.passed, rep.summary()


def test_r51_on_n3():
    sol = construct_nilpotent("n3", 1, 0)
    rep = check_relations(sol, "R51")
    assert rep.passed and rep["a2-commutes-b"].ok


def test_r51_on_n9():
    assert check_relations(construct_nilpotent("n9"), "R51").passed


def test_r41_on_commuting_half_sum():
    sol = construct_half_sum(HalfSumShape(0, [(0, 1, 2), (2, 1, 0)], 2))
    rep = check_relations(sol, "R41", {"u2": Mat.scalar(2, 2)})
    assert rep.passed and rep["a2-commutes-b"].status == "exact-zero"


def test_r41_on_noncommuting_half_sum():
    sol = construct_half_sum(HalfSumShape(2, [], 3))
    assert check_relations(sol, "R41", implied_context(sol)).passed


def test_missing_context():
    sol = construct_nilpotent("n3", 1, 0)
    with pytest.raises(MissingContextError):
        check_relations(sol, "R41")
    with pytest.raises(MissingContextError):
        check_relations(sol, "R21", {"u2": Mat.zeros(3)})


def test_noncommuting_context_rejected():
    sol = construct_nilpotent("n3", 1, 0)
    with pytest.raises(PreconditionError):
        check_relations(sol, "R41", {"u2": Mat.diag([1, 2, 3])})


def test_unknown_relation_set():
    with pytest.raises(ValueError):
        check_relations(construct_nilpotent("n2", 1, 1), "R99")


@pytest.mark.parametrize("family,args", [("n9", ()), ("n2", (1, 2)), ("n3", (1, 0))])
def test_nilpotent_monomials(family, args):
    sol = construct_nilpotent(family, *args)
    rep = check_nilpotent_monomials(sol)
    assert rep.passed
    if family == "n9":
        assert not (sol.a ** 4).is_zero()
    else:
        assert (sol.a ** 4).is_zero()


def test_commutator_nilpotency_examples():
    t3 = construct_half_sum(HalfSumShape(2, [], 3))
    res = commutator_nilpotency(t3)
    assert not res.is_nilpotent and res.verdict == "not-ST"
    assert res.commutator @ res.commutator == Mat.scalar(2, -3)
    res9 = commutator_nilpotency(construct_nilpotent("n9"))
    assert res9.is_nilpotent and res9.verdict == "inconclusive"
    diag = construct_idempotent_model(IdempotentShape(1, 1, 1))
    assert commutator_nilpotency(diag).commutator.is_zero()


def test_projector_structure():
    sol = construct_idempotent_model(IdempotentShape(1, 2, 2, alphaN=Mat.jordan(2)))
    assert projector_sum_check(sol)
    t = construct_tsys(2, Mat([[0, 1], [0, 0]]), Mat.zeros(2))
    assert tsys_projector_check(t.a, t.b)
    assert check_relations(t, "TSYS").passed


def test_half_sum_squares_on_e():
    sol = construct_half_sum(HalfSumShape(4, [], 6))
    for m in sol.matrices().values():
        assert m @ m == Mat.scalar(4, 2, m.field)


def test_pattern721_report():
    q = construct_sigma_pattern2()
    assert check_pattern721(q).passed
    assert check_relations(q, "SIGMA").passed
    assert check_relations(q, "PATTERN_721").passed


def test_report_json_shape():
    rep = check_system(construct_nilpotent("n2", 1, 1))
    js = rep.to_json()
    assert js["pass"] is True
    assert {it["status"] for it in js["identities"]} == {"exact-zero"}
