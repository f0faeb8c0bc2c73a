"""Acceptance criteria 1-10, one pass/fail line each.

Run under pytest (lines are also collected into the terminal summary) or directly with
`python3 tests/test_acceptance.py`.
"""

from __future__ import annotations

import itertools
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

import conftest  # noqa: E402
from matsys.classify import CaseTag, Params, analyze  # noqa: E402
from matsys.construct import (  # noqa: E402
    IdempotentShape,
    HalfSumShape,
    canonicalize_tsys,
    construct_nilpotent,
    construct_sigma_nonnilpotent,
    construct_sigma_pattern2,
    construct_idempotent_model,
    construct_half_sum,
    construct_tsys,
    random_invertible,
    square_zero_blocks,
)
from matsys.matrix import Mat  # noqa: E402
from matsys.ncpoly import (  # noqa: E402
    RELATIONS_41,
    RELATIONS_51,
    membership_report,
    parse_poly,
    preset_system,
    saturation_membership,
    degree4_word_targets,
    degree5_word_targets,
    truncated_buchberger,
)
from matsys.nilflag import (  # noqa: E402
    algebra_basis,
    basis_labels,
    center_basis,
    semigroup_flag,
    signature,
    triangularizing_basis,
    varpi,
)
from matsys.quat import (  # noqa: E402
    Quaternion,
    commutator_norm,
    find_noncommuting,
    l_threshold,
    region_verdict,
    solution_orbit,
)
from matsys.verify import (  # noqa: E402
    check_pattern721,
    check_relations,
    check_sigma,
    check_system,
    check_nilpotent_monomials,
    check_tsys,
    projector_sum_check,
    tsys_projector_check,
)

F = Fraction


def _record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_classification():
    start = time.perf_counter()
    a = analyze(Params(1, 1, 1))
    b = analyze(Params(0, 0, 0))
    c = analyze(Params(0, 2, 0))
    elapsed = time.perf_counter() - start
    r_ok = [F(x) for x in c.cubic.coeffs] == [0, -6, 0, 6]
    ok = (a.delta == 2 and a.dis == 0 and a.tag is CaseTag.MULTIPLE_ROOT
          and b.tag is CaseTag.NILPOTENT and c.tag is CaseTag.HALF_SUM and r_ok and elapsed < 1)
    _record(1, ok, f"(1,1,1) delta={a.delta} dis={a.dis} {a.tag.value}; (0,0,0) {b.tag.value}; "
                   f"(0,2,0) {c.tag.value} r=6x^3-6x; {elapsed:.3f}s")


def test_criterion_2_s4_rederivation():
    start = time.perf_counter()
    gb = truncated_buchberger(preset_system("s4"), 6)
    targets = [parse_poly(t, gb.table) for t in RELATIONS_51.values()]
    targets += list(degree4_word_targets(gb.table).values()) + list(degree5_word_targets(gb.table).values())
    failures = [str(t) for t in targets if not gb.reduce(t).is_zero()]
    a2_survives = not gb.reduce(parse_poly("a.a", gb.table)).is_zero()
    elapsed = time.perf_counter() - start
    ok = not failures and a2_survives and elapsed < 60
    _record(2, ok, f"{len(targets) - len(failures)}/{len(targets)} targets reduce to 0; "
                   f"a^2 survives={a2_survives}; {elapsed:.1f}s")


def test_criterion_3_s2_s3_rederivation():
    start = time.perf_counter()
    s2 = membership_report([parse_poly(t) for t in RELATIONS_41.values()], preset_system("s2"), 6)
    s3 = membership_report([parse_poly("a.b - b.a")], preset_system("s3"), 6)
    sat = saturation_membership([parse_poly("a.b - b.a")], preset_system("s3"), 6, "u", 3)[0].power
    elapsed = time.perf_counter() - start
    s2_ok = all(r.reduces_to_zero for r in s2)
    s3_ok = s3[0].reduces_to_zero
    ok = s2_ok and s3_ok and elapsed < 120
    _record(3, ok, f"R41 relations on s2: {'all reduce' if s2_ok else 'not all reduce'}; "
                   f"ab-ba on s3: {'reduces' if s3_ok else 'residual ' + str(s3[0].residual)} "
                   f"(ab-ba times u^{sat} does reduce); {elapsed:.1f}s")


def test_criterion_4_infinite_basis():
    gens = preset_system("cyclic")
    new_at = {}
    for bound in (4, 5, 6, 7):
        gb = truncated_buchberger(gens, bound)
        new_at[bound] = gb.element_count_by_degree.get(bound, 0)
    ok = all(v >= 1 for v in new_at.values())
    _record(4, ok, "new basis elements per degree bound " + ", ".join(f"{k}:{v}" for k, v in new_at.items()))


def test_criterion_5_idempotent_shapes():
    checked, bad = 0, []
    for phi, psi, theta in itertools.product(range(4), repeat=3):
        if phi + psi + theta == 0:
            continue
        for an, bn, gn in itertools.product(square_zero_blocks(psi), square_zero_blocks(theta), square_zero_blocks(phi)):
            sol = construct_idempotent_model(IdempotentShape(phi, psi, theta, alphaN=an, betaN=bn, gammaN=gn))
            pairs = ((sol.a, sol.b), (sol.b, sol.c), (sol.a, sol.c))
            commute = all((x @ y - y @ x).is_zero() for x, y in pairs)
            checked += 1
            if not (sol.params.as_tuple() == (1, 1, 1) and check_system(sol).passed and commute
                    and projector_sum_check(sol)):
                bad.append((phi, psi, theta))
    _record(5, not bad, f"{checked} shapes checked, {len(bad)} failures")


def test_criterion_6_half_sum():
    sol = construct_half_sum(HalfSumShape(2, [], 3))
    k = sol.a @ sol.b - sol.b @ sol.a
    witness = k @ k == Mat.scalar(2, -3)
    sizes, bad = 0, []
    for m in (0, 2, 4):
        for f_len in range(0, 7 - m):
            if m + f_len == 0:
                continue
            for sigma in (2, 3):
                perms = list(itertools.permutations(range(3)))
                assign = [perms[(i * 5 + sigma) % 6] for i in range(f_len)]
                s = construct_half_sum(HalfSumShape(m, assign, sigma))
                sizes += 1
                if not check_system(s).passed:
                    bad.append((m, f_len, sigma))
    ok = witness and not bad
    _record(6, ok, f"([a,b])^2=-3I: {witness}; {sizes} E+F outputs up to n=6, {len(bad)} failures")


def test_criterion_7_n9():
    t = construct_nilpotent("n9")
    sys_rep, r51 = check_system(t), check_relations(t, "R51")
    mono = check_nilpotent_monomials(t)
    a4_nonzero = not (t.a ** 4).is_zero()
    flag = semigroup_flag(t)
    flag_ok = flag.coordinate_support()[1:5] == [[1], [1, 2, 6], [1, 2, 3, 6, 7, 9], [1, 2, 3, 4, 6, 7, 8, 9]]
    sig = signature(flag)
    ab = algebra_basis(t)
    cz = center_basis(t, ab)
    w = varpi(t)
    basis = triangularizing_basis(t)
    labels = basis_labels(basis)
    p = Mat.from_columns(basis)
    upper = all((p.inverse() @ m @ p).is_strictly_upper() for m in (t.a, t.b, t.c))
    ok = (sys_rep.passed and r51.passed and mono.passed and a4_nonzero and flag_ok and sig == (1, 2, 3, 2, 1)
          and ab.dimension == 8 and cz.dimension == 5 and w.value == 0 and w.bab_identity and w.a2b_identity
          and labels == ["e1", "e2", "e6", "e3", "e7", "e9", "e4", "e8", "e5"] and upper)
    detail = (f"system/R51/monomials {sys_rep.passed}/{r51.passed}/{mono.passed}; signature {sig}; "
              f"algebra {ab.dimension}, center {cz.dimension}; varpi={w.value}; basis {','.join(labels)}")
    if not ok:
        detail += "\n" + "\n".join(r.summary() for r in (sys_rep, r51, mono) if not r.passed)
    _record(7, ok, detail)


def test_criterion_8_quaternions():
    start = time.perf_counter()
    lval = l_threshold(-4)
    inside = region_verdict(-4, 4).exists_noncommuting is True
    v = Quaternion(-4.0, 4.0)
    sols = find_noncommuting(-4, 4, 400)
    good = [s for s in sols if s.residual <= 1e-9 and commutator_norm(s.a, v) > 1e-6]
    orbit_ok = bool(good) and len({o.key(6) for o in solution_orbit(good[0], v)}) == 4
    empty = find_noncommuting(-4, 2, 400) == []
    elapsed = time.perf_counter() - start
    ok = 2.28 <= lval <= 2.31 and inside and bool(good) and orbit_ok and empty and elapsed < 60
    _record(8, ok, f"l(-4)={lval:.5f}; (-4,4) exists={inside}, {len(good)} solution classes, "
                   f"orbit of 4 distinct={orbit_ok}; (-4,2) empty={empty}; {elapsed:.1f}s")


def test_criterion_9_sigma_and_tsys():
    q = construct_sigma_pattern2()
    pattern_ok = check_pattern721(q).passed and check_sigma(q).passed
    nn = construct_sigma_nonnilpotent()
    nn_ok = nn.alphas == (0, 0, 0, 0) and check_sigma(nn).passed and not any(
        m.is_nilpotent() for m in nn.matrices().values())
    import random
    rng = random.Random(0)
    z, qm = Mat([[0, 1, 0], [0, 0, 0], [0, 0, 0]]), Mat([[0, 0, 0], [0, 0, 0], [0, 0, 2]])
    t = construct_tsys(3, z, qm)
    p = random_invertible(6, rng)
    a, b = p @ t.a @ p.inverse(), p @ t.b @ p.inverse()
    can = canonicalize_tsys(a, b)
    back = construct_tsys(can.m, can.z, can.q)
    s = can.change_of_basis
    round_trip = (s.inverse() @ a @ s == back.a and s.inverse() @ b @ s == back.b
                  and can.z.rank() == z.rank() and can.q.rank() == qm.rank())
    tsys_ok = check_tsys(a, b).passed and round_trip and tsys_projector_check(a, b)
    ok = pattern_ok and nn_ok and tsys_ok
    _record(9, ok, f"zero-power-sum pattern {pattern_ok}; non-nilpotent quad {nn_ok}; pair round trip {tsys_ok}")


def test_criterion_10_property_suites(gb_s4):
    import test_properties as props

    suites = {
        "constructor->verifier": [props.test_constructor_outputs_verify_exactly,
                                  props.test_sigma_outputs_verify_exactly,
                                  props.test_tsys_outputs_verify_exactly],
        "conjugation invariance": [props.test_conjugation_invariance],
        "normal_form idempotence": [lambda: props.test_normal_form_idempotent(gb_s4=gb_s4)],
        "dis cross-check": [props.test_dis_matches_standard_discriminant],
        "half-sum": [props.test_delta_zero_iff_half_sum, props.test_delta_zero_iff_half_sum_from_params],
    }
    failed = []
    for name, fns in suites.items():
        for fn in fns:
            try:
                fn()
            except Exception as exc:  # a falsifying example
                failed.append(f"{name}: {type(exc).__name__}")
    _record(10, not failed, "500 examples per suite; " + ("all hold" if not failed else "; ".join(failed)))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
