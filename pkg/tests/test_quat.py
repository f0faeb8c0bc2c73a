from __future__ import annotations

import math

import numpy as np
import pytest

from matsys.quat import (
    I,
    J,
    K,
    ONE,
    Quaternion,
    commutator_norm,
    commuting_solutions,
    delta_value,
    find_noncommuting,
    l_threshold,
    power_sum_residual,
    quat_conj,
    quat_mul,
    quat_norm,
    region_verdict,
    rotate_jk,
    solution_orbit,
)

ZERO = Quaternion()


@pytest.fixture(scope="module")
def found():
    return find_noncommuting(-4, 4, attempts=150, seed=0)


def test_hamilton_table():
    assert quat_mul(I, J) == K and quat_mul(J, K) == I and quat_mul(K, I) == J
    assert quat_mul(J, I) == -K
    for u in (I, J, K):
        assert quat_mul(u, u) == -ONE
    assert quat_mul(ONE + I, ONE - I) == Quaternion(2.0)


def test_conj_and_norm():
    q = Quaternion(1.0, -2.0, 3.0, 0.5)
    assert quat_conj(q) == Quaternion(1.0, 2.0, -3.0, -0.5)
    assert (q * quat_conj(q)).close(Quaternion(quat_norm(q) ** 2))


def test_commuting_real_data():
    (sol,) = commuting_solutions(ZERO, Quaternion(-2.0), ZERO)
    vals = sorted(round(x.x2, 9) for x in sol)
    assert all(abs(x.x1) < 1e-12 for x in sol) and vals == [-1.0, 0.0, 1.0]
    assert power_sum_residual(sol, ZERO, Quaternion(-2.0), ZERO) <= 1e-10


def test_commuting_any_axis_for_real_data():
    (sol,) = commuting_solutions(ZERO, Quaternion(-2.0), ZERO)
    rho = Quaternion(0.0, 0.0, 0.6, 0.8)
    moved = tuple(Quaternion(x.x1) + rho * x.x2 for x in sol)
    assert power_sum_residual(moved, ZERO, Quaternion(-2.0), ZERO) <= 1e-10


@pytest.mark.parametrize("v", [Quaternion(1.0, 2.0), Quaternion(0.5, 0.0, 1.0, -1.0), Quaternion(-4.0, 4.0)])
def test_commuting_complex_data(v):
    (sol,) = commuting_solutions(ZERO, v, ONE)
    assert power_sum_residual(sol, ZERO, v, ONE) <= 1e-10
    for x in sol:
        assert commutator_norm(x, v) <= 1e-10


def test_commuting_zero_data():
    (sol,) = commuting_solutions(ZERO, ZERO, ZERO)
    assert all(quat_norm(x) <= 1e-12 for x in sol)


def test_commuting_rejects_noncommuting_data():
    with pytest.raises(ValueError):
        commuting_solutions(I, J, ZERO)


def test_region_examples():
    r = region_verdict(1, 1)
    assert r.delta_value == 7 and r.separator_value == -2 and r.exists_noncommuting
    r = region_verdict(0, 1)
    assert r.delta_value == -14 and r.exists_noncommuting is False
    r = region_verdict(-4, 4)
    assert r.delta_value == 15022 and r.exists_noncommuting
    assert delta_value(-4, 2) < 0 and region_verdict(-4, 2).exists_noncommuting is False


def test_region_boundary_and_errors():
    r = region_verdict(1, math.sqrt(3))
    assert r.on_boundary and r.exists_noncommuting is None
    with pytest.raises(ValueError):
        region_verdict(1, 0)
    with pytest.raises(ValueError):
        region_verdict(1, -1)


def test_l_threshold():
    l4 = l_threshold(-4)
    assert l4 == pytest.approx(2.2990, abs=5e-4)
    assert abs(delta_value(-4, l4)) < 1e-6
    assert math.sqrt(3 * 16) == pytest.approx(4 * math.sqrt(3))
    values = [l_threshold(v1) for v1 in (-4, 0, 1.0, 1.5, 1.8)]
    assert values == sorted(values, reverse=True)
    with pytest.raises(ValueError):
        l_threshold(5)


def test_found_solutions(found):
    assert found
    v = Quaternion(-4.0, 4.0)
    for sol in found:
        assert sol.residual <= 1e-9
        assert math.hypot(sol.a.x3, sol.a.x4) > 1e-6
        assert commutator_norm(sol.a, v) > 1e-6
        assert power_sum_residual(sol.triple(), ZERO, v, ONE) <= 1e-9


def test_orbit(found):
    v = Quaternion(-4.0, 4.0)
    sol = found[0]
    orbit = solution_orbit(sol, v)
    assert len(orbit) == 4
    assert orbit[0].a == sol.a and orbit[0].b == sol.b
    assert orbit[3].a.close(Quaternion(sol.a.x1, sol.a.x2, -sol.a.x3, -sol.a.x4))
    keys = {s.key(6) for s in orbit}
    assert len(keys) == 4


def test_conjugated_data_gives_conjugated_solution(found):
    vbar = Quaternion(-4.0, -4.0)
    for sol in found:
        conj = tuple(quat_conj(x) for x in sol.triple())
        assert power_sum_residual(conj, ZERO, vbar, ONE) <= 1e-9


def test_rotation_circle(found):
    v = Quaternion(-4.0, 4.0)
    for theta in np.linspace(0, 2 * math.pi, 7):
        moved = rotate_jk(found[0], float(theta))
        assert power_sum_residual(moved.triple(), ZERO, v, ONE) <= 1e-9


def test_no_solutions_outside_region():
    assert find_noncommuting(-4, 2, attempts=60, seed=1) == []


def test_search_is_deterministic():
    a = find_noncommuting(-4, 4, attempts=40, seed=3)
    b = find_noncommuting(-4, 4, attempts=40, seed=3)
    assert [s.key() for s in a] == [s.key() for s in b]


def test_positive_v1_side_of_region_yields_no_search_hits():
    # the region formula admits (1, 1), yet every start diverges or lands on commuting data there;
    # for v1 < 0 the same search succeeds (see test_found_solutions)
    assert region_verdict(1, 1).exists_noncommuting
    assert find_noncommuting(1, 1, attempts=60, seed=0) == []
    assert find_noncommuting(-2, 2, attempts=60, seed=0)
