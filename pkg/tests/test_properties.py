from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from matsys.classify import Params, analyze, cardano, delta_of, half_sum_property, r_cubic
from matsys.construct import (
    SolutionTriple,
    IdempotentShape,
    HalfSumShape,
    construct_generic,
    construct_nilpotent,
    construct_real_even,
    construct_sigma_generic,
    construct_idempotent_model,
    construct_half_sum,
    construct_tsys,
    random_invertible,
    square_zero_blocks,
)
from matsys.matrix import Mat, conjugate
from matsys.ncpoly import NCPoly, expand_cofactors, normal_form, normal_form_with_cofactors, words_in
from matsys.verify import check_sigma, check_system, check_tsys

F = Fraction
PROPERTY = settings(max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow])

small = st.integers(-5, 5)
rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)
perms = st.permutations([0, 1, 2]).map(tuple)


# ---------- constructor outputs ----------

@st.composite
def generic_solutions(draw):
    roots = draw(st.lists(small, min_size=3, max_size=3, unique=True))
    x, y, z = roots
    assume(all(2 * p != q + r for p, q, r in ((x, y, z), (y, x, z), (z, x, y))))
    params = Params(x + y + z, x * x + y * y + z * z, x ** 3 + y ** 3 + z ** 3)
    assign = draw(st.lists(perms, min_size=1, max_size=3))
    p = random_invertible(len(assign), random.Random(draw(st.integers(0, 10 ** 6))))
    return construct_generic(params, assign, p)


@st.composite
def idempotent_solutions(draw):
    phi, psi, theta = (draw(st.integers(0, 3)) for _ in range(3))
    assume(phi + psi + theta > 0)
    blocks = {name: draw(st.sampled_from(square_zero_blocks(k)))
              for name, k in (("alphaN", psi), ("betaN", theta), ("gammaN", phi))}
    return construct_idempotent_model(IdempotentShape(phi, psi, theta, **blocks))


@st.composite
def half_sum_solutions(draw):
    m = draw(st.sampled_from([0, 2, 4]))
    f = draw(st.lists(perms, min_size=0 if m else 1, max_size=2))
    sigma = draw(st.sampled_from([2, 3, 6, 8, 12, 18]))
    return construct_half_sum(HalfSumShape(m, f, sigma))


@st.composite
def nilpotent_solutions(draw):
    family = draw(st.sampled_from(["n2", "n3"]))
    x, y = draw(rationals), draw(rationals)
    if family == "n3":
        assume(x != F(-1, 2))
    return construct_nilpotent(family, x, y)


@st.composite
def real_even_solutions(draw):
    w = draw(rationals)
    assume(w != 0)
    return construct_real_even(draw(rationals), draw(rationals), w, draw(st.integers(1, 2)))


triples = st.one_of(generic_solutions(), idempotent_solutions(), half_sum_solutions(),
                    nilpotent_solutions(), real_even_solutions())


@PROPERTY
@given(triples)
def test_constructor_outputs_verify_exactly(sol):
    rep = check_system(sol)
    assert rep.passed
    assert {it.status for it in rep.items} == {"exact-zero"}


@PROPERTY
@given(small, small, small, st.integers(0, 10 ** 6))
def test_sigma_outputs_verify_exactly(u, v, w, seed):
    q = construct_sigma_generic(u, v, w, random_invertible(2, random.Random(seed)))
    assert check_sigma(q).passed


@PROPERTY
@given(st.integers(1, 3), st.data())
def test_tsys_outputs_verify_exactly(m, data):
    k = data.draw(st.integers(0, m))
    z = Mat.diag([data.draw(rationals) for _ in range(k)] + [0] * (m - k))
    q = Mat.diag([0] * k + [data.draw(rationals) for _ in range(m - k)])
    t = construct_tsys(m, z, q)
    assert check_tsys(t.a, t.b).passed


# ---------- conjugation invariants ----------

def _jordan_data(m: Mat, eigenvalues) -> dict:
    n = m.nrows
    out = {}
    for lam in eigenvalues:
        shifted = m - Mat.scalar(n, lam, m.field)
        ranks, power = [], Mat.identity(n, m.field)
        for _ in range(n):
            power = power @ shifted
            ranks.append(power.rank())
        out[lam] = tuple(ranks)
    return out


@PROPERTY
@given(st.one_of(idempotent_solutions(), nilpotent_solutions(), generic_solutions()), st.integers(0, 10 ** 6))
def test_conjugation_invariance(sol, seed):
    p = random_invertible(sol.n, random.Random(seed))
    moved = sol.conjugated(p)
    assert check_system(moved).passed
    for name, m in sol.matrices().items():
        c = moved.matrices()[name]
        eig = {m[i, i] for i in range(m.nrows)} if (m - Mat.diag([m[i, i] for i in range(m.nrows)])).is_strictly_upper() else {0}
        assert c.trace() == m.trace()
        assert c.rank() == m.rank()
        assert _jordan_data(c, eig) == _jordan_data(m, eig)
        if m.is_nilpotent():
            assert c.nilpotent_jordan_type() == m.nilpotent_jordan_type()


# ---------- rewriting ----------

@st.composite
def ab_polys(draw, table):
    words = [w for k in range(1, 7) for w in words_in("ab", k, table)]
    picked = draw(st.lists(st.sampled_from(words), min_size=1, max_size=6, unique=True))
    return NCPoly({w: draw(st.integers(-4, 4).filter(bool)) for w in picked}, table)


@PROPERTY
@given(st.data())
def test_normal_form_idempotent(gb_s4, data):
    p = data.draw(ab_polys(gb_s4.table))
    nf = normal_form(p, gb_s4.basis)
    assert normal_form(nf, gb_s4.basis) == nf
    rem, cof = normal_form_with_cofactors(p, gb_s4.basis)
    assert rem == nf
    assert p - expand_cofactors(cof, gb_s4.basis, gb_s4.table) == rem


# ---------- discriminant and half-sum ----------

@PROPERTY
@given(rationals, rationals, rationals)
def test_dis_matches_standard_discriminant(alpha, beta, gamma):
    p = Params(alpha, beta, gamma)
    d0, d1, d2, d3 = r_cubic(p).coeffs
    standard = 18 * d3 * d2 * d1 * d0 - 4 * d2 ** 3 * d0 + d2 ** 2 * d1 ** 2 - 4 * d3 * d1 ** 3 - 27 * d3 ** 2 * d0 ** 2
    assert standard == 216 * analyze(p).dis


@PROPERTY
@given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
       st.booleans(), st.integers(0, 2))
def test_delta_zero_iff_half_sum(x, y, z, force, slot):
    if force:
        z = (x + y) / 2
    roots = [x, y, z]
    roots[slot], roots[2] = roots[2], roots[slot]
    scale = 1 + max(abs(r) for r in roots)
    gaps = [abs(2 * p - q - r) for p, q, r in ((x, y, z), (y, x, z), (z, x, y))]
    if not force:
        assume(min(gaps) > 1e-2 * scale)
    a = sum(roots)
    b = sum(r * r for r in roots)
    g = sum(r ** 3 for r in roots)
    delta = 2 * a ** 3 - 9 * a * b + 9 * g
    assert half_sum_property(tuple(roots)) == (abs(delta) <= 1e-8 * scale ** 3)
    recovered = cardano([3 * a * b - 2 * g - a ** 3, 3 * a * a - 3 * b, -6 * a, 6])
    if not force:
        assert not half_sum_property(tuple(recovered))


@PROPERTY
@given(rationals, rationals, rationals)
def test_delta_zero_iff_half_sum_from_params(alpha, beta, gamma):
    p = Params(alpha, beta, gamma)
    roots = cardano([complex(c) for c in r_cubic(p).coeffs])
    if delta_of(p) == 0:
        assert half_sum_property(tuple(roots))
    else:
        scale = (1 + max(abs(r) for r in roots)) ** 3
        if abs(float(delta_of(p))) > 1e-6 * scale:
            assert not half_sum_property(tuple(roots))
