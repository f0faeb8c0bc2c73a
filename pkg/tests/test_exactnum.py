from __future__ import annotations

import cmath
from fractions import Fraction

import pytest

from matsys.exactnum import (
    CBRT6_FIELD,
    J_CBRT6_FIELD,
    J_FIELD,
    MinPoly,
    NFElem,
    embed_complex,
    field_constant,
    nf_arith,
    principal_root_index,
    radical_field,
    rational_roots,
    scalar_from_json,
    scalar_to_json,
    squarefree_part,
)


def test_j_times_j_squared_is_one():
    j = J_FIELD.gen()
    assert nf_arith(j, j * j, "mul") == J_FIELD.one()


def test_cube_root_of_six_cubed():
    t = CBRT6_FIELD.gen()
    assert t * t * t == NFElem(CBRT6_FIELD, [6])


def test_one_plus_j_plus_j_squared_vanishes():
    j = J_FIELD.gen()
    assert not (1 + j + j * j)


def test_division_round_trip():
    t = CBRT6_FIELD.gen()
    x = 1 + 2 * t - t * t
    assert x / x == CBRT6_FIELD.one()
    assert x * x.inverse() == 1


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        MinPoly([-1, 0, 1])  # t^2 - 1 has rational roots


def test_unknown_operation():
    j = J_FIELD.gen()
    with pytest.raises(ValueError):
        nf_arith(j, j, "pow")


def test_embeddings():
    j = J_FIELD.gen()
    z = embed_complex(j, principal_root_index(J_FIELD))
    assert abs(z - complex(-0.5, 3 ** 0.5 / 2)) < 1e-12
    r = embed_complex(CBRT6_FIELD.gen(), principal_root_index(CBRT6_FIELD))
    assert abs(r - 1.8171205928321397) < 1e-12
    assert embed_complex(Fraction(3, 2)) == complex(1.5, 0)


def test_combined_field_constants():
    # primitive element sqrt(-3) * cbrt(6) with t^6 + 972 = 0
    cb = field_constant(J_CBRT6_FIELD, "cbrt6")
    j = field_constant(J_CBRT6_FIELD, "j")
    assert cb ** 3 == 6
    assert j ** 3 == 1 and j != 1
    k = principal_root_index(J_CBRT6_FIELD)
    assert abs(embed_complex(cb, k) - 6 ** (1 / 3)) < 1e-10
    assert abs(embed_complex(j, k) - cmath.exp(2j * cmath.pi / 3)) < 1e-10


@pytest.mark.parametrize("q,d,s", [(Fraction(12), 3, 2), (Fraction(2, 3), 6, Fraction(1, 3)), (Fraction(-8), -2, 2)])
def test_squarefree_part(q, d, s):
    assert squarefree_part(q) == (d, s)


def test_rational_roots():
    # (x - 1/2)(x + 2)(x^2 + 1)
    p = [Fraction(-1), Fraction(3, 2), Fraction(0), Fraction(3, 2), Fraction(1)]
    assert rational_roots(p) == [Fraction(-2), Fraction(1, 2)]


def test_radical_field_biquadratic():
    fld, roots = radical_field([Fraction(2), Fraction(3), Fraction(6)])
    assert fld.degree == 4
    for q, r in roots.items():
        assert r * r == q


def test_radical_field_rational_and_quadratic():
    fld, roots = radical_field([Fraction(4), Fraction(9, 4)])
    assert fld is None and roots[Fraction(9, 4)] == Fraction(3, 2)
    fld, roots = radical_field([Fraction(-3), Fraction(1, 4)])
    assert fld.degree == 2 and roots[Fraction(-3)] ** 2 == -3


def test_scalar_json_round_trip():
    t = CBRT6_FIELD.gen()
    x = Fraction(1, 3) - t * t
    assert scalar_from_json(scalar_to_json(x), CBRT6_FIELD) == x
    assert scalar_from_json(scalar_to_json(Fraction(-5, 7))) == Fraction(-5, 7)
    assert scalar_from_json(scalar_to_json(1.5 - 2j), numeric=True) == 1.5 - 2j
