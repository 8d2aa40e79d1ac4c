import json
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from cobordism.fgl import LazardElement, laurent_beta_ring, lazard_ring
from cobordism.genera import (
    FormalClass,
    MorphismDatum,
    adams_check,
    basis_matrix,
    basis_variety,
    class_in_lazard,
    gdf_verify,
    lazard_to_chern_numbers,
    multiplicative_image,
    prime_power_exponent,
    rost_check,
    s_d_hom,
    t_d1,
)
from cobordism.theories import chi_structure_sheaf
from cobordism.varieties import (
    Ambient,
    CompleteIntersection,
    chern_numbers,
    hypersurface,
    partitions,
    projective_space,
    standard_catalog,
)

P1, P2, P3 = (projective_space(n) for n in (1, 2, 3))
CUBIC = hypersurface(3, 3)
QUADRIC = hypersurface(2, 3)
QUADRIC3 = hypersurface(2, 4)
H23 = CompleteIntersection(Ambient((2, 3)), ((1, 1),))


def m(k):
    return LazardElement.m(k)


def test_prime_power_exponent():
    assert prime_power_exponent(2, 3) == 1
    assert prime_power_exponent(7, 2) == 3
    assert prime_power_exponent(8, 3) == 2
    assert prime_power_exponent(5, 2) is None
    assert prime_power_exponent(0, 2) is None
    with pytest.raises(ValueError):
        prime_power_exponent(3, 4)


# -- s_d homomorphism -----------------------------------------------------------


def test_s_d_hom_examples():
    assert s_d_hom(FormalClass.of(P1)) == 2
    assert s_d_hom(2 * FormalClass.of(P2) - FormalClass.of(P2)) == 3
    assert s_d_hom(FormalClass.of(P1 * P1)) == 0
    assert s_d_hom(FormalClass.of(P2, Fraction(1, 3))) == 1
    with pytest.raises(ValueError):
        s_d_hom(FormalClass.of(P1) + FormalClass.of(P2))


DIM2 = [P2, CUBIC, QUADRIC, P1 * P1, hypersurface(4, 3), hypersurface(5, 3)]


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.sampled_from(DIM2)), max_size=4),
       st.lists(st.tuples(st.integers(-5, 5), st.sampled_from(DIM2)), max_size=4))
def test_s_d_hom_is_additive(a, b):
    A, B = FormalClass(tuple(a)), FormalClass(tuple(b))
    if not (A.terms and B.terms):
        return
    assert s_d_hom(A + B) == s_d_hom(A) + s_d_hom(B)
    assert s_d_hom(-A) == -s_d_hom(A)


def test_s_d_hom_product_with_point():
    pt = basis_variety(())
    for V in DIM2:
        assert s_d_hom(FormalClass.of(V * pt)) == s_d_hom(FormalClass.of(V))


# -- Adams divisibility -------------------------------------------------------------


def test_adams_examples():
    rep = adams_check(P2, 3)
    assert rep.passed and rep.witness == {"applicable": True, "s_d": 3, "quotient": 1}
    rep = adams_check(QUADRIC3, 2)
    assert rep.passed and rep.witness["s_d"] == -6 and rep.witness["quotient"] == -3
    rep = adams_check(H23, 5)
    assert rep.passed and rep.witness["s_d"] == -10 and rep.witness["quotient"] == -2
    assert adams_check(P2, 2).witness == {"applicable": False}


def test_adams_sweep_on_catalog():
    checked = 0
    for V in standard_catalog():
        for p in (2, 3, 5, 7):
            rep = adams_check(V, p)
            assert rep.passed, rep.to_json()
            checked += rep.witness["applicable"]
    assert checked > 100


def test_adams_report_json():
    data = adams_check(P1, 2).to_json()
    assert set(data) == {"check", "inputs", "pass", "witness"}
    json.dumps(data)


# -- t_{d,1} ----------------------------------------------------------------------


def test_t_d1_examples():
    assert t_d1(FormalClass.of(P1), 2) == 1
    assert t_d1(FormalClass.of(P2), 3) == 1
    assert t_d1(FormalClass.of(P1 * P1 * P1), 2) == 0
    assert t_d1(FormalClass.of(P3), 2) == 0  # s3 = 4
    assert t_d1(FormalClass.of(QUADRIC3), 2) == 1  # -6/2 = -3


def test_t_d1_rejections():
    with pytest.raises(ValueError, match="not of the form"):
        t_d1(FormalClass.of(P2), 2)
    with pytest.raises(ValueError, match="p-integral"):
        t_d1(FormalClass.of(P2, Fraction(1, 3)), 3)


def test_t_d1_is_additive_mod_p():
    A, B = FormalClass.of(P2), FormalClass.of(CUBIC, 2)
    assert t_d1(A + B, 3) == (t_d1(A, 3) + t_d1(B, 3)) % 3


# -- Lazard coordinates ----------------------------------------------------------


@pytest.mark.parametrize("d", range(1, 9))
def test_basis_matrix_invertible(d):
    parts, M, inv = basis_matrix(d)
    assert len(parts) == len(partitions(d))
    assert M.det() != 0
    prod = M * sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in row] for row in inv])
    assert prod == sp.eye(len(parts))


@pytest.mark.parametrize("n", range(1, 9))
def test_projective_space_class(n):
    assert class_in_lazard(projective_space(n)).element == m(n) * (n + 1)


def test_surface_classes():
    quad = class_in_lazard(QUADRIC)
    assert quad.element == class_in_lazard(P1 * P1).element == m(1) * m(1) * 4
    assert quad.coefficients == {(2,): 0, (1, 1): 1}
    cubic = class_in_lazard(CUBIC)
    assert cubic.coefficients == {(2,): -5, (1, 1): 6}
    assert cubic.element == m(1) * m(1) * 24 - m(2) * 15
    assert s_d_hom(FormalClass(((6, P1 * P1), (-5, P2)))) == -15


def test_class_is_homogeneous_of_right_degree():
    for V in standard_catalog()[:120]:
        c = class_in_lazard(V)
        assert c.element.value.is_homogeneous(-V.dim)


def test_class_bound_enforced():
    with pytest.raises(ValueError):
        class_in_lazard(P3, bound=2)


def test_round_trip_on_catalog():
    for V in standard_catalog():
        coords = class_in_lazard(V)
        assert lazard_to_chern_numbers(coords) == chern_numbers(V)


def test_class_is_additive_and_multiplicative():
    a = class_in_lazard(FormalClass.of(CUBIC) + FormalClass.of(P2, 2)).element
    assert a == class_in_lazard(CUBIC).element + class_in_lazard(P2).element * 2
    assert class_in_lazard(CUBIC * P1).element == class_in_lazard(CUBIC).element * class_in_lazard(P1).element


def test_multiplicative_image_is_beta_power_times_chi():
    B = laurent_beta_ring()
    for V in [P1, P2, CUBIC, hypersurface(4, 3), hypersurface(3, 2), H23, P2 * hypersurface(3, 2)]:
        img = multiplicative_image(class_in_lazard(V))
        assert img == B.gen("beta", V.dim).scale(chi_structure_sheaf(V))


# -- degree formulas ----------------------------------------------------------------


def test_gdf_examples():
    assert gdf_verify(MorphismDatum(QUADRIC, P1 * P1, 1), FormalClass()).passed
    assert gdf_verify(MorphismDatum(CUBIC, CUBIC, 1), FormalClass()).passed
    good = FormalClass(((6, P1 * P1), (-6, P2)))
    assert gdf_verify(MorphismDatum(CUBIC, P2, 1), good).passed


def test_gdf_negative_control():
    bad = FormalClass(((6, P1 * P1), (-5, P2)))
    rep = gdf_verify(MorphismDatum(CUBIC, P2, 1), bad)
    assert not rep.passed
    assert rep.witness == {"chern_number": "c2", "lhs": "6", "rhs": "9"}


def test_gdf_dimension_mismatch():
    with pytest.raises(ValueError):
        gdf_verify(MorphismDatum(CUBIC, P1, 1), FormalClass())
    with pytest.raises(ValueError):
        gdf_verify(MorphismDatum(CUBIC, P2, 1), FormalClass.of(P1))


def test_rost_examples():
    rep = rost_check(MorphismDatum(CUBIC, P2, 1), 3)
    assert rep.passed and rep.witness == {"delta": -18, "eta_degree": -6}
    assert rost_check(MorphismDatum(CUBIC, P2, 1), 3, eta_degree=-6).passed
    assert not rost_check(MorphismDatum(CUBIC, P2, 1), 3, eta_degree=-5).passed
    rep = rost_check(MorphismDatum(P2, P2, 1), 3)
    assert rep.passed and rep.witness["eta_degree"] == 0
    rep = rost_check(MorphismDatum(P1 * P2, QUADRIC3, 0), 2)
    assert rep.passed and rep.witness["delta"] == 0


def test_rost_rejects_bad_dimension():
    with pytest.raises(ValueError):
        rost_check(MorphismDatum(P3, P3, 1), 3)
    with pytest.raises(ValueError):
        rost_check(MorphismDatum(P2, P1, 1), 2)


def test_lazard_ring_bound():
    assert class_in_lazard(P1).element.ring == lazard_ring(9)
