import io
import itertools
import json
from math import comb

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from cobordism.varieties import (
    Ambient,
    CatalogError,
    ChowClass,
    CompleteIntersection,
    DisjointUnion,
    Product,
    chern_number,
    chern_numbers,
    chow_degree,
    hypersurface,
    load_catalog,
    newton_sd,
    parse_catalog,
    partitions,
    projective_space,
    s_number,
    s_number_newton,
    s_number_virtual,
    standard_catalog,
    standard_catalog_descriptors,
    tangent_chern,
    variety_to_json,
)

P1, P2, P3 = (projective_space(n) for n in (1, 2, 3))
CUBIC = hypersurface(3, 3)
QUADRIC = hypersurface(2, 3)


def milnor(m, n):
    return CompleteIntersection(Ambient((m, n)), ((1, 1),))


# -- Chow ring ----------------------------------------------------------------


def test_chow_degree_examples():
    A = Ambient((1, 1))
    x, y = ChowClass.hyperplane(A, 0), ChowClass.hyperplane(A, 1)
    assert chow_degree(x * y) == 1
    assert chow_degree((x + y) ** 2) == 2
    assert chow_degree(ChowClass.one(Ambient((2,)))) == 0


def test_reduction_is_eager():
    A = Ambient((1, 1))
    x = ChowClass.hyperplane(A, 0)
    assert (x * x).poly.is_zero()
    assert all(e[0] <= 1 and e[1] <= 1 for e in ((1 + x + ChowClass.hyperplane(A, 1)) ** 5).poly.terms)


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("a", range(1, 6))
def test_degree_pairing(n, a):
    A = Ambient((n,))
    h = ChowClass.hyperplane(A, 0)
    assert chow_degree(ChowClass.divisor(A, (a,)) * h ** (n - 1)) == a


def test_ambient_rejects_negative():
    with pytest.raises(ValueError):
        Ambient((2, -1))


# -- Chern data ---------------------------------------------------------------


def test_tangent_chern_projective_plane():
    data = tangent_chern(P2)
    h = ChowClass.hyperplane(Ambient((2,)), 0)
    assert data.total == 1 + 3 * h + 3 * h * h
    assert data.c(1) == 3 * h


def test_tangent_chern_cubic_surface():
    data = tangent_chern(CUBIC)
    h = ChowClass.hyperplane(Ambient((3,)), 0)
    # (1+h)^4 / (1+3h) mod h^4
    assert data.total == 1 + h + 3 * h**2 - 5 * h**3
    assert data.fundamental == 3 * h
    assert chow_degree(data.c(2) * data.fundamental) == 9


def test_tangent_chern_conic_in_p1xp1():
    data = tangent_chern(milnor(1, 1))
    A = Ambient((1, 1))
    x, y = ChowClass.hyperplane(A, 0), ChowClass.hyperplane(A, 1)
    assert data.c(1) == x + y
    assert chow_degree(data.c(1) * data.fundamental) == 2


def test_tangent_chern_of_union_rejected():
    with pytest.raises(TypeError):
        tangent_chern(P1 + P1)


def test_negative_dimension_rejected():
    with pytest.raises(ValueError):
        CompleteIntersection(Ambient((1,)), ((1,), (1,)))
    with pytest.raises(ValueError):
        CompleteIntersection(Ambient((2,)), ((0,),))
    with pytest.raises(ValueError):
        CompleteIntersection(Ambient((2,)), ((-1,),))


def test_chern_number_examples():
    assert chern_number(P2, (1, 1)) == 9
    assert chern_number(P2, (2,)) == 3
    assert chern_number(CUBIC, (1, 1)) == 3
    assert chern_number(CUBIC, (2,)) == 9
    assert chern_numbers(QUADRIC) == chern_numbers(P1 * P1) == {(2,): 4, (1, 1): 8}


def test_chern_number_partition_must_sum_to_dim():
    with pytest.raises(ValueError):
        chern_number(P2, (1,))
    with pytest.raises(ValueError):
        chern_number(P2, (3, -1))


@pytest.mark.parametrize("n", range(1, 7))
def test_projective_space_chern_numbers_closed_form(n):
    # c(P^n) = (1+h)^(n+1), so c_mu[P^n] = prod C(n+1, mu_i)
    for mu, value in chern_numbers(projective_space(n)).items():
        expected = 1
        for k in mu:
            expected *= comb(n + 1, k)
        assert value == expected


@pytest.mark.parametrize(
    "V",
    [P1 * P1 * P1, P1 * P2, P2 * CUBIC, milnor(1, 2) * P1, Product((P1, Product((P1, P1))))],
    ids=lambda V: V.name(),
)
def test_kunneth_matches_direct(V):
    for mu in partitions(V.dim):
        assert chern_number(V, mu) == chern_number(V, mu, method="direct")


def test_whitney_total_for_product():
    V = P1 * P2
    total = tangent_chern(V).total
    A = Ambient((1, 2))
    x, y = ChowClass.hyperplane(A, 0), ChowClass.hyperplane(A, 1)
    assert total == (1 + x) ** 2 * (1 + y) ** 3


def test_disjoint_union_sums():
    U = P2 + CUBIC
    assert chern_numbers(U) == {(2,): 12, (1, 1): 12}
    assert chern_number(U, (2,), method="direct") == 12
    with pytest.raises(ValueError):
        (P1 + P2).dim


# -- s_d ------------------------------------------------------------------------


def sympy_power_sum(d):
    """Power sum of d symbolic roots rewritten in elementary symmetric functions."""
    xs = sp.symbols(f"x1:{d + 1}")
    cs = sp.symbols(f"c1:{d + 1}")
    target = sp.Poly(sum(x**d for x in xs), *xs)
    result = 0
    # greedy leading-term elimination
    while not target.is_zero:
        (exps, coeff) = target.terms()[0]
        mono = sp.Integer(coeff)
        poly = sp.Integer(1)
        for i in range(d):
            k = exps[i] - (exps[i + 1] if i + 1 < d else 0)
            mono *= cs[i] ** k
            poly *= sum(sp.prod(c) for c in itertools.combinations(xs, i + 1)) ** k
        result += mono
        target = target - sp.Poly(sp.Integer(coeff) * poly, *xs)
    return sp.expand(result), cs


@pytest.mark.parametrize("d", range(1, 6))
def test_newton_sd_against_symmetric_function_oracle(d):
    oracle, cs = sympy_power_sum(d)
    ours = 0
    for e, c in newton_sd(d).terms.items():
        ours += sp.Rational(c) * sp.prod(ci**k for ci, k in zip(cs, e))
    assert sp.expand(ours) == oracle


def test_newton_sd_low_degrees():
    assert str(newton_sd(1)) == "c1"
    assert str(newton_sd(2)) == "c1^2 - 2*c2"
    assert str(newton_sd(3)) == "c1^3 - 3*c1*c2 + 3*c3"
    with pytest.raises(ValueError):
        newton_sd(0)


@pytest.mark.parametrize("d", range(1, 9))
def test_s_number_projective_space(d):
    assert s_number(projective_space(d)) == d + 1


@pytest.mark.parametrize("a", range(1, 6))
@pytest.mark.parametrize("d", range(1, 7))
def test_s_number_hypersurface_closed_form(a, d):
    assert s_number(hypersurface(a, d + 1)) == a * ((d + 2) - a**d)


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3), (2, 5), (4, 4)])
def test_s_number_milnor_hypersurface(m, n):
    assert s_number(milnor(m, n)) == -comb(m + n, m)


def test_s_number_examples():
    assert s_number(P1) == 2
    assert s_number(CUBIC) == -15
    assert s_number(hypersurface(2, 4)) == -6
    assert s_number(milnor(2, 3)) == -10
    assert s_number(P1 * P2) == 0


def test_s_number_rejects_mixed_union_and_points():
    with pytest.raises(ValueError):
        s_number(P1 + P2)
    with pytest.raises(ValueError):
        s_number(CompleteIntersection(Ambient((1,)), ((1,),)))


@st.composite
def leaves(draw, max_dim=4):
    k = draw(st.integers(1, 2))
    dims = tuple(draw(st.integers(1, 3)) for _ in range(k))
    ncuts = draw(st.integers(0, min(2, sum(dims) - 1)))
    cuts = []
    for _ in range(ncuts):
        cut = tuple(draw(st.integers(0, 3)) for _ in range(k))
        if not any(cut):
            cut = (1,) + cut[1:]
        cuts.append(cut)
    return CompleteIntersection(Ambient(dims), tuple(cuts))


@settings(max_examples=60, deadline=None)
@given(leaves(), leaves())
def test_routes_agree_and_products_vanish(V, W):
    assert s_number_newton(V) == s_number_virtual(V)
    assert s_number_newton(V * W) == s_number_virtual(V * W) == 0


@settings(max_examples=40, deadline=None)
@given(leaves(), leaves())
def test_chern_numbers_of_product_via_merged_ambient(V, W):
    # the product of two leaves is itself a leaf in the product ambient
    assert chern_numbers(V * W) == chern_numbers(V.product(W))


# -- catalog -----------------------------------------------------------------


def test_partitions_order():
    assert partitions(0) == [()]
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [len(partitions(d)) for d in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]


def test_shipped_catalog_matches_generator():
    from importlib import resources

    shipped = json.loads(resources.files("cobordism").joinpath("data/std.json").read_text())
    assert shipped == standard_catalog_descriptors()


def test_standard_catalog_contents():
    cat = standard_catalog()
    labels = [V.label for V in cat]
    assert len(cat) >= 60 and len(set(labels)) == len(labels)
    assert {"P1", "P8", "cubic3", "quadric4", "H2_3", "H4_5", "P1xP1", "P4xP4"} <= set(labels)
    assert max(V.dim for V in cat) == 8
    assert {V.dim for V in cat} == set(range(1, 9))


def test_parse_combinators_and_labels():
    cat = parse_catalog(
        [
            {"label": "C", "ambient": [2], "cuts": [[3]]},
            {"label": "S", "product": ["C", {"ambient": [1], "cuts": []}]},
            {"label": "U", "union": ["S", "S"]},
        ]
    )
    C, S, U = cat
    assert isinstance(S, Product) and isinstance(U, DisjointUnion)
    assert chern_numbers(U) == {mu: 2 * n for mu, n in chern_numbers(S).items()}
    assert chern_number(C, (1,)) == 0  # plane cubic is elliptic


def test_variety_json_round_trip():
    V = Product((CUBIC, P1), label="cubic3xP1")
    again = parse_catalog([variety_to_json(V)])[0]
    assert again == V and chern_numbers(again) == chern_numbers(V)


@pytest.mark.parametrize(
    "data, message",
    [
        ({"ambient": [1]}, "list"),
        (["P1"], "unknown label"),
        ([{"label": "x"}], "needs"),
        ([{"ambient": [1], "cuts": [[1], [1]]}], "entry 0"),
        ([{"ambient": [1], "label": "a"}, {"ambient": [2], "label": "a"}], "duplicate"),
        ([{"ambient": ["one"]}], "entry 0"),
    ],
)
def test_catalog_errors(data, message):
    with pytest.raises(CatalogError, match=message):
        parse_catalog(data)


def test_malformed_json_reports_position():
    with pytest.raises(CatalogError, match=r"line 2, column"):
        load_catalog(io.StringIO('[\n  {"ambient": [1],, }\n]'))


def test_empty_catalog():
    assert load_catalog(io.StringIO("[]")) == []
