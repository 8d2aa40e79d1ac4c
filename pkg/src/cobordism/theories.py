"""Oriented theories on products of projective spaces.

A theory is a coefficient ring plus a formal group law.  On
``P^n1 x ... x P^nk`` its ring is ``R[x1..xk]/(x_i^(n_i+1))`` with
``x_i = c1(O(1))`` pulled back from factor i; first Chern classes of other
line bundles follow from the group law.  Push-forward to the point exists
for the two concrete theories: Chow groups (the degree map) and
``K0[beta, beta^-1]`` (Euler characteristics).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Sequence

import sympy

from .algebra import Poly, PolyRing, TruncatedSeries, series_substitute
from .fgl import (
    DEFAULT_ORDER,
    FormalGroupLaw,
    builtin_fgl,
    formal_inverse,
    n_series,
    universal_fgl,
)
from .varieties import Ambient, CompleteIntersection, Variety

__all__ = [
    "TheorySpec",
    "TheoryRing",
    "chow_theory",
    "k_theory",
    "universal_theory",
    "theory_ring",
    "c1_line_bundle",
    "line_bundle_class",
    "extract_fgl",
    "pushforward_point",
    "pushforward_projection",
    "pb_basis_check",
    "k0_c1_check",
    "binomial",
    "chi_line_bundle",
    "chi_structure_sheaf",
    "BasisReport",
    "K0Report",
]


@dataclass(frozen=True)
class TheorySpec:
    """A coefficient ring with a formal group law; ``kind`` is 'ch', 'k' or 'universal'."""

    name: str
    kind: str
    fgl: FormalGroupLaw = field(compare=False)

    @property
    def ring(self) -> PolyRing:
        return self.fgl.ring

    def fgl_for(self, order: int) -> FormalGroupLaw:
        # the concrete laws are polynomials, so they can be rebuilt at any order
        if self.kind == "ch":
            return builtin_fgl("additive", max(order, 2))
        if self.kind == "k":
            return builtin_fgl("multiplicative", max(order, 2))
        return self.fgl


def chow_theory(order: int = DEFAULT_ORDER) -> TheorySpec:
    return TheorySpec("CH", "ch", builtin_fgl("additive", order))


def k_theory(order: int = DEFAULT_ORDER) -> TheorySpec:
    return TheorySpec("K0[beta,beta^-1]", "k", builtin_fgl("multiplicative", order))


def universal_theory(order: int = DEFAULT_ORDER) -> TheorySpec:
    return TheorySpec(f"Omega (universal, order {order})", "universal", universal_fgl(order))


class TheoryRing:
    """The theory evaluated on a product of projective spaces.

    Elements are :class:`TruncatedSeries` in ``x1..xk`` reduced by
    ``x_i^(n_i+1) = 0``.  ``order`` is the total degree through which
    elements are known exactly: the ambient dimension, or less if the
    group law is only known to lower order.
    """

    def __init__(self, spec: TheorySpec, ambient: Ambient):
        self.spec = spec
        self.ambient = ambient
        self.fgl = spec.fgl_for(ambient.dim)
        self.ring = self.fgl.ring
        self.order = min(self.fgl.order, ambient.dim)
        self.vars = tuple(f"x{i}" for i in range(1, ambient.nfactors + 1))

    def reduce(self, s: TruncatedSeries) -> TruncatedSeries:
        return s.truncate(self.order).reduce_exponents(self.ambient.dims)

    def element(self, coeffs) -> TruncatedSeries:
        return self.reduce(TruncatedSeries(self.ring, self.vars, self.order, coeffs))

    def one(self) -> TruncatedSeries:
        return TruncatedSeries.constant(1, self.ring, self.vars, self.order)

    def zero(self) -> TruncatedSeries:
        return TruncatedSeries.zero(self.ring, self.vars, self.order)

    def x(self, i: int) -> TruncatedSeries:
        """``c1`` of ``O(1)`` pulled back from factor ``i`` (0-based)."""
        return self.reduce(TruncatedSeries.variable(self.vars[i], self.ring, self.vars, self.order))

    def mul(self, a, b) -> TruncatedSeries:
        return self.reduce(a * b)

    def basis(self) -> list[tuple[int, ...]]:
        return sorted(iproduct(*(range(n + 1) for n in self.ambient.dims)), key=lambda e: (sum(e), e))

    def monomial(self, e) -> TruncatedSeries:
        return self.element({tuple(e): self.ring.one()})

    def to_json(self, s: TruncatedSeries) -> dict:
        return {
            "theory": self.spec.name,
            "ambient": list(self.ambient.dims),
            "basis_coefficients": [
                {"monomial": list(e), "coefficient": s.coefficient(e).to_json()["terms"]}
                for e in self.basis()
                if not s.coefficient(e).is_zero()
            ],
        }


@functools.lru_cache(maxsize=None)
def _cached_ring(spec: TheorySpec, ambient: Ambient) -> TheoryRing:
    return TheoryRing(spec, ambient)


def theory_ring(spec: TheorySpec, ambient: Ambient | Sequence[int]) -> TheoryRing:
    if not isinstance(ambient, Ambient):
        ambient = Ambient(tuple(ambient))
    return _cached_ring(spec, ambient)


def c1_line_bundle(T: TheoryRing, twist: Sequence[int]) -> TruncatedSeries:
    """``c1(O(a1, ..., ak))`` as the formal sum of the ``[a_i]_F(x_i)``."""
    if len(twist) != T.ambient.nfactors:
        raise ValueError(f"twist {tuple(twist)} does not match {T.ambient}")
    F = T.fgl.truncate(T.order) if T.fgl.order > T.order else T.fgl
    total = T.zero()
    for i, a in enumerate(twist):
        if a == 0:
            continue
        term = series_substitute(n_series(F, a), {"u": T.x(i)})
        total = T.reduce(F(total, term)) if not total.is_zero() else T.reduce(term)
    return total


def line_bundle_class(T: TheoryRing, twist: Sequence[int]) -> TruncatedSeries:
    """K-theory class ``[O(a1..ak)] = prod (1 - beta x_i)^(-a_i)``."""
    if T.spec.kind != "k":
        raise ValueError("line-bundle classes are only available in K-theory")
    beta = T.ring.gen("beta")
    out = T.one()
    for i, a in enumerate(twist):
        # [O(-1)] = 1 - beta*x; its inverse is the finite geometric series
        y = T.x(i).scale(beta)
        base = T.one() - y
        if a < 0:
            factor = _power(T, base, -a)
        else:
            inv = T.one()
            p = T.one()
            for _ in range(T.ambient.dims[i]):
                p = T.mul(p, y)
                inv = inv + p
            factor = _power(T, inv, a)
        out = T.mul(out, factor)
    return out


def _power(T, s, n):
    out = T.one()
    for _ in range(n):
        out = T.mul(out, s)
    return out


def extract_fgl(spec: TheorySpec, N: int) -> FormalGroupLaw:
    """Read the group law back off ``c1(O(1,1))`` on ``P^N x P^N``."""
    if N < 2:
        raise ValueError(f"order must be >= 2, got {N}")
    T = theory_ring(spec, Ambient((N, N)))
    c = c1_line_bundle(T, (1, 1))
    coeffs = {e: v for e, v in c.coeffs.items() if sum(e) <= N}
    return FormalGroupLaw(T.ring, coeffs, min(N, T.order), name=f"extracted from {spec.name}")


def binomial(n: int, k: int) -> int:
    """Polynomial binomial ``C(n, k)`` in ``n`` (valid for negative ``n``), ``k >= 0``."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= n - i
    den = 1
    for i in range(1, k + 1):
        den *= i
    return num // den


def chi_line_bundle(dims: Sequence[int], twist: Sequence[int]) -> int:
    """``chi(P^n1 x ... x P^nk, O(a1..ak)) = prod C(n_i + a_i, n_i)``."""
    out = 1
    for n, a in zip(dims, twist):
        out *= binomial(n + a, n)
    return out


def chi_structure_sheaf(V: Variety) -> int:
    """``chi(V, O_V)`` from the Koszul resolution of each complete intersection."""
    total = 0
    for leaf in V.leaves():
        total += _koszul_chi(leaf)
    return total


def _koszul_chi(V: CompleteIntersection) -> int:
    dims = V.ambient.dims
    k = len(dims)
    total = 0
    for subset in iproduct((0, 1), repeat=len(V.cuts)):
        twist = [0] * k
        for take, cut in zip(subset, V.cuts):
            if take:
                twist = [t - a for t, a in zip(twist, cut)]
        total += (-1) ** sum(subset) * chi_line_bundle(dims, twist)
    return total


def _push_factor_k(n: int, e: int, beta: Poly) -> Poly:
    # push of x^e from P^n: beta^(n-e) * chi((1 - O(-1))^e)
    chi = sum((-1) ** t * binomial(e, t) * binomial(n - t, n) for t in range(e + 1))
    return (beta ** (n - e)).scale(chi)


def _push_factor(T: TheoryRing, n: int, e: int) -> Poly:
    if T.spec.kind == "ch":
        return T.ring.one() if e == n else T.ring.zero()
    if T.spec.kind == "k":
        return _push_factor_k(n, e, T.ring.gen("beta"))
    raise ValueError(f"push-forward is not implemented for the {T.spec.name} theory")


def pushforward_point(T: TheoryRing, e: TruncatedSeries) -> Poly:
    """Push an element to the point.

    Chow: the degree map.  K-theory: x-monomials are rewritten through
    ``x = (1 - [O(-1)]) / beta`` and sent to Euler characteristics, with
    ``push(1 on P^n) = beta^n``.
    """
    if T.spec.kind not in ("ch", "k"):
        raise ValueError(f"push-forward is not implemented for the {T.spec.name} theory")
    if T.order < T.ambient.dim:
        raise ValueError("theory ring is not exact through the top degree")
    out = T.ring.zero()
    for mono, c in e.coeffs.items():
        term = c
        for n, k in zip(T.ambient.dims, mono):
            term = term * _push_factor(T, n, k)
        out = out + term
    return out


def pushforward_projection(T: TheoryRing, e: TruncatedSeries, keep: Sequence[int]) -> tuple[TheoryRing, TruncatedSeries]:
    """Push along the projection onto the factors listed in ``keep``."""
    keep = list(keep)
    target = theory_ring(T.spec, Ambient(tuple(T.ambient.dims[i] for i in keep)))
    drop = [i for i in range(T.ambient.nfactors) if i not in keep]
    out = target.zero()
    for mono, c in e.coeffs.items():
        coeff = c
        for i in drop:
            coeff = coeff * _push_factor(T, T.ambient.dims[i], mono[i])
        if coeff:
            out = out + target.element({tuple(mono[i] for i in keep): coeff})
    return target, out


@dataclass
class BasisReport:
    ambient: tuple[int, ...]
    basis: list[tuple[int, ...]]
    spanning: bool
    independent: bool | None
    gram_determinant: str | None = None

    @property
    def passed(self) -> bool:
        return self.spanning and self.independent is not False


def pb_basis_check(T: TheoryRing) -> BasisReport:
    """Check the monomials ``prod x_i^e_i`` (``e_i <= n_i``) form a basis.

    Spanning: every product of basis elements, and every ``c1`` of a line
    bundle, lands in their span.  Independence (concrete theories only):
    the push-forward pairing has a unit Gram determinant, so no nontrivial
    combination can vanish.
    """
    basis = T.basis()
    bset = set(basis)
    spanning = True
    for a in basis:
        for b in basis:
            prod = T.mul(T.monomial(a), T.monomial(b))
            if any(m not in bset for m in prod.coeffs):
                spanning = False
    twist = (1,) * T.ambient.nfactors
    if any(m not in bset for m in c1_line_bundle(T, twist).coeffs):
        spanning = False
    if T.spec.kind not in ("ch", "k") or T.order < T.ambient.dim:
        return BasisReport(T.ambient.dims, basis, spanning, None)
    gram = [[pushforward_point(T, T.mul(T.monomial(a), T.monomial(b))) for b in basis] for a in basis]
    det = _gram_det(gram, basis, T)
    independent = det.is_monomial() and abs(det.terms[next(iter(det.terms))]) == 1
    return BasisReport(T.ambient.dims, basis, spanning, independent, str(det))


def _gram_det(gram, basis, T: TheoryRing) -> Poly:
    # entry (a, b) is an integer times beta^(dim - |a| - |b|); the beta
    # powers factor out of the determinant
    ring, dim = T.ring, T.ambient.dim
    ints = []
    for a, row in zip(basis, gram):
        out = []
        for b, p in zip(basis, row):
            if p.is_zero():
                out.append(0)
                continue
            if not p.is_monomial():
                raise ValueError(f"unexpected Gram entry {p}")
            (e, v), = p.terms.items()
            if "beta" in ring and e[ring.index("beta")] != dim - sum(a) - sum(b):
                raise ValueError(f"Gram entry {p} has the wrong degree")
            out.append(v)
        ints.append(out)
    det = int(sympy.Matrix(ints).det())
    if "beta" in ring:
        shift = len(basis) * dim - 2 * sum(sum(a) for a in basis)
        return ring.gen("beta", shift).scale(det)
    return ring.const(det)


@dataclass
class K0Report:
    n: int
    cases: list[dict]

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.cases)


def k0_c1_check(n: int, bound: int = 3) -> K0Report:
    """On ``P^n`` compare ``c1(L) = (1 - [L^dual]) / beta`` with the group law.

    For ``|a|, |b| <= bound`` it checks both ``F(c1(O(a)), c1(O(b))) =
    c1(O(a+b))`` and that ``c1(O(a))`` agrees with ``[a]_F(x)``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    T = theory_ring(k_theory(), Ambient((n,)))
    beta_inv = T.ring.gen("beta", -1)

    def c1_k(a):
        return (T.one() - line_bundle_class(T, (-a,))).scale(beta_inv)

    F = T.fgl
    cases = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            lhs = T.reduce(F(c1_k(a), c1_k(b)))
            rhs = c1_k(a + b)
            series = c1_line_bundle(T, (a + b,))
            cases.append({"a": a, "b": b, "pass": lhs == rhs and rhs == series})
    return K0Report(n, cases)


def fgl_inverse_in(T: TheoryRing, i: int = 0) -> TruncatedSeries:
    """``c1(O(-1))`` on factor i via the formal inverse."""
    return T.reduce(series_substitute(formal_inverse(T.fgl), {"u": T.x(i)}))
