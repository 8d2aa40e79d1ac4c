"""s_d genera, Lazard coordinates of varieties, and degree-formula checks.

Classes of varieties are coordinatized in ``Q[m1, m2, ...]`` by solving for
the combination of products of projective spaces with the same Chern
numbers, using ``[P^n] = (n+1) m_n``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from .fgl import LazardElement, lazard_ring, multiplicative_map, specialize
from .varieties import (
    Ambient,
    CompleteIntersection,
    Product,
    Variety,
    chern_numbers,
    partitions,
    projective_space,
    s_number,
)

__all__ = [
    "DIMENSION_BOUND",
    "FormalClass",
    "MorphismDatum",
    "LazardCoordinates",
    "Report",
    "prime_power_exponent",
    "s_d_hom",
    "adams_check",
    "t_d1",
    "basis_variety",
    "basis_matrix",
    "class_in_lazard",
    "lazard_to_chern_numbers",
    "gdf_verify",
    "rost_check",
    "multiplicative_image",
]

DIMENSION_BOUND = 8


@dataclass(frozen=True)
class FormalClass:
    """A formal integer (or rational) combination of varieties of one dimension."""

    terms: tuple[tuple[int | Fraction, Variety], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((m, V) for m, V in self.terms))

    @classmethod
    def of(cls, V: Variety, multiplicity=1) -> FormalClass:
        return cls(((multiplicity, V),))

    @property
    def dim(self) -> int | None:
        dims = {V.dim for _, V in self.terms}
        if len(dims) > 1:
            raise ValueError(f"formal class of mixed dimensions {sorted(dims)}")
        return dims.pop() if dims else None

    def __add__(self, other: FormalClass) -> FormalClass:
        return FormalClass(self.terms + other.terms)

    def __neg__(self):
        return FormalClass(tuple((-m, V) for m, V in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return FormalClass(tuple((c * m, V) for m, V in self.terms))

    def chern_numbers(self, d: int | None = None) -> dict:
        d = self.dim if d is None else d
        out = {mu: 0 for mu in partitions(d)}
        for m, V in self.terms:
            for mu, n in chern_numbers(V).items():
                out[mu] += m * n
        return out

    def describe(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{m}[{V.name()}]" for m, V in self.terms).replace("+ -", "- ")


@dataclass(frozen=True)
class MorphismDatum:
    """An asserted morphism ``source -> target`` of the given degree (not verified)."""

    source: Variety
    target: Variety
    degree: int


@dataclass(frozen=True)
class LazardCoordinates:
    element: LazardElement
    dimension: int
    coefficients: dict = field(default_factory=dict, compare=False)

    def __str__(self):
        return str(self.element)


@dataclass
class Report:
    check: str
    inputs: dict
    passed: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"check": self.check, "inputs": self.inputs, "pass": self.passed, "witness": self.witness}


def prime_power_exponent(d: int, p: int) -> int | None:
    """``n`` with ``d = p^n - 1``, or None."""
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    q, n = d + 1, 0
    while q > 1 and q % p == 0:
        q //= p
        n += 1
    return n if q == 1 and n >= 1 else None


def _as_class(c) -> FormalClass:
    return c if isinstance(c, FormalClass) else FormalClass.of(c)


def s_d_hom(c: FormalClass | Variety):
    """``sum multiplicity * s_d(variety)``."""
    c = _as_class(c)
    c.dim  # raises on mixed dimension
    total = sum(m * s_number(V) for m, V in c.terms)
    if isinstance(total, Fraction) and total.denominator == 1:
        return total.numerator
    return total


def adams_check(V: Variety, p: int) -> Report:
    d = V.dim
    n = prime_power_exponent(d, p)
    inputs = {"variety": V.name(), "dim": d, "p": p}
    if n is None:
        return Report("adams", inputs, True, {"applicable": False})
    s = s_number(V)
    passes = s % p == 0
    witness = {"applicable": True, "s_d": s, "quotient": s // p if passes else None}
    return Report("adams", inputs, passes, witness)


def t_d1(c: FormalClass | Variety, p: int) -> int:
    """``t_{d,1} = (s_d / p) mod p``."""
    c = _as_class(c)
    d = c.dim
    if d is None or prime_power_exponent(d, p) is None:
        raise ValueError(f"dimension {d} is not of the form {p}^n - 1")
    for _, V in c.terms:
        if s_number(V) % p:
            raise ValueError(f"s_{d}({V.name()}) = {s_number(V)} is not divisible by {p}")
    s = Fraction(s_d_hom(c))
    q = s / p
    if q.denominator % p == 0:
        raise ValueError(f"s_{d} = {s} is not p-integral after division by {p}")
    return int(q.numerator * pow(q.denominator, -1, p) % p)


def basis_variety(partition: Sequence[int]) -> Variety:
    """``P^l1 x P^l2 x ...`` for a partition ``l``."""
    factors = tuple(projective_space(k) for k in partition)
    if not factors:
        return CompleteIntersection(Ambient(), (), label="pt")
    if len(factors) == 1:
        return factors[0]
    return Product(factors, label="x".join(f"P{k}" for k in partition))


@functools.lru_cache(maxsize=None)
def basis_matrix(d: int):
    """Chern numbers of the projective-space products, with its exact inverse.

    Rows are indexed by Chern monomials, columns by basis products, both in
    :func:`partitions` order.
    """
    parts = partitions(d)
    cols = [chern_numbers(basis_variety(lam)) for lam in parts]
    M = sympy.Matrix([[cols[j][mu] for j in range(len(parts))] for mu in parts])
    if M.det() == 0:
        raise AssertionError(f"Chern-number matrix in dimension {d} is singular")
    inv = M.inv()
    inv = tuple(tuple(Fraction(int(x.p), int(x.q)) for x in inv.row(i)) for i in range(len(parts)))
    return parts, M, inv


def _coordinates(numbers: dict, d: int) -> dict:
    parts, _, inv = basis_matrix(d)
    b = [numbers[mu] for mu in parts]
    return {lam: sum(row[k] * b[k] for k in range(len(b))) for lam, row in zip(parts, inv)}


def _lazard_from_coordinates(x: dict, d: int) -> LazardElement:
    ring = lazard_ring(max(DIMENSION_BOUND, d) + 1)
    value = ring.zero()
    for lam, c in x.items():
        if c == 0:
            continue
        term = ring.const(c)
        for k in lam:
            term = term * ring.gen(f"m{k}").scale(k + 1)
        value = value + term
    return LazardElement(value)


def class_in_lazard(V: Variety | FormalClass, bound: int = DIMENSION_BOUND) -> LazardCoordinates:
    """Coordinates of ``[V]`` in ``Q[m1, m2, ...]``."""
    c = _as_class(V)
    d = c.dim or 0
    if d > bound:
        raise ValueError(f"dimension {d} exceeds the configured bound {bound}")
    x = _coordinates(c.chern_numbers(d), d)
    return LazardCoordinates(_lazard_from_coordinates(x, d), d, x)


def lazard_to_chern_numbers(coords: LazardCoordinates) -> dict:
    """Chern numbers of the reconstruction ``sum x_l [P^l1 x ...]``."""
    d = coords.dimension
    out = {mu: 0 for mu in partitions(d)}
    for lam, c in coords.coefficients.items():
        for mu, n in chern_numbers(basis_variety(lam)).items():
            out[mu] += c * n
    return out


def _fmt(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def gdf_verify(lhs: MorphismDatum, decomposition: FormalClass) -> Report:
    """Check ``[Y] - deg(f)[X] = sum a_i [B_i]`` after push-forward to the point.

    Equivalent to equality of all Chern numbers; the witness is the first
    discrepant one.
    """
    d = lhs.source.dim
    if lhs.target.dim != d:
        raise ValueError(f"source dim {d} != target dim {lhs.target.dim}")
    if decomposition.terms and decomposition.dim != d:
        raise ValueError(f"decomposition has dim {decomposition.dim}, expected {d}")
    left = (FormalClass.of(lhs.source) - lhs.degree * FormalClass.of(lhs.target)).chern_numbers(d)
    right = decomposition.chern_numbers(d) if decomposition.terms else {mu: 0 for mu in partitions(d)}
    inputs = {
        "source": lhs.source.name(),
        "target": lhs.target.name(),
        "degree": lhs.degree,
        "decomposition": decomposition.describe(),
    }
    for mu in partitions(d):
        if left[mu] != right[mu]:
            witness = {"chern_number": "c" + "*c".join(map(str, mu)), "lhs": _fmt(left[mu]), "rhs": _fmt(right[mu])}
            return Report("gdf", inputs, False, witness)
    lhs_class = class_in_lazard(FormalClass.of(lhs.source) - lhs.degree * FormalClass.of(lhs.target)) if d else None
    witness = {"lazard_class": str(lhs_class)} if lhs_class else None
    return Report("gdf", inputs, True, witness)


def rost_check(f: MorphismDatum, p: int, eta_degree: int | None = None) -> Report:
    """``s_d(Y) - deg(f) s_d(X)`` must be ``p`` times a zero-cycle degree."""
    d = f.source.dim
    if f.target.dim != d:
        raise ValueError(f"source dim {d} != target dim {f.target.dim}")
    if prime_power_exponent(d, p) is None:
        raise ValueError(f"dimension {d} is not of the form {p}^n - 1")
    delta = s_number(f.source) - f.degree * s_number(f.target)
    divisible = delta % p == 0
    implied = delta // p if divisible else None
    passed = divisible and (eta_degree is None or implied == eta_degree)
    inputs = {"source": f.source.name(), "target": f.target.name(), "degree": f.degree, "p": p}
    if eta_degree is not None:
        inputs["eta_degree"] = eta_degree
    return Report("rost", inputs, passed, {"delta": delta, "eta_degree": implied})


def multiplicative_image(coords: LazardCoordinates):
    """Image under ``m_k -> beta^k/(k+1)``."""
    ring = coords.element.ring
    return specialize(coords.element, multiplicative_map(ring.ngens + 1))

