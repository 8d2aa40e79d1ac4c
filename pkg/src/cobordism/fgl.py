"""Formal group laws, the rational Lazard ring, and specialization maps.

The Lazard ring tensored with Q is modelled as the free polynomial ring
``Q[m1, m2, ...]`` with ``deg m_k = -k``: the universal law is
``exp(log(u) + log(v))`` for ``log(u) = u + sum_k m_k u^(k+1)``.  Every
a_ij is then an explicit polynomial in the m's, and the commutativity and
associativity relations hold by construction.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import (
    GradedVariable,
    Poly,
    PolyRing,
    TruncatedSeries,
    ring_from_json,
    ring_to_json,
    series_reverse,
    series_substitute,
)

__all__ = [
    "DEFAULT_ORDER",
    "FormalGroupLaw",
    "AxiomResult",
    "AxiomReport",
    "RingMap",
    "LazardElement",
    "lazard_ring",
    "integer_ring",
    "laurent_beta_ring",
    "universal_log",
    "universal_fgl",
    "builtin_fgl",
    "check_fgl_axioms",
    "specialize",
    "formal_inverse",
    "n_series",
    "lazard_eq",
    "additive_map",
    "multiplicative_map",
]

DEFAULT_ORDER = 8

UV = ("u", "v")
UVW = ("u", "v", "w")


def integer_ring() -> PolyRing:
    return PolyRing(())


def laurent_beta_ring() -> PolyRing:
    return PolyRing([GradedVariable("beta", -1, invertible=True)])


@functools.lru_cache(maxsize=None)
def lazard_ring(order: int = DEFAULT_ORDER) -> PolyRing:
    """``Q[m1, ..., m_{order-1}]`` with ``deg m_k = -k``."""
    return PolyRing([GradedVariable(f"m{k}", -k) for k in range(1, order)])


class FormalGroupLaw:
    """A two-variable series ``F(u, v)`` over a coefficient ring, cut at ``order``.

    ``coeffs`` holds every coefficient of the series, including the linear
    ones, so that malformed inputs can be represented and then rejected by
    :func:`check_fgl_axioms`.
    """

    def __init__(self, ring: PolyRing, coeffs: Mapping[tuple[int, int], Poly | int], order: int, name: str = ""):
        self.ring = ring
        self.order = order
        self.name = name
        self._series = TruncatedSeries(ring, UV, order, coeffs)

    @classmethod
    def from_aij(cls, ring, table, order, name=""):
        """Build ``u + v + sum a_ij u^i v^j`` from a table of ``(i, j) -> a_ij``."""
        coeffs = {(1, 0): ring.one(), (0, 1): ring.one()}
        for (i, j), c in table.items():
            if i < 1 or j < 1:
                raise ValueError(f"a_ij needs i, j >= 1, got {(i, j)}")
            coeffs[(i, j)] = c
        return cls(ring, coeffs, order, name)

    @classmethod
    def from_series(cls, series: TruncatedSeries, name=""):
        if len(series.vars) != 2:
            raise ValueError("a formal group law is a series in two variables")
        return cls(series.ring, series.coeffs, series.order, name)

    @property
    def coeffs(self) -> dict[tuple[int, int], Poly]:
        return dict(self._series.coeffs)

    def a(self, i: int, j: int) -> Poly:
        if i + j > self.order:
            raise ValueError(f"a_{i}{j} lies beyond truncation order {self.order}")
        return self._series.coefficient((i, j))

    def table(self) -> dict[tuple[int, int], Poly]:
        """Nonzero a_ij with i, j >= 1."""
        return {e: c for e, c in self._series.coeffs.items() if e[0] >= 1 and e[1] >= 1}

    def series(self, vars=UV) -> TruncatedSeries:
        s = self._series
        if tuple(vars) != UV:
            s = TruncatedSeries._raw(s.ring, tuple(vars), s.order, dict(s.coeffs))
        return s

    def __call__(self, x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
        """Evaluate ``F(x, y)`` for series with zero constant term."""
        return series_substitute(self._series, [("u", x), ("v", y)])

    def truncate(self, order: int) -> FormalGroupLaw:
        return FormalGroupLaw.from_series(self._series.truncate(order), self.name)

    def __eq__(self, other):
        if not isinstance(other, FormalGroupLaw):
            return NotImplemented
        return self.order == other.order and self._series == other._series

    __hash__ = None

    def __str__(self):
        return str(self._series)

    def __repr__(self):
        return f"FormalGroupLaw({self.name or 'F'} over {self.ring!r}, order={self.order})"

    def to_json(self) -> dict:
        return {
            "kind": "formal_group_law",
            "name": self.name,
            "order": self.order,
            "ring": ring_to_json(self.ring),
            "coefficients": [
                {"i": e[0], "j": e[1], "value": c.to_json()["terms"]}
                for e, c in self._series.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> FormalGroupLaw:
        ring = ring_from_json(data["ring"])
        coeffs = {
            (c["i"], c["j"]): Poly.from_json({"ring": data["ring"], "terms": c["value"]})
            for c in data["coefficients"]
        }
        return cls(ring, coeffs, data["order"], data.get("name", ""))


def universal_log(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    ring = lazard_ring(order)
    coeffs = {(1,): ring.one()}
    for k in range(1, order):
        coeffs[(k + 1,)] = ring.gen(f"m{k}")
    return TruncatedSeries(ring, ("u",), order, coeffs)


@functools.lru_cache(maxsize=None)
def universal_fgl(order: int = DEFAULT_ORDER) -> FormalGroupLaw:
    """The universal formal group law over ``Q[m1..m_{order-1}]``.

    >>> str(universal_fgl(2).a(1, 1))
    '-2*m1'
    """
    if order < 2:
        raise ValueError(f"truncation order must be >= 2, got {order}")
    log = universal_log(order)
    exp = series_reverse(log)
    ring = log.ring
    lu = log.embed(UV)
    lv = series_substitute(log, {"u": TruncatedSeries.variable("v", ring, UV, order)})
    F = series_substitute(exp, {"u": lu + lv})
    return FormalGroupLaw.from_series(F, name="universal")


def builtin_fgl(kind: str, order: int = DEFAULT_ORDER) -> FormalGroupLaw:
    """``additive`` (u+v over Z) or ``multiplicative`` (u+v-beta*uv over Z[beta^+-1])."""
    if kind == "additive":
        return FormalGroupLaw.from_aij(integer_ring(), {}, order, name="additive")
    if kind == "multiplicative":
        ring = laurent_beta_ring()
        table = {(1, 1): -ring.gen("beta")} if order >= 2 else {}
        return FormalGroupLaw.from_aij(ring, table, order, name="multiplicative")
    raise ValueError(f"unknown built-in formal group law {kind!r}")


@dataclass
class AxiomResult:
    passed: bool
    monomial: tuple[int, ...] | None = None
    variables: tuple[str, ...] = ()

    def describe(self) -> str:
        if self.passed:
            return "pass"
        mono = "*".join(f"{n}^{k}" for n, k in zip(self.variables, self.monomial) if k) or "1"
        return f"fail at {mono}"


@dataclass
class AxiomReport:
    unitality: AxiomResult
    commutativity: AxiomResult
    associativity: AxiomResult
    order: int = 0

    @property
    def passed(self) -> bool:
        return self.unitality.passed and self.commutativity.passed and self.associativity.passed

    def rows(self):
        return [
            {"axiom": name, "pass": r.passed, "witness": None if r.passed else r.describe()}
            for name, r in (
                ("unitality", self.unitality),
                ("commutativity", self.commutativity),
                ("associativity", self.associativity),
            )
        ]


def _first_difference(a: TruncatedSeries, b: TruncatedSeries) -> AxiomResult:
    diff = a - b
    if diff.is_zero():
        return AxiomResult(True)
    # lowest total degree first, then lexicographically largest exponent
    first = min(diff.coeffs, key=lambda e: (sum(e), tuple(-k for k in e)))
    return AxiomResult(False, first, diff.vars)


def check_fgl_axioms(F: FormalGroupLaw) -> AxiomReport:
    ring, N = F.ring, F.order
    u = TruncatedSeries.variable("u", ring, ("u",), N)
    zero_u = TruncatedSeries.zero(ring, ("u",), N)
    unit_left = _first_difference(F(u, zero_u), u)
    unit_right = _first_difference(F(zero_u, u), u)
    unitality = unit_left if not unit_left.passed else unit_right

    U = TruncatedSeries.variable("u", ring, UV, N)
    V = TruncatedSeries.variable("v", ring, UV, N)
    commutativity = _first_difference(F(U, V), F(V, U))

    u3, v3, w3 = (TruncatedSeries.variable(x, ring, UVW, N) for x in UVW)
    associativity = _first_difference(F(F(u3, v3), w3), F(u3, F(v3, w3)))
    return AxiomReport(unitality, commutativity, associativity, N)


@dataclass
class RingMap:
    """Ring homomorphism given by images of the source variables."""

    images: dict[str, Poly]
    target: PolyRing

    def __post_init__(self):
        for name, img in self.images.items():
            if not isinstance(img, Poly):
                self.images[name] = self.target.const(img)
            elif img.ring != self.target:
                raise ValueError(f"image of {name} lies in {img.ring}, not {self.target}")

    def __call__(self, p: Poly) -> Poly:
        return p.substitute(self.images, self.target)

    def then(self, other: RingMap) -> RingMap:
        """The composite ``other o self``."""
        return RingMap({k: other(v) for k, v in self.images.items()}, other.target)


def additive_map(order: int = DEFAULT_ORDER) -> RingMap:
    """``m_k -> 0``: the ordinary (Chow) specialization."""
    target = integer_ring()
    return RingMap({f"m{k}": target.zero() for k in range(1, order)}, target)


def multiplicative_map(order: int = DEFAULT_ORDER) -> RingMap:
    """``m_k -> beta^k/(k+1)``: log becomes ``-log(1 - beta u)/beta``."""
    target = laurent_beta_ring()
    beta = target.gen("beta")
    return RingMap({f"m{k}": (beta**k).scale(Fraction(1, k + 1)) for k in range(1, order)}, target)


def specialize(x, phi: RingMap, verify: bool = True):
    """Push a formal group law, Lazard element or polynomial along ``phi``.

    For a formal group law the image is re-checked against the axioms
    unless ``verify`` is false.
    """
    if isinstance(x, FormalGroupLaw):
        G = FormalGroupLaw.from_series(x.series().map_coefficients(phi, phi.target), name=x.name)
        if verify:
            report = check_fgl_axioms(G)
            if not report.passed:
                raise ValueError(f"specialized law violates the axioms: {report.rows()}")
        return G
    if isinstance(x, LazardElement):
        return phi(x.value)
    if isinstance(x, Poly):
        return phi(x)
    raise TypeError(f"cannot specialize {type(x).__name__}")


def formal_inverse(F: FormalGroupLaw) -> TruncatedSeries:
    """The series ``i(u)`` with ``F(u, i(u)) = 0``."""
    ring, N = F.ring, F.order
    u = TruncatedSeries.variable("u", ring, ("u",), N)
    inv = -u
    for _ in range(1, N):
        inv = inv - F(u, inv)
    return inv


def n_series(F: FormalGroupLaw, n: int) -> TruncatedSeries:
    """``[n]_F(u)``, the n-fold formal sum of u with itself."""
    ring, N = F.ring, F.order
    u = TruncatedSeries.variable("u", ring, ("u",), N)
    acc = TruncatedSeries.zero(ring, ("u",), N)
    for _ in range(abs(n)):
        acc = F(acc, u)
    if n < 0:
        acc = series_substitute(formal_inverse(F), {"u": acc})
    return acc


@dataclass(frozen=True)
class LazardElement:
    """An element of the rationalized Lazard ring, fully expanded in the m's."""

    value: Poly = field()

    @classmethod
    def m(cls, k: int, order: int | None = None) -> LazardElement:
        ring = lazard_ring(max(order or DEFAULT_ORDER, k + 1))
        return cls(ring.gen(f"m{k}"))

    @classmethod
    def aij(cls, i: int, j: int, order: int | None = None) -> LazardElement:
        N = max(order or 0, i + j)
        return cls(universal_fgl(N).a(i, j))

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER) -> LazardElement:
        return cls(lazard_ring(order).const(c))

    @property
    def ring(self) -> PolyRing:
        return self.value.ring

    @property
    def degree(self) -> int:
        """Cohomological degree (``deg m_k = -k``)."""
        return self.value.degree

    @property
    def homological_degree(self) -> int:
        return -self.value.degree

    def _align(self, other):
        if isinstance(other, LazardElement):
            a, b = _common_ring(self.value, other.value)
            return a, b
        return self.value, other

    def __add__(self, other):
        a, b = self._align(other)
        return LazardElement(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._align(other)
        return LazardElement(a - b)

    def __rsub__(self, other):
        return LazardElement(other - self.value)

    def __neg__(self):
        return LazardElement(-self.value)

    def __mul__(self, other):
        a, b = self._align(other)
        return LazardElement(a * b)

    __rmul__ = __mul__

    def __pow__(self, n):
        return LazardElement(self.value**n)

    def __eq__(self, other):
        if not isinstance(other, LazardElement):
            return NotImplemented
        return lazard_eq(self, other)

    def __hash__(self):
        return hash(frozenset(_named_terms(self.value)))

    def __str__(self):
        return str(self.value)

    def to_json(self) -> dict:
        d = self.value.to_json()
        d["kind"] = "lazard_element"
        return d


def _named_terms(p: Poly):
    names = p.ring.names
    for e, c in p.terms.items():
        yield tuple((n, k) for n, k in zip(names, e) if k), c


def _common_ring(a: Poly, b: Poly):
    if a.ring == b.ring:
        return a, b
    na, nb = a.ring.names, b.ring.names
    if na == nb[: len(na)]:
        return a.to_ring(b.ring), b
    if nb == na[: len(nb)]:
        return a, b.to_ring(a.ring)
    raise ValueError(f"incompatible Lazard rings: {a.ring} vs {b.ring}")


def lazard_eq(e1: LazardElement, e2: LazardElement) -> bool:
    """Equality of normal forms.

    Elements over different truncations compare in the larger ring.
    """
    a, b = _common_ring(e1.value, e2.value)
    return a == b
