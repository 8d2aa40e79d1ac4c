"""Exact graded polynomials and truncated multivariate power series.

Coefficients are ``int`` or :class:`fractions.Fraction`; nothing here ever
touches a float.  Polynomials carry their ring (an ordered tuple of
:class:`GradedVariable`), and every binary operation insists both operands
live in the same ring.

Invertible ("Laurent") variables such as ``beta`` are modelled by allowing
negative exponents on variables declared ``invertible=True``; the reduction
``beta * beta^-1 -> 1`` then happens for free when exponents are added.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

__all__ = [
    "GradedVariable",
    "PolyRing",
    "Poly",
    "TruncatedSeries",
    "series_substitute",
    "series_reverse",
    "format_coefficient",
]


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def format_coefficient(c) -> str:
    c = _normalize(c)
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


@dataclass(frozen=True)
class GradedVariable:
    name: str
    degree: int = 1
    invertible: bool = False


class PolyRing:
    """An ordered list of graded variables over Q."""

    __slots__ = ("variables", "_index", "_hash")

    def __init__(self, variables: Iterable[GradedVariable | str]):
        vs = tuple(v if isinstance(v, GradedVariable) else GradedVariable(v) for v in variables)
        names = [v.name for v in vs]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in ring declaration: {names}")
        self.variables = vs
        self._index = {v.name: i for i, v in enumerate(vs)}
        self._hash = hash(vs)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @property
    def ngens(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"variable {name!r} not in {self}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.variables == other.variables

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.variables:
            return "Q"
        parts = []
        for v in self.variables:
            parts.append(f"{v.name}^+-1" if v.invertible else v.name)
        return "Q[" + ", ".join(parts) + "]"

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return Poly(self, {(0,) * self.ngens: 1})

    def const(self, c) -> Poly:
        return Poly(self, {(0,) * self.ngens: c})

    def gen(self, name: str, power: int = 1) -> Poly:
        i = self.index(name)
        if power < 0 and not self.variables[i].invertible:
            raise ValueError(f"{name} is not invertible in {self}")
        e = [0] * self.ngens
        e[i] = power
        return Poly(self, {tuple(e): 1})

    def gens(self) -> tuple[Poly, ...]:
        return tuple(self.gen(v.name) for v in self.variables)

    def monomial_degree(self, exps: Sequence[int]) -> int:
        return sum(e * v.degree for e, v in zip(exps, self.variables))


def _check_exps(ring: PolyRing, exps):
    for e, v in zip(exps, ring.variables):
        if e < 0 and not v.invertible:
            raise ValueError(f"negative power of non-invertible variable {v.name} in {ring}")


def _sort_key(exps):
    # total degree, then reverse lexicographic on the declared variable order
    return (sum(exps), tuple(-e for e in reversed(exps)))


class Poly:
    """Immutable polynomial: a map exponent-tuple -> nonzero exact coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, object]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Rational)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Poly:
        if c == 0:
            return Poly._raw(self.ring, {})
        return Poly._raw(self.ring, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly._raw(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, (int, Rational)):
            return self.scale(Fraction(1) / Fraction(c))
        if isinstance(c, Poly) and c.is_monomial():
            return self * c.inverse()
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> Poly:
        """Inverse of a monomial whose variables are all invertible."""
        if not self.is_monomial():
            raise ValueError(f"only monomials can be inverted, got {self}")
        (e, c), = self.terms.items()
        inv = tuple(-x for x in e)
        _check_exps(self.ring, inv)
        return Poly._raw(self.ring, {inv: _normalize(1 / Fraction(c))})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps: Sequence[int]):
        return _normalize(self.terms.get(tuple(exps), 0))

    def constant_term(self):
        return self.coefficient((0,) * self.ring.ngens)

    def degrees(self) -> set[int]:
        """Set of weighted degrees of the monomials present."""
        return {self.ring.monomial_degree(e) for e in self.terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        if len(ds) != 1:
            return False
        return degree is None or degree in ds

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError(f"{self} is not a nonzero homogeneous polynomial")
        return ds.pop()

    def substitute(self, images: Mapping[str, Poly], target: PolyRing) -> Poly:
        """Apply the ring map sending each variable name to ``images[name]``."""
        out = target.zero()
        names = self.ring.names
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                name = names[i]
                if name not in images:
                    raise KeyError(f"no image assigned to variable {name!r}")
                img = images[name]
                if img.ring != target:
                    raise ValueError(f"image of {name} lies in {img.ring}, expected {target}")
                cache[key] = img ** k
            return cache[key]

        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def to_ring(self, ring: PolyRing) -> Poly:
        """Re-express in ``ring``, matching variables by name."""
        if ring == self.ring:
            return self
        idx = [ring.index(n) for n in self.ring.names]
        out = {}
        for e, c in self.terms.items():
            f = [0] * ring.ngens
            for i, k in zip(idx, e):
                f[i] = k
            out[tuple(f)] = c
        for e in out:
            _check_exps(ring, e)
        return Poly._raw(ring, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _sort_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            c = _normalize(c)
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k
            )
            neg = c < 0
            a = -c if neg else c
            if mono:
                coeff = "" if a == 1 else format_coefficient(a) + "*"
                body = coeff + mono
            else:
                body = format_coefficient(a)
            pieces.append(("-" if neg else "+", body))
        sign, body = pieces[0]
        s = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Poly({self}, ring={self.ring!r})"

    def to_json(self) -> dict:
        return {
            "ring": ring_to_json(self.ring),
            "terms": [
                {"exponents": list(e), "coefficient": fraction_to_json(c)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> Poly:
        ring = ring_from_json(data["ring"])
        return cls(ring, {tuple(t["exponents"]): fraction_from_json(t["coefficient"]) for t in data["terms"]})


def fraction_to_json(c) -> dict:
    c = Fraction(c)
    return {"num": str(c.numerator), "den": str(c.denominator)}


def fraction_from_json(d: dict):
    return _normalize(Fraction(int(d["num"]), int(d["den"])))


def ring_to_json(ring: PolyRing) -> list:
    return [{"name": v.name, "degree": v.degree, "invertible": v.invertible} for v in ring.variables]


def ring_from_json(data: list) -> PolyRing:
    return PolyRing(GradedVariable(d["name"], d["degree"], d.get("invertible", False)) for d in data)


class TruncatedSeries:
    """Power series in formal variables (weight 1 each) with Poly coefficients.

    Everything of total formal degree above ``order`` is discarded.
    """

    __slots__ = ("ring", "vars", "order", "coeffs")

    def __init__(self, ring: PolyRing, vars: Sequence[str], order: int, coeffs: Mapping[tuple, Poly]):
        self.ring = ring
        self.vars = tuple(vars)
        self.order = order
        out = {}
        for e, c in coeffs.items():
            e = tuple(e)
            if len(e) != len(self.vars):
                raise ValueError(f"exponent {e} does not match formal variables {self.vars}")
            if sum(e) > order:
                continue
            if not isinstance(c, Poly):
                c = ring.const(c)
            elif c.ring != ring:
                raise ValueError(f"ring mismatch: {c.ring} vs {ring}")
            if c:
                out[e] = c
        self.coeffs = out

    @classmethod
    def _raw(cls, ring, vars, order, coeffs):
        s = object.__new__(cls)
        s.ring, s.vars, s.order, s.coeffs = ring, vars, order, coeffs
        return s

    @classmethod
    def zero(cls, ring, vars, order):
        return cls._raw(ring, tuple(vars), order, {})

    @classmethod
    def constant(cls, c, ring, vars, order):
        return cls(ring, vars, order, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, name, ring, vars, order):
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(ring, vars, order, {tuple(e): ring.one()})

    def _check(self, other: TruncatedSeries):
        if self.vars != other.vars:
            raise ValueError(f"formal variable mismatch: {self.vars} vs {other.vars}")
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Rational, Poly)):
            return TruncatedSeries.constant(other, self.ring, self.vars, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        out = {e: c for e, c in self.coeffs.items() if sum(e) <= order}
        for e, c in other.coeffs.items():
            if sum(e) > order:
                continue
            s = out[e] + c if e in out else c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return TruncatedSeries._raw(self.ring, self.vars, order, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(self.ring, self.vars, self.order, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> TruncatedSeries:
        """Multiply every coefficient by a scalar or coefficient-ring element."""
        if isinstance(c, Poly) and c.ring != self.ring:
            raise ValueError(f"ring mismatch: {c.ring} vs {self.ring}")
        out = {}
        for e, v in self.coeffs.items():
            p = v * c
            if p:
                out[e] = p
        return TruncatedSeries._raw(self.ring, self.vars, self.order, out)

    def __mul__(self, other):
        if isinstance(other, (int, Rational, Poly)):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        order = min(self.order, other.order)
        buckets: dict[int, list] = {}
        for e, c in other.coeffs.items():
            buckets.setdefault(sum(e), []).append((e, c))
        out: dict = {}
        for ea, ca in self.coeffs.items():
            da = sum(ea)
            for db in range(0, order - da + 1):
                for eb, cb in buckets.get(db, ()):
                    e = tuple([x + y for x, y in zip(ea, eb)])
                    p = ca * cb
                    if e in out:
                        p = out[e] + p
                    if p:
                        out[e] = p
                    else:
                        out.pop(e, None)
        return TruncatedSeries._raw(self.ring, self.vars, order, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of series are not supported")
        result = TruncatedSeries.constant(1, self.ring, self.vars, self.order)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.vars != other.vars or self.ring != other.ring:
            return False
        order = min(self.order, other.order)
        a = {e: c for e, c in self.coeffs.items() if sum(e) <= order}
        b = {e: c for e, c in other.coeffs.items() if sum(e) <= order}
        return a == b

    __hash__ = None

    def coefficient(self, exps: Sequence[int]) -> Poly:
        return self.coeffs.get(tuple(exps), self.ring.zero())

    def constant_term(self) -> Poly:
        return self.coefficient((0,) * len(self.vars))

    def is_zero(self) -> bool:
        return not self.coeffs

    def truncate(self, order: int) -> TruncatedSeries:
        order = min(order, self.order)
        return TruncatedSeries._raw(
            self.ring, self.vars, order, {e: c for e, c in self.coeffs.items() if sum(e) <= order}
        )

    def reduce_exponents(self, bounds: Sequence[int]) -> TruncatedSeries:
        """Impose ``x_i^(bounds[i]+1) = 0`` for each formal variable."""
        return TruncatedSeries._raw(
            self.ring,
            self.vars,
            self.order,
            {e: c for e, c in self.coeffs.items() if all(k <= b for k, b in zip(e, bounds))},
        )

    def embed(self, vars: Sequence[str]) -> TruncatedSeries:
        """Re-express in a larger tuple of formal variables."""
        vars = tuple(vars)
        idx = [vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.coeffs.items():
            f = [0] * len(vars)
            for i, k in zip(idx, e):
                f[i] = k
            out[tuple(f)] = c
        return TruncatedSeries._raw(self.ring, vars, self.order, out)

    def map_coefficients(self, fn, ring: PolyRing | None = None) -> TruncatedSeries:
        ring = self.ring if ring is None else ring
        out = {}
        for e, c in self.coeffs.items():
            p = fn(c)
            if p:
                out[e] = p
        return TruncatedSeries._raw(ring, self.vars, self.order, out)

    def homogeneity_defects(self, weight: int) -> list[tuple]:
        """Exponents whose coefficient is not homogeneous of degree ``weight - |e|``."""
        return sorted(
            e for e, c in self.coeffs.items() if not c.is_homogeneous(weight - sum(e))
        )

    def sorted_terms(self):
        return sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), tuple(-k for k in t[0])))

    def __str__(self):
        if not self.coeffs:
            return f"O({self.order + 1})"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.vars, e) if k)
            cs = str(c)
            if not mono:
                parts.append(f"({cs})")
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts) + f" + O({self.order + 1})"

    def __repr__(self):
        return f"TruncatedSeries({self})"


def series_substitute(f: TruncatedSeries, subs) -> TruncatedSeries:
    """Compose: replace formal variables of ``f`` by series.

    ``subs`` is a mapping or a list of ``(name, series)`` pairs.  All
    substituted series must share one tuple of formal variables, which
    becomes the result's; variables of ``f`` left unsubstituted must occur
    there too and are mapped to themselves.
    """
    subs = dict(subs)
    if not subs:
        return f
    targets = list(subs.values())
    tvars, ring = targets[0].vars, targets[0].ring
    if ring != f.ring:
        raise ValueError(f"ring mismatch: {f.ring} vs {ring}")
    for name, s in subs.items():
        if name not in f.vars:
            raise ValueError(f"{name!r} is not a formal variable of the series {f.vars}")
        if s.vars != tvars or s.ring != ring:
            raise ValueError("substituted series must share formal variables and ring")
        if not s.constant_term().is_zero():
            raise ValueError(f"series substituted for {name!r} has a nonzero constant term")
    order = min([f.order] + [s.order for s in targets])
    images = []
    for name in f.vars:
        if name in subs:
            images.append(subs[name].truncate(order))
        elif name in tvars:
            images.append(TruncatedSeries.variable(name, ring, tvars, order))
        else:
            raise ValueError(f"formal variable {name!r} has no image among {tvars}")

    one = TruncatedSeries.constant(1, ring, tvars, order)
    powers = [[one] for _ in images]

    def power(i, k):
        p = powers[i]
        while len(p) <= k:
            p.append(p[-1] * images[i])
        return p[k]

    # Horner-style grouping: sum over the first variable with scalar
    # multiples of cached powers, then one product per remaining exponent.
    groups: dict[tuple, list] = {}
    for e, c in f.coeffs.items():
        if sum(e) <= order:
            groups.setdefault(e[1:], []).append((e[0] if e else 0, c))
    result = TruncatedSeries.zero(ring, tvars, order)
    for rest, items in sorted(groups.items()):
        inner = TruncatedSeries.zero(ring, tvars, order)
        for k, c in items:
            inner = inner + power(0, k).scale(c)
        for j, k in enumerate(rest, start=1):
            if k:
                inner = inner * power(j, k)
        result = result + inner
    return result


def series_reverse(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of a one-variable series ``u + O(u^2)``."""
    if len(f.vars) != 1:
        raise ValueError(f"series_reverse needs a single formal variable, got {f.vars}")
    if not f.constant_term().is_zero():
        raise ValueError("series has a nonzero constant term")
    if f.coefficient((1,)) != f.ring.one():
        raise ValueError(f"leading coefficient must be 1, got {f.coefficient((1,))}")
    (x,) = f.vars
    u = TruncatedSeries.variable(x, f.ring, f.vars, f.order)
    g = u
    # each step fixes one more order since f'(0) = 1
    for _ in range(1, f.order):
        g = g - (series_substitute(f, {x: g}) - u)
    return g
