"""Complete intersections in products of projective spaces and their Chern numbers.

A leaf variety is cut out of ``P^n1 x ... x P^nk`` by hypersurfaces of given
multidegrees; products and disjoint unions are formal combinators on top.
Smoothness of the generic complete intersection is assumed, not checked.

Chern numbers of leaves come from the Chow ring of the ambient (Euler
sequence plus adjunction).  Chern numbers of products are assembled from
the factors by the Kuenneth pairing, which keeps large products cheap;
:func:`tangent_chern` still builds the Whitney product in the product ambient
for direct cross-checks.
"""

from __future__ import annotations

import functools
import json
import os
from dataclasses import dataclass, field
from importlib import resources
from math import comb
from typing import IO, Iterable, Sequence

from .algebra import GradedVariable, Poly, PolyRing

__all__ = [
    "Ambient",
    "ChowClass",
    "ChernData",
    "Variety",
    "CompleteIntersection",
    "Product",
    "DisjointUnion",
    "projective_space",
    "hypersurface",
    "partitions",
    "chow_degree",
    "tangent_chern",
    "chern_number",
    "chern_numbers",
    "newton_sd",
    "s_number",
    "s_number_newton",
    "s_number_virtual",
    "CatalogError",
    "load_catalog",
    "parse_catalog",
    "standard_catalog",
    "standard_catalog_descriptors",
    "variety_to_json",
]


@dataclass(frozen=True)
class Ambient:
    dims: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        if any(n < 0 for n in self.dims):
            raise ValueError(f"projective-space dimensions must be >= 0, got {self.dims}")

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def nfactors(self) -> int:
        return len(self.dims)

    def __mul__(self, other: Ambient) -> Ambient:
        return Ambient(self.dims + other.dims)

    def chow_ring(self) -> PolyRing:
        return _chow_ring(self.nfactors)

    def top_exponent(self) -> tuple[int, ...]:
        return self.dims

    def __str__(self):
        return " x ".join(f"P{n}" for n in self.dims) or "pt"


@functools.lru_cache(maxsize=None)
def _chow_ring(k: int) -> PolyRing:
    return PolyRing([GradedVariable(f"h{i}", 1) for i in range(1, k + 1)])


class ChowClass:
    """Element of ``Z[h1..hk]/(h_i^(n_i+1))``; the reduction is applied eagerly."""

    __slots__ = ("ambient", "poly")

    def __init__(self, ambient: Ambient, poly: Poly | dict):
        self.ambient = ambient
        ring = ambient.chow_ring()
        if isinstance(poly, Poly):
            if poly.ring != ring:
                poly = poly.to_ring(ring)
            terms = poly.terms
        else:
            terms = poly
        dims = ambient.dims
        self.poly = Poly._raw(
            ring,
            {e: c for e, c in terms.items() if c and all(k <= n for k, n in zip(e, dims))},
        )

    @classmethod
    def one(cls, ambient: Ambient) -> ChowClass:
        return cls(ambient, {(0,) * ambient.nfactors: 1})

    @classmethod
    def hyperplane(cls, ambient: Ambient, i: int) -> ChowClass:
        """Pullback of the hyperplane class of the i-th factor (0-based)."""
        e = [0] * ambient.nfactors
        e[i] = 1
        return cls(ambient, {tuple(e): 1})

    @classmethod
    def divisor(cls, ambient: Ambient, multidegree: Sequence[int]) -> ChowClass:
        terms = {}
        for i, a in enumerate(multidegree):
            if a:
                e = [0] * ambient.nfactors
                e[i] = 1
                terms[tuple(e)] = a
        return cls(ambient, terms)

    def _check(self, other):
        if other.ambient != self.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def __add__(self, other):
        if isinstance(other, int):
            other = ChowClass.one(self.ambient) * other
        self._check(other)
        return ChowClass(self.ambient, self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return ChowClass(self.ambient, -self.poly)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ChowClass(self.ambient, self.poly.scale(other))
        self._check(other)
        dims = self.ambient.dims
        out: dict = {}
        for ea, ca in self.poly.terms.items():
            for eb, cb in other.poly.terms.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                if any(k > n for k, n in zip(e, dims)):
                    continue
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return ChowClass(self.ambient, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = ChowClass.one(self.ambient)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.ambient == other.ambient and self.poly == other.poly

    __hash__ = None

    def part(self, degree: int) -> ChowClass:
        """Homogeneous component of the given codimension."""
        return ChowClass(self.ambient, {e: c for e, c in self.poly.terms.items() if sum(e) == degree})

    def pullback(self, ambient: Ambient, offset: int) -> ChowClass:
        """Pull back along the projection onto factors ``offset .. offset+k-1``."""
        k = self.ambient.nfactors
        if ambient.dims[offset : offset + k] != self.ambient.dims:
            raise ValueError(f"{self.ambient} is not a factor of {ambient} at {offset}")
        terms = {}
        for e, c in self.poly.terms.items():
            f = [0] * ambient.nfactors
            f[offset : offset + k] = e
            terms[tuple(f)] = c
        return ChowClass(ambient, terms)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"ChowClass({self.poly} on {self.ambient})"


def chow_degree(c: ChowClass) -> int:
    """Coefficient of the top monomial ``h1^n1 ... hk^nk``."""
    return c.poly.coefficient(c.ambient.top_exponent())


def _pair(a: ChowClass, b: ChowClass) -> int:
    """``chow_degree(a * b)`` without forming the full product."""
    top = a.ambient.top_exponent()
    bt = b.poly.terms
    total = 0
    for e, c in a.poly.terms.items():
        f = tuple([t - k for t, k in zip(top, e)])
        d = bt.get(f)
        if d:
            total += c * d
    return total


@dataclass(frozen=True)
class ChernData:
    """Total Chern class of the tangent bundle and the fundamental class, in the ambient."""

    total: ChowClass
    fundamental: ChowClass
    dim: int

    def c(self, k: int) -> ChowClass:
        return self.total.part(k)


def partitions(d: int, largest: int | None = None) -> list[tuple[int, ...]]:
    """Partitions of ``d`` in decreasing lexicographic order: (d), (d-1, 1), ..."""
    if largest is None:
        largest = d
    if d == 0:
        return [()]
    out = []
    for first in range(min(d, largest), 0, -1):
        for rest in partitions(d - first, first):
            out.append((first,) + rest)
    return out


class Variety:
    """Base class for catalog varieties; subclasses are frozen dataclasses."""

    label: str

    @property
    def dim(self) -> int:
        raise NotImplementedError

    def leaves(self) -> list[CompleteIntersection]:
        """Disjoint components, each flattened to a single complete intersection."""
        raise NotImplementedError

    def __mul__(self, other: Variety) -> Product:
        return Product((self, other))

    def __add__(self, other: Variety) -> DisjointUnion:
        return DisjointUnion((self, other))

    def name(self) -> str:
        return self.label or self.describe()


@dataclass(frozen=True)
class CompleteIntersection(Variety):
    ambient: Ambient
    cuts: tuple[tuple[int, ...], ...] = ()
    label: str = field(default="", compare=False)

    def __post_init__(self):
        amb = self.ambient if isinstance(self.ambient, Ambient) else Ambient(tuple(self.ambient))
        object.__setattr__(self, "ambient", amb)
        cuts = tuple(tuple(c) for c in self.cuts)
        object.__setattr__(self, "cuts", cuts)
        for c in cuts:
            if len(c) != amb.nfactors:
                raise ValueError(f"multidegree {c} does not match ambient {amb}")
            if any(a < 0 for a in c):
                raise ValueError(f"multidegree entries must be >= 0, got {c}")
            if not any(a > 0 for a in c):
                raise ValueError(f"multidegree {c} has no positive entry")
        if amb.dim - len(cuts) < 0:
            raise ValueError(f"negative dimension: {len(cuts)} cuts in {amb}")

    @property
    def dim(self) -> int:
        return self.ambient.dim - len(self.cuts)

    def leaves(self):
        return [self]

    def describe(self) -> str:
        if not self.cuts:
            return str(self.ambient)
        return f"V{list(map(list, self.cuts))} in {self.ambient}"

    def product(self, other: CompleteIntersection) -> CompleteIntersection:
        k, l = self.ambient.nfactors, other.ambient.nfactors
        cuts = [c + (0,) * l for c in self.cuts] + [(0,) * k + c for c in other.cuts]
        return CompleteIntersection(self.ambient * other.ambient, tuple(cuts))


@dataclass(frozen=True)
class Product(Variety):
    factors: tuple[Variety, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("empty product")

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    def leaves(self):
        out = [CompleteIntersection(Ambient(), ())]
        for f in self.factors:
            out = [a.product(b) for a in out for b in f.leaves()]
        return out

    def describe(self) -> str:
        return " x ".join(f"({f.name()})" for f in self.factors)


@dataclass(frozen=True)
class DisjointUnion(Variety):
    parts: tuple[Variety, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("empty disjoint union")

    @property
    def dim(self) -> int:
        dims = {p.dim for p in self.parts}
        if len(dims) != 1:
            raise ValueError(f"disjoint union of mixed dimensions {sorted(dims)}")
        return dims.pop()

    def leaves(self):
        return [leaf for p in self.parts for leaf in p.leaves()]

    def describe(self) -> str:
        return " + ".join(f"({p.name()})" for p in self.parts)


def projective_space(n: int) -> CompleteIntersection:
    return CompleteIntersection(Ambient((n,)), (), label=f"P{n}")


def hypersurface(degree: int, n: int, label: str = "") -> CompleteIntersection:
    """Degree-``degree`` hypersurface in ``P^n``."""
    return CompleteIntersection(Ambient((n,)), ((degree,),), label=label)


def _leaf_chern(V: CompleteIntersection) -> ChernData:
    amb = V.ambient
    total = ChowClass.one(amb)
    for i, n in enumerate(amb.dims):
        total = total * (1 + ChowClass.hyperplane(amb, i)) ** (n + 1)
    fundamental = ChowClass.one(amb)
    for cut in V.cuts:
        D = ChowClass.divisor(amb, cut)
        # 1/(1+D) as the finite geometric series; D is nilpotent
        inv = ChowClass.one(amb)
        power = ChowClass.one(amb)
        for _ in range(amb.dim):
            power = power * (-D)
            if not power.poly:
                break
            inv = inv + power
        total = total * inv
        fundamental = fundamental * D
    return ChernData(total, fundamental, V.dim)


def tangent_chern(V: Variety) -> ChernData:
    """Total tangent Chern class and fundamental class of a leaf or product.

    Products use the Whitney formula on pulled-back factor data.  For a
    disjoint union apply this to each part.
    """
    if isinstance(V, CompleteIntersection):
        return _leaf_chern(V)
    if isinstance(V, Product):
        datas = [tangent_chern(f) for f in V.factors]
        amb = Ambient()
        for d in datas:
            amb = amb * d.total.ambient
        total = ChowClass.one(amb)
        fundamental = ChowClass.one(amb)
        offset = 0
        for d in datas:
            total = total * d.total.pullback(amb, offset)
            fundamental = fundamental * d.fundamental.pullback(amb, offset)
            offset += d.total.ambient.nfactors
        return ChernData(total, fundamental, V.dim)
    raise TypeError("tangent_chern takes a leaf or product; map it over the parts of a disjoint union")


def _direct_chern_number(data: ChernData, partition: Sequence[int]) -> int:
    cls = data.fundamental
    for k in partition:
        cls = cls * data.c(k)
    return chow_degree(cls)


def _normalize_partition(partition: Iterable[int], d: int) -> tuple[int, ...]:
    p = tuple(sorted((int(k) for k in partition), reverse=True))
    if any(k < 1 for k in p):
        raise ValueError(f"partition entries must be >= 1, got {p}")
    if sum(p) != d:
        raise ValueError(f"partition {p} does not sum to dim {d}")
    return p


def _kunneth(a: dict, da: int, b: dict, db: int) -> dict:
    """Chern-number table of a product from the factors' tables."""
    out = {}
    for mu in partitions(da + db):
        total = 0

        def walk(idx, left, right):
            nonlocal total
            if idx == len(mu):
                if sum(left) == da:
                    total += a[_sorted(left)] * b[_sorted(right)]
                return
            k = mu[idx]
            used = sum(left)
            for i in range(max(0, k - db), min(k, da - used) + 1):
                walk(idx + 1, left + ((i,) if i else ()), right + ((k - i,) if k - i else ()))

        walk(0, (), ())
        out[mu] = total
    return out


def _sorted(p):
    return tuple(sorted(p, reverse=True))


@functools.lru_cache(maxsize=None)
def chern_numbers(V: Variety) -> dict[tuple[int, ...], int]:
    """All Chern numbers of ``V``, keyed by partition of ``dim V``."""
    if isinstance(V, CompleteIntersection):
        data = _leaf_chern(V)
        return {mu: _direct_chern_number(data, mu) for mu in partitions(V.dim)}
    if isinstance(V, Product):
        table, d = {(): 1}, 0
        for f in V.factors:
            table = _kunneth(table, d, chern_numbers(f), f.dim)
            d += f.dim
        return table
    if isinstance(V, DisjointUnion):
        d = V.dim
        out = {mu: 0 for mu in partitions(d)}
        for p in V.parts:
            for mu, n in chern_numbers(p).items():
                out[mu] += n
        return out
    raise TypeError(f"not a variety: {V!r}")


def chern_number(V: Variety, partition: Sequence[int], method: str = "kunneth") -> int:
    """``deg(prod_i c_{partition_i}(T_V) . [V])``.

    ``method="direct"`` evaluates products in the product ambient through
    :func:`tangent_chern` instead of the Kuenneth pairing.
    """
    mu = _normalize_partition(partition, V.dim)
    if method == "kunneth":
        return chern_numbers(V)[mu]
    if method == "direct":
        if isinstance(V, DisjointUnion):
            return sum(chern_number(p, mu, "direct") for p in V.parts)
        return _direct_chern_number(tangent_chern(V), mu)
    raise ValueError(f"unknown method {method!r}")


@functools.lru_cache(maxsize=None)
def chern_variable_ring(d: int) -> PolyRing:
    return PolyRing([GradedVariable(f"c{i}", i) for i in range(1, d + 1)])


@functools.lru_cache(maxsize=None)
def newton_sd(d: int) -> Poly:
    """Power sum ``sum xi^d`` of the Chern roots, written in ``c1..cd``.

    >>> str(newton_sd(3))
    'c1^3 - 3*c1*c2 + 3*c3'
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    ring = chern_variable_ring(d)
    c = [ring.one()] + [ring.gen(f"c{i}") for i in range(1, d + 1)]
    s = [None]
    for k in range(1, d + 1):
        acc = c[k] * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + c[i] * s[k - i].to_ring(ring) * (-1) ** (i - 1)
        s.append(acc)
    return s[d]


def _partition_of(exps: Sequence[int]) -> tuple[int, ...]:
    p = []
    for i, k in enumerate(exps, start=1):
        p += [i] * k
    return _sorted(p)


def s_number_newton(V: Variety) -> int:
    """s_d via the Newton polynomial evaluated on Chern numbers."""
    d = V.dim
    if d == 0:
        raise ValueError("s_d needs positive dimension")
    table = chern_numbers(V)
    return sum(c * table[_partition_of(e)] for e, c in newton_sd(d).terms.items())


def s_number_virtual(V: Variety) -> int:
    """s_d from the virtual Chern roots: ambient roots minus the cut divisors."""
    d = V.dim
    if d == 0:
        raise ValueError("s_d needs positive dimension")
    total = 0
    for leaf in V.leaves():
        amb = leaf.ambient
        ps = ChowClass(amb, {})
        for i, n in enumerate(amb.dims):
            ps = ps + ChowClass.hyperplane(amb, i) ** d * (n + 1)
        fundamental = ChowClass.one(amb)
        for cut in leaf.cuts:
            D = ChowClass.divisor(amb, cut)
            ps = ps - D**d
            fundamental = fundamental * D
        total += _pair(ps, fundamental)
    return total


def s_number(V: Variety) -> int:
    """s_d(V), d = dim V; both routes are computed and must agree."""
    a = s_number_newton(V)
    b = s_number_virtual(V)
    if a != b:
        raise AssertionError(f"s_d routes disagree for {V.name()}: newton {a}, virtual roots {b}")
    return a


# -- catalog files -------------------------------------------------------------


class CatalogError(ValueError):
    pass


_NAMES = {2: "quadric", 3: "cubic", 4: "quartic", 5: "quintic"}


def standard_catalog_descriptors() -> list[dict]:
    """Descriptors of the shipped catalog: projective spaces, hypersurfaces,
    (1,1) Milnor hypersurfaces and their binary products up to dimension 8."""
    base = []
    for n in range(1, 9):
        base.append(({"label": f"P{n}", "ambient": [n], "cuts": []}, n))
    for n in range(1, 8):
        for a in range(2, 6):
            base.append(({"label": f"{_NAMES[a]}{n + 1}", "ambient": [n + 1], "cuts": [[a]]}, n))
    for m in range(1, 9):
        for n in range(m, 10 - m):
            base.append(({"label": f"H{m}_{n}", "ambient": [m, n], "cuts": [[1, 1]]}, m + n - 1))
    out = [d for d, _ in base]
    for i, (a, da) in enumerate(base):
        for b, db in base[i:]:
            if da + db <= 8:
                out.append({"label": f"{a['label']}x{b['label']}", "product": [a["label"], b["label"]]})
    return out


def parse_catalog(data) -> list[Variety]:
    """Build varieties from decoded catalog JSON.

    Entries are leaf descriptors ``{ambient, cuts, label}`` or combinator
    nodes ``{product: [...]}`` / ``{union: [...]}`` whose items are inline
    descriptors or labels of earlier entries.
    """
    if not isinstance(data, list):
        raise CatalogError("catalog must be a JSON list")
    by_label: dict[str, Variety] = {}
    out = []

    def build(node, where):
        if isinstance(node, str):
            if node not in by_label:
                raise CatalogError(f"{where}: unknown label {node!r}")
            return by_label[node]
        if not isinstance(node, dict):
            raise CatalogError(f"{where}: expected an object or label, got {node!r}")
        label = node.get("label", "")
        try:
            if "product" in node:
                return Product(tuple(build(x, where) for x in node["product"]), label=label)
            if "union" in node:
                return DisjointUnion(tuple(build(x, where) for x in node["union"]), label=label)
            if "ambient" in node:
                return CompleteIntersection(
                    Ambient(tuple(int(n) for n in node["ambient"])),
                    tuple(tuple(int(a) for a in c) for c in node.get("cuts", [])),
                    label=label,
                )
        except (TypeError, ValueError) as exc:
            raise CatalogError(f"{where}: {exc}") from None
        raise CatalogError(f"{where}: descriptor needs 'ambient', 'product' or 'union'")

    for i, node in enumerate(data):
        V = build(node, f"entry {i}")
        if V.label:
            if V.label in by_label:
                raise CatalogError(f"entry {i}: duplicate label {V.label!r}")
            by_label[V.label] = V
        out.append(V)
    return out


def load_catalog(source: str | os.PathLike | IO[str]) -> list[Variety]:
    """Read a catalog from a path or an open text stream."""
    if hasattr(source, "read"):
        text = source.read()
        where = getattr(source, "name", "<stream>")
    else:
        where = str(source)
        with open(source) as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{where}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_catalog(data)


@functools.lru_cache(maxsize=None)
def _standard():
    with resources.files("cobordism").joinpath("data/std.json").open() as fh:
        return tuple(load_catalog(fh))


def standard_catalog() -> list[Variety]:
    return list(_standard())


def variety_to_json(V: Variety) -> dict:
    if isinstance(V, CompleteIntersection):
        d = {"ambient": list(V.ambient.dims), "cuts": [list(c) for c in V.cuts]}
    elif isinstance(V, Product):
        d = {"product": [variety_to_json(f) for f in V.factors]}
    else:
        d = {"union": [variety_to_json(p) for p in V.parts]}
    if V.label:
        d = {"label": V.label, **d}
    return d
