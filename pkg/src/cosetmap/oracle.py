"""Brute-force ground truth for maps on small finite domains.

Elements of GF(p)^n are indexed lexicographically by coordinate tuple with the
first coordinate most significant; field elements GF(p^k) use the same rule on
their coordinate tuples, so field maps and vector-space maps share tables.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .cycletype import CycleType, ct_of_permutation
from .gf import FieldCtx, Poly

MAX_DOMAIN = 10 ** 6


def index_to_tuple(i: int, p: int, n: int) -> tuple[int, ...]:
    coords = []
    for j in range(n):
        coords.append(i // p ** (n - 1 - j) % p)
    return tuple(coords)


def tuple_to_index(t, p: int) -> int:
    n = len(t)
    return sum(c % p * p ** (n - 1 - j) for j, c in enumerate(t))


def add_index(i: int, j: int, p: int, n: int) -> int:
    a = index_to_tuple(i, p, n)
    b = index_to_tuple(j, p, n)
    return tuple_to_index(tuple((x + y) % p for x, y in zip(a, b)), p)


def sub_index(i: int, j: int, p: int, n: int) -> int:
    a = index_to_tuple(i, p, n)
    b = index_to_tuple(j, p, n)
    return tuple_to_index(tuple((x - y) % p for x, y in zip(a, b)), p)


@dataclass(frozen=True)
class MapTable:
    """A map on {0..n-1} given by its image sequence."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self):
        if self.n > MAX_DOMAIN:
            raise ValueError(f"domain size {self.n} exceeds the {MAX_DOMAIN} guard")
        if len(self.images) != self.n:
            raise ValueError("image list length does not match domain size")
        if any(not 0 <= v < self.n for v in self.images):
            raise ValueError("image out of range")

    def to_json(self) -> dict:
        return {"n": self.n, "images": list(self.images)}

    @classmethod
    def from_json(cls, obj) -> "MapTable":
        return cls(int(obj["n"]), tuple(int(v) for v in obj["images"]))

    @classmethod
    def from_csv(cls, text: str) -> "MapTable":
        pairs = {}
        for row in csv.reader(io.StringIO(text)):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 2:
                raise ValueError("CSV rows must be index pairs")
            pairs[int(row[0])] = int(row[1])
        n = len(pairs)
        if sorted(pairs) != list(range(n)):
            raise ValueError("CSV must cover indices 0..n-1 exactly once")
        return cls(n, tuple(pairs[i] for i in range(n)))


@dataclass(frozen=True)
class AnalysisReport:
    is_bijection: bool
    is_complete: bool
    is_orthomorphism: bool
    cycle_type: CycleType | None
    fixed_points: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "is_bijection": self.is_bijection,
            "is_complete": self.is_complete,
            "is_orthomorphism": self.is_orthomorphism,
            "cycle_type": None if self.cycle_type is None else self.cycle_type.to_json(),
            "fixed_points": list(self.fixed_points),
        }


def analyze(table: MapTable, p: int, dims: int) -> AnalysisReport:
    """Exhaustive report under the elementary-abelian law of GF(p)^dims."""
    if p ** dims != table.n:
        raise ValueError("domain size must equal p^dims")
    images = table.images
    n = table.n
    is_bij = sorted(images) == list(range(n))
    fixed = tuple(i for i in range(n) if images[i] == i)
    plus = [add_index(images[i], i, p, dims) for i in range(n)]
    minus = [sub_index(images[i], i, p, dims) for i in range(n)]
    is_complete = is_bij and sorted(plus) == list(range(n))
    is_ortho = is_bij and sorted(minus) == list(range(n))
    ctype = ct_of_permutation(images) if is_bij else None
    return AnalysisReport(is_bij, is_complete, is_ortho, ctype, fixed)


def table_of(fn, n: int) -> MapTable:
    return MapTable(n, tuple(fn(i) for i in range(n)))


def field_map_table(ctx: FieldCtx, fn) -> MapTable:
    """Tabulate an element-level function of GF(q) in index order."""
    q = ctx.order
    images = []
    for i in range(q):
        images.append(fn(ctx.from_index(i)).index)
    return MapTable(q, tuple(images))


def interpolate(ctx: FieldCtx, values) -> Poly:
    """The unique polynomial of degree < q through all q points of GF(q).

    `values` maps index order to field elements (sequence of length q).
    Uses that the vanishing polynomial of GF(q) is Y^q - Y with derivative -1:
    the Lagrange basis at a is -(Y^q - Y)/(Y - a).
    """
    q = ctx.order
    values = list(values)
    if len(values) != q:
        raise ValueError("interpolation needs all q values")
    # Z(Y) = Y^q - Y as a coefficient list
    z = [ctx.zero()] * (q + 1)
    z[1] = -ctx.one()
    z[q] = ctx.one()
    result = [ctx.zero()] * q
    for i in range(q):
        y = ctx.elem(values[i])
        if y.is_zero():
            continue
        a = ctx.from_index(i)
        # synthetic division of Z by (Y - a): quotient has degree q-1
        quot = [ctx.zero()] * q
        carry = z[q]
        for d in range(q - 1, -1, -1):
            quot[d] = carry
            carry = z[d] + a * carry
        scale = -y
        for d in range(q):
            result[d] = result[d] + scale * quot[d]
    return Poly(ctx, result)


def evaluate_poly_table(P: Poly) -> MapTable:
    """Value table of a polynomial as a map of its coefficient field."""
    return field_map_table(P.ctx, lambda x: P(x))


def load_table(text: str) -> MapTable:
    """Parse a MapTable from JSON or index-pair CSV."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return MapTable.from_json(json.loads(text))
    return MapTable.from_csv(text)
