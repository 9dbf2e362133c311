"""Cycle types of affine permutations of finite vector spaces.

The per-block computation follows the divisor-chain counting argument: the
points lying on cycles whose length divides a candidate length form a
divisor-closed set whose size is an explicit power of q; exact-length counts
fall out by subtraction along the chain of candidates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cycletype import CycleType, weixu_all
from .gf import FieldCtx, Poly, enumerate_irreducibles, field, poly_order
from .linalg import AffineMap, MatrixQ, companion, prcf

U_GENERIC = "generic"
U_NONUNIT = "nonunit"
U_UNIT_NOT_PPOWER = "unit_e_not_ppower"
U_UNIT_PPOWER = "unit_e_ppower"


def _is_x_minus_1(Q: Poly) -> bool:
    return int(Q.degree) == 1 and Q.coeff(0) == -Q.ctx.one()


def _is_ppower(e: int, p: int) -> bool:
    while e % p == 0:
        e //= p
    return e == 1


def _ceil_log(e: int, p: int) -> int:
    """Smallest c with p^c >= e."""
    c = 0
    v = 1
    while v < e:
        v *= p
        c += 1
    return c


@dataclass(frozen=True)
class BlockCase:
    """One primary block GF(q)[X]/(Q^e) together with the shift class of U."""

    Q: Poly
    e: int
    u_class: str

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("block exponent must be >= 1")
        if int(self.Q.degree) == 1 and self.Q.coeff(0).is_zero():
            raise ValueError("block polynomial must not be X")
        is_xm1 = _is_x_minus_1(self.Q)
        if self.u_class == U_GENERIC:
            if is_xm1:
                raise ValueError("X-1 blocks are never generic")
        elif self.u_class in (U_NONUNIT, U_UNIT_NOT_PPOWER, U_UNIT_PPOWER):
            if not is_xm1:
                raise ValueError("unit/nonunit classes apply to X-1 blocks only")
            p = self.Q.ctx.p
            if self.u_class == U_UNIT_PPOWER and not _is_ppower(self.e, p):
                raise ValueError("exponent is not a power of p")
            if self.u_class == U_UNIT_NOT_PPOWER and (self.e == 1 or _is_ppower(self.e, p)):
                raise ValueError("exponent is a power of p")
        else:
            raise ValueError(f"unknown shift class {self.u_class!r}")


def classify_block(Q: Poly, e: int, U: Poly) -> BlockCase:
    """Shift class of U + (Q^e): for Q = X-1 the unit test is U(1) != 0."""
    if not _is_x_minus_1(Q):
        return BlockCase(Q, e, U_GENERIC)
    if U(Q.ctx.one()).is_zero():
        return BlockCase(Q, e, U_NONUNIT)
    p = Q.ctx.p
    return BlockCase(Q, e, U_UNIT_PPOWER if _is_ppower(e, p) else U_UNIT_NOT_PPOWER)


def block_cycle_type(case: BlockCase, q: int | None = None) -> CycleType:
    """Cycle type of R -> R*X + U on GF(q)[X]/(Q^e) by the divisor chain."""
    ctx = case.Q.ctx
    if q is not None and q != ctx.order:
        raise ValueError("field size does not match the block polynomial's context")
    q = ctx.order
    p = ctx.p
    e = case.e
    m = int(case.Q.degree)
    c = _ceil_log(e, p)
    counts: dict[int, int] = {}
    if case.u_class == U_GENERIC:
        r = poly_order(case.Q)
        counts[1] = 1
        prev = 1  # points on cycles of length dividing previous candidate
        for a in range(c + 1):
            length = r * p ** a
            pts = q ** (m * min(e, p ** a))
            exact = pts - prev
            if exact:
                counts[length] = counts.get(length, 0) + exact // length
            prev = pts
    elif case.u_class == U_NONUNIT:
        prev = 0
        for a in range(c + 1):
            length = p ** a
            pts = q ** min(e, p ** a)
            exact = pts - prev
            if exact:
                counts[length] = counts.get(length, 0) + exact // length
            prev = pts
    elif case.u_class == U_UNIT_NOT_PPOWER:
        length = p ** c
        counts[length] = q ** e // length
    else:  # unit, e a power of p (including e = 1)
        length = p * e
        counts[length] = q ** e // length
    total = sum(l * k for l, k in counts.items())
    if total != q ** (m * e):
        raise ArithmeticError("block cycle counts do not cover the module")
    return CycleType(counts)


def _block_options(Q: Poly, e: int):
    """Possible (shift class, cycle type) pairs for one block as the shift
    ranges over the quotient algebra."""
    if _is_x_minus_1(Q):
        p = Q.ctx.p
        unit = U_UNIT_PPOWER if _is_ppower(e, p) else U_UNIT_NOT_PPOWER
        cases = [BlockCase(Q, e, U_NONUNIT), BlockCase(Q, e, unit)]
    else:
        cases = [BlockCase(Q, e, U_GENERIC)]
    return [(case, block_cycle_type(case)) for case in cases]


def affine_cycle_type(f: AffineMap) -> CycleType:
    """Cycle type of x -> x*A + v via the canonical form of A."""
    if not f.matrix.is_invertible():
        raise ValueError("affine map is not a permutation (singular matrix)")
    form = prcf(f.matrix)
    v = f.shift * form.basis_change
    ctx = f.ctx
    parts = []
    off = 0
    for Q, e in form.blocks:
        n = int(Q.degree) * e
        seg = Poly(ctx, v.entries[off:off + n])
        case = classify_block(Q, e, seg)
        parts.append(block_cycle_type(case))
        off += n
    return weixu_all(parts)


def gamma_of_matrix(M: MatrixQ) -> frozenset[CycleType]:
    """All cycle types of x -> x*M + v as v ranges over the space."""
    if not M.is_invertible():
        raise ValueError("gamma needs an invertible matrix")
    form = prcf(M)
    per_block = [[t for _, t in _block_options(Q, e)] for Q, e in form.blocks]
    out = set()
    for combo in itertools.product(*per_block):
        out.add(weixu_all(list(combo)))
    degrees = {t.degree for t in out}
    if len(degrees) != 1:
        raise ArithmeticError("inconsistent degrees in gamma set")
    return frozenset(out)


def gamma_of_poly(P: Poly) -> frozenset[CycleType]:
    """Gamma of the companion matrix of a monic P with P(0) != 0."""
    if P.coeff(0).is_zero():
        raise ValueError("gamma of a polynomial requires a nonzero constant term")
    return gamma_of_matrix(companion(P))


def sorted_types(types) -> list[CycleType]:
    return sorted(types, key=lambda t: t.cycles)


# ---------------------------------------------------------------------------
# Gamma(d, p, ell): cycle types reachable with matrices that factor into ell
# complete linear maps.
# ---------------------------------------------------------------------------

def block_multisets(ctx: FieldCtx, d: int, exclude=()):
    """All multisets of (Q, e) with sum e*deg Q = d, Q monic irreducible and
    Q != X, skipping polynomials in `exclude`.  One multiset per conjugacy
    class of GL_d(q); deterministic order, exponents ascending per Q."""
    irred = [Q for Q in enumerate_irreducibles(ctx, d)
             if not (int(Q.degree) == 1 and Q.coeff(0).is_zero())]
    irred = [Q for Q in irred if Q not in exclude]

    def rec(remaining: int, idx: int):
        if remaining == 0:
            yield []
            return
        if idx == len(irred):
            return
        Q = irred[idx]
        dq = int(Q.degree)
        for exps in _exponent_multisets(remaining // dq):
            used = sum(exps) * dq
            if used > remaining:
                continue
            for rest in rec(remaining - used, idx + 1):
                yield [(Q, e) for e in exps] + rest

    yield from rec(d, 0)


def _exponent_multisets(budget: int):
    """All ascending exponent multisets (possibly empty) with sum <= budget."""
    def grow(minimum, left):
        yield []
        for e in range(minimum, left + 1):
            for rest in grow(e, left - e):
                yield [e] + rest
    yield from grow(1, budget)


def _x_plus_1(ctx: FieldCtx) -> Poly:
    return Poly(ctx, (1, 1))


def _ct_union_over_forms(ctx: FieldCtx, d: int, exclude) -> frozenset[CycleType]:
    out = set()
    for blocks in block_multisets(ctx, d, exclude=exclude):
        per_block = [[t for _, t in _block_options(Q, e)] for Q, e in blocks]
        for combo in itertools.product(*per_block):
            out.add(weixu_all(list(combo)))
    return frozenset(out)


_GAMMA_CACHE: dict[tuple, frozenset] = {}


def ct_agl(d: int, p: int) -> frozenset[CycleType]:
    """Cycle types of all affine permutations of GF(p)^d."""
    key = ("agl", d, p)
    if key not in _GAMMA_CACHE:
        _GAMMA_CACHE[key] = _ct_union_over_forms(field(p), d, exclude=())
    return _GAMMA_CACHE[key]


def ct_acgl(d: int, p: int) -> frozenset[CycleType]:
    """Cycle types of affine maps whose linear part is a complete mapping."""
    key = ("acgl", d, p)
    if key not in _GAMMA_CACHE:
        ctx = field(p)
        _GAMMA_CACHE[key] = _ct_union_over_forms(ctx, d, exclude=(_x_plus_1(ctx),))
    return _GAMMA_CACHE[key]


def gamma_dpl(d: int, p: int, ell: int) -> frozenset[CycleType]:
    """Cycle types realizable by lambda(M, w) with M a product of ell
    complete invertible matrices over GF(p)."""
    if d < 1 or ell < 1:
        raise ValueError("dimension and factor count must be >= 1")
    if ell == 1:
        return ct_acgl(d, p)
    if (d, p) == (1, 2):
        return frozenset()
    if (d, p) == (1, 3):
        from .cycletype import ct
        return frozenset({ct("x1^3"), ct("x3")})
    if (d, p) == (2, 2):
        from .cycletype import ct
        return frozenset({ct("x1^4"), ct("x2^2"), ct("x1 x3")})
    return ct_agl(d, p)
