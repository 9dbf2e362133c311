"""Exact arithmetic in GF(p), extension fields GF(p^k), and polynomial rings over them.

Elements of GF(p^k) are coordinate tuples over the power basis (1, w, ..., w^(k-1))
where w is the class of X modulo the field's irreducible modulus, least degree first.
All values are immutable and all operations are pure functions.
"""

from __future__ import annotations

import itertools

MINUS_INFINITY = float("-inf")  # degree of the zero polynomial

# Moduli that must match a fixed external convention byte-for-byte; everything
# else is generated on demand by first-irreducible search.
_BUNDLED_MODULI = {
    (3, 3): (1, 2, 0, 1),  # X^3 - X + 1
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine for n <= 2**31."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Internal polynomial helpers over GF(p) with plain int coefficient tuples
# (constant term first, no trailing zeros).  Used for modulus validation,
# element inversion, and the prime-field fast path of factor_monic.
# ---------------------------------------------------------------------------

def _ip_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _ip_add(a, b, p):
    n = max(len(a), len(b))
    return _ip_trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                     for i in range(n)])


def _ip_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ip_trim(out)


def _ip_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(r) - db)
    while len(r) - 1 >= db and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db:
            break
        shift = len(r) - 1 - db
        c = (r[-1] * inv_lead) % p
        q[shift] = c
        for i in range(db + 1):
            r[shift + i] = (r[shift + i] - c * b[i]) % p
    return _ip_trim(q), _ip_trim(r)


def _ip_xgcd(a, b, p):
    """Extended gcd; returns (g, s, t) with s*a + t*b = g, g monic or zero."""
    r0, r1 = a, b
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = _ip_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _ip_add(s0, _ip_mul(tuple((-c) % p for c in q), s1, p), p)
        t0, t1 = t1, _ip_add(t0, _ip_mul(tuple((-c) % p for c in q), t1, p), p)
    if r0:
        inv = pow(r0[-1], p - 2, p)
        r0 = tuple((c * inv) % p for c in r0)
        s0 = tuple((c * inv) % p for c in s0)
        t0 = tuple((c * inv) % p for c in t0)
    return r0, s0, t0


def _ip_monic_of_degree(p: int, d: int):
    """Yield all monic degree-d coefficient tuples in lexicographic order
    (constant coefficient most significant)."""
    for lower in itertools.product(range(p), repeat=d):
        yield lower + (1,)


def _ip_irreducibles(p: int, max_degree: int) -> list[tuple[int, ...]]:
    found: list[tuple[int, ...]] = []
    for d in range(1, max_degree + 1):
        for cand in _ip_monic_of_degree(p, d):
            ok = True
            for q in found:
                if 2 * (len(q) - 1) > d:
                    break
                if not _ip_divmod(cand, q, p)[1]:
                    ok = False
                    break
            if ok:
                found.append(cand)
    return found


def _ip_is_irreducible(c, p: int) -> bool:
    d = len(c) - 1
    if d < 1:
        return False
    for q in _ip_irreducibles(p, d // 2):
        if not _ip_divmod(c, q, p)[1]:
            return False
    return True


# ---------------------------------------------------------------------------
# Field contexts and elements
# ---------------------------------------------------------------------------

class FieldCtx:
    """A finite field GF(p^k): characteristic, extension degree, and modulus.

    Two contexts interoperate only if (p, k, modulus) agree exactly.  Use the
    `field` factory; contexts are interned so equality is cheap.
    """

    __slots__ = ("p", "k", "modulus", "_dlog", "_powtable")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] | None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if k == 1:
            if modulus is not None:
                raise ValueError("prime fields take no modulus")
        else:
            if modulus is None:
                raise ValueError("extension fields require a modulus")
            modulus = _ip_trim(tuple(c % p for c in modulus))
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not _ip_is_irreducible(modulus, p):
                raise ValueError("modulus must be irreducible over GF(p)")
        self.p = p
        self.k = k
        self.modulus = modulus
        self._dlog = None
        self._powtable = None

    @property
    def order(self) -> int:
        return self.p ** self.k

    def elem(self, value) -> "FieldElement":
        """Coerce an int (constant) or coefficient sequence into this field."""
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise ValueError("mismatched field contexts")
            return value
        if isinstance(value, int):
            coeffs = (value % self.p,) + (0,) * (self.k - 1)
            return FieldElement(self, coeffs)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.k:
            raise ValueError(f"expected {self.k} coordinates")
        return FieldElement(self, coeffs)

    def zero(self) -> "FieldElement":
        return self.elem(0)

    def one(self) -> "FieldElement":
        return self.elem(1)

    def gen(self) -> "FieldElement":
        """The class of X modulo the modulus (requires k >= 2)."""
        if self.k == 1:
            raise ValueError("prime field has no distinguished generator")
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def elements(self):
        """All elements in index order (lexicographic on coordinates,
        first coordinate most significant)."""
        for coords in itertools.product(range(self.p), repeat=self.k):
            yield FieldElement(self, coords)

    def from_index(self, i: int) -> "FieldElement":
        if not 0 <= i < self.order:
            raise ValueError("index out of range")
        coords = []
        for j in range(self.k):
            coords.append(i // self.p ** (self.k - 1 - j) % self.p)
        return FieldElement(self, tuple(coords))

    def dlog(self, x: "FieldElement") -> int:
        """Discrete log of x base gen() (k >= 2); requires gen primitive for
        full coverage, raises ValueError if x is not a power of gen."""
        if x.is_zero():
            raise ValueError("dlog of zero")
        if self._dlog is None:
            table = {}
            g = self.gen()
            acc = self.one()
            for j in range(self.order - 1):
                table.setdefault(acc.coeffs, j)
                acc = acc * g
            self._dlog = table
        try:
            return self._dlog[x.coeffs]
        except KeyError:
            raise ValueError("element is not a power of the generator") from None

    def __eq__(self, other):
        return (isinstance(other, FieldCtx)
                and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus))

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"


_CTX_CACHE: dict[tuple, FieldCtx] = {}


def field(p: int, k: int = 1, modulus=None) -> FieldCtx:
    """Interning factory for field contexts.

    For k >= 2 without an explicit modulus, the bundled table is consulted
    first, then the first irreducible of degree k in enumeration order.
    """
    if k >= 2 and modulus is None:
        bundled = _BUNDLED_MODULI.get((p, k))
        if bundled is not None:
            modulus = bundled
        else:
            for cand in _ip_monic_of_degree(p, k):
                if _ip_is_irreducible(cand, p):
                    modulus = cand
                    break
    key = (p, k, tuple(c % p for c in modulus) if modulus is not None else None)
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(p, k, key[2])
        _CTX_CACHE[key] = ctx
    return ctx


def field_of_order(q: int, modulus=None) -> FieldCtx:
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, k), = fac.items()
    return field(p, k, modulus)


class FieldElement:
    """An element of GF(p^k): k residues mod p over the power basis."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("mismatched field contexts")
            return other
        if isinstance(other, int):
            return self.ctx.elem(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return self.ctx.elem(other) - self

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        ctx = self.ctx
        if ctx.k == 1:
            return FieldElement(ctx, ((self.coeffs[0] * o.coeffs[0]) % ctx.p,))
        prod = _ip_mul(_ip_trim(self.coeffs), _ip_trim(o.coeffs), ctx.p)
        _, rem = _ip_divmod(prod, ctx.modulus, ctx.p)
        return FieldElement(ctx, rem + (0,) * (ctx.k - len(rem)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in field")
        ctx = self.ctx
        if ctx.k == 1:
            return FieldElement(ctx, (pow(self.coeffs[0], ctx.p - 2, ctx.p),))
        g, s, _ = _ip_xgcd(_ip_trim(self.coeffs), ctx.modulus, ctx.p)
        if g != (1,):
            raise ArithmeticError("modulus is not irreducible")
        _, rem = _ip_divmod(s, ctx.modulus, ctx.p)
        return FieldElement(ctx, rem + (0,) * (ctx.k - len(rem)))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.ctx.elem(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def in_prime_subfield(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    @property
    def index(self) -> int:
        """Lexicographic rank of the coordinate tuple (first coordinate most
        significant); fixes the element order used by map tables."""
        ctx = self.ctx
        return sum(c * ctx.p ** (ctx.k - 1 - j) for j, c in enumerate(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.elem(other)
        return (isinstance(other, FieldElement)
                and self.ctx == other.ctx and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.coeffs, self.ctx.p, self.ctx.k, self.ctx.modulus))

    def __repr__(self):
        if self.ctx.k == 1:
            return str(self.coeffs[0])
        return f"{list(self.coeffs)}"


def field_arith(a: FieldElement, b, op: str):
    """Dispatcher over the basic field operations: add, sub, mul, div, pow.

    pow takes an integer exponent.
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown field operation {op!r}")


# ---------------------------------------------------------------------------
# Polynomials over a field context
# ---------------------------------------------------------------------------

class Poly:
    """Dense polynomial over a field context, constant term first.

    Canonical form: no trailing zero coefficients; the zero polynomial has an
    empty coefficient tuple and degree MINUS_INFINITY.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        elems = []
        for c in coeffs:
            elems.append(ctx.elem(c))
        while elems and elems[-1].is_zero():
            elems.pop()
        self.ctx = ctx
        self.coeffs = tuple(elems)

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, (1,))

    @classmethod
    def x(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, (0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INFINITY

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ctx.one()

    @property
    def leading(self) -> FieldElement:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> FieldElement:
        return self.coeffs[i] if i < len(self.coeffs) else self.ctx.zero()

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise ValueError("mismatched coefficient contexts")
            return other
        if isinstance(other, (int, FieldElement)):
            return Poly(self.ctx, (self.ctx.elem(other),))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.ctx, tuple(self.coeff(i) + o.coeff(i) for i in range(n)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.ctx, tuple(self.coeff(i) - o.coeff(i) for i in range(n)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Poly(self.ctx, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return Poly.zero(self.ctx)
        out = [self.ctx.zero()] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.ctx, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = len(o.coeffs) - 1
        inv_lead = o.leading.inverse()
        q = [self.ctx.zero()] * max(0, len(r) - db)
        while len(r) - 1 >= db:
            while r and r[-1].is_zero():
                r.pop()
            if len(r) - 1 < db:
                break
            shift = len(r) - 1 - db
            c = r[-1] * inv_lead
            q[shift] = c
            for i in range(db + 1):
                r[shift + i] = r[shift + i] - c * o.coeffs[i]
        return Poly(self.ctx, q), Poly(self.ctx, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def pow_mod(self, n: int, modulus: "Poly") -> "Poly":
        result = Poly.one(self.ctx) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.leading.inverse()
        return Poly(self.ctx, tuple(c * inv for c in self.coeffs))

    def __call__(self, x: FieldElement) -> FieldElement:
        x = self.ctx.elem(x)
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sort_key(self):
        """Grade-lex key: degree first, then coefficient indices constant-first."""
        return (len(self.coeffs), tuple(c.index for c in self.coeffs))

    def __eq__(self, other):
        return (isinstance(other, Poly)
                and self.ctx == other.ctx and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self):
        from .serialize import format_poly
        return format_poly(self)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    if a.ctx != b.ctx:
        raise ValueError("mismatched coefficient contexts")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_arith(a: Poly, b, op: str):
    """Dispatcher: add, mul, divmod, gcd, eval."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    if op == "gcd":
        return poly_gcd(a, b)
    if op == "eval":
        return a(b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def _poly_from_ip(ctx: FieldCtx, ip) -> Poly:
    return Poly(ctx, ip)


def enumerate_monic(ctx: FieldCtx, degree: int):
    """All monic polynomials of the given degree in grade-lex order."""
    n = ctx.order
    for idx in itertools.product(range(n), repeat=degree):
        coeffs = [ctx.from_index(i) for i in idx]
        coeffs.append(ctx.one())
        yield Poly(ctx, coeffs)


_IRR_CACHE: dict[tuple, list] = {}


def enumerate_irreducibles(ctx: FieldCtx, max_degree: int) -> list[Poly]:
    """All monic irreducible polynomials of degree <= max_degree over GF(q),
    in grade-lex order."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    key = (ctx.p, ctx.k, ctx.modulus)
    cached_deg, cached = _IRR_CACHE.get(key, (0, []))
    if cached_deg >= max_degree:
        return [q for q in cached if q.degree <= max_degree]
    found = list(cached)
    for d in range(cached_deg + 1, max_degree + 1):
        for cand in enumerate_monic(ctx, d):
            ok = True
            for q in found:
                if 2 * q.degree > d:
                    break
                if (cand % q).is_zero():
                    ok = False
                    break
            if ok:
                found.append(cand)
    _IRR_CACHE[key] = (max_degree, found)
    return list(found)


def is_irreducible(P: Poly) -> bool:
    if P.is_zero() or P.degree < 1:
        return False
    d = int(P.degree)
    if d == 1:
        return True
    for q in enumerate_irreducibles(P.ctx, d // 2):
        if (P % q).is_zero():
            return False
    return True


def factor_monic(P: Poly) -> list[tuple[Poly, int]]:
    """Factor a monic polynomial of degree >= 1 into irreducibles.

    Returns (Q, e) pairs sorted grade-lex on Q.  Trial division against the
    irreducible enumeration; intended for desk-scale degrees.
    """
    if P.is_zero() or not P.is_monic() or P.degree < 1:
        raise ValueError("factor_monic expects a monic polynomial of degree >= 1")
    ctx = P.ctx
    if ctx.k == 1:
        return _factor_monic_prime(P)
    out: list[tuple[Poly, int]] = []
    rem = P
    while rem.degree >= 1:
        d = int(rem.degree)
        hit = None
        for q in enumerate_irreducibles(ctx, d // 2):
            if (rem % q).is_zero():
                hit = q
                break
        if hit is None:
            hit = rem  # remainder itself irreducible
        e = 0
        while (rem % hit).is_zero():
            rem = rem // hit
            e += 1
        out.append((hit, e))
    out.sort(key=lambda t: t[0].sort_key())
    return out


def _factor_monic_prime(P: Poly) -> list[tuple[Poly, int]]:
    """Prime-field fast path on int coefficient tuples."""
    ctx = P.ctx
    p = ctx.p
    poly = _ip_trim(tuple(c.coeffs[0] for c in P.coeffs))
    out = []
    d = len(poly) - 1
    irr = _ip_irreducibles(p, max(1, d // 2))
    rem = poly
    while len(rem) - 1 >= 1:
        hit = None
        for q in irr:
            if 2 * (len(q) - 1) > len(rem) - 1:
                break
            if not _ip_divmod(rem, q, p)[1]:
                hit = q
                break
        if hit is None:
            hit = rem
        e = 0
        while True:
            quo, r = _ip_divmod(rem, hit, p)
            if r:
                break
            rem = quo
            e += 1
        out.append((Poly(ctx, hit), e))
    out.sort(key=lambda t: t[0].sort_key())
    return out


def poly_order(Q: Poly) -> int:
    """Least n >= 1 with Q dividing X^n - 1, for monic irreducible Q != X.

    Computed by factoring q^deg(Q) - 1 and descending through divisors.
    """
    if not Q.is_monic() or Q.degree < 1:
        raise ValueError("poly_order expects a monic polynomial of degree >= 1")
    if Q.degree == 1 and Q.coeff(0).is_zero():
        raise ValueError("poly_order is undefined for Q = X")
    if not is_irreducible(Q):
        raise ValueError("poly_order expects an irreducible polynomial")
    ctx = Q.ctx
    n = ctx.order ** int(Q.degree) - 1
    x = Poly.x(ctx)
    one = Poly.one(ctx)
    if x.pow_mod(n, Q) != one:
        raise ArithmeticError("X is not a unit modulo Q")
    order = n
    for prime in factorize(n):
        while order % prime == 0 and x.pow_mod(order // prime, Q) == one:
            order //= prime
    return order


def q_adic_valuation(R: Poly, Q: Poly) -> int:
    """Largest m with Q^m dividing R; R must be nonzero."""
    if R.is_zero():
        raise ValueError("valuation of the zero polynomial is undefined")
    if Q.is_zero() or Q.degree < 1:
        raise ValueError("valuation base must have degree >= 1")
    m = 0
    while True:
        quo, rem = divmod(R, Q)
        if not rem.is_zero():
            return m
        R = quo
        m += 1
