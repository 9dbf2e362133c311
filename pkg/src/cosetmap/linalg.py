"""Exact linear algebra over GF(q) with the row-vector convention x -> x*M + v.

Companion matrices here are the transposes of the column-convention ones:
row i of Comp(P) is the image of the basis monomial X^i under multiplication
by X on GF(q)[X]/(P).
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import FieldCtx, FieldElement, Poly, factor_monic


class VectorQ:
    """Row vector over a field context."""

    __slots__ = ("ctx", "entries")

    def __init__(self, ctx: FieldCtx, entries):
        self.ctx = ctx
        self.entries = tuple(ctx.elem(e) for e in entries)

    @classmethod
    def zero(cls, ctx: FieldCtx, n: int) -> "VectorQ":
        return cls(ctx, (0,) * n)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __add__(self, other: "VectorQ") -> "VectorQ":
        self._check(other)
        return VectorQ(self.ctx, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "VectorQ") -> "VectorQ":
        self._check(other)
        return VectorQ(self.ctx, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return VectorQ(self.ctx, tuple(-a for a in self.entries))

    def scale(self, c) -> "VectorQ":
        c = self.ctx.elem(c)
        return VectorQ(self.ctx, tuple(c * a for a in self.entries))

    def __mul__(self, M: "MatrixQ") -> "VectorQ":
        if not isinstance(M, MatrixQ):
            return NotImplemented
        if M.ctx != self.ctx or M.rows != len(self.entries):
            raise ValueError("dimension mismatch in vector-matrix product")
        out = []
        for j in range(M.cols):
            acc = self.ctx.zero()
            for i, a in enumerate(self.entries):
                if not a.is_zero():
                    acc = acc + a * M.entry(i, j)
            out.append(acc)
        return VectorQ(self.ctx, out)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def concat(self, other: "VectorQ") -> "VectorQ":
        self._check_ctx(other)
        return VectorQ(self.ctx, self.entries + other.entries)

    def split(self, n: int) -> tuple["VectorQ", "VectorQ"]:
        return VectorQ(self.ctx, self.entries[:n]), VectorQ(self.ctx, self.entries[n:])

    def ints(self) -> tuple:
        """Entry coordinates as plain ints (prime field) or tuples."""
        if self.ctx.k == 1:
            return tuple(e.coeffs[0] for e in self.entries)
        return tuple(e.coeffs for e in self.entries)

    def _check(self, other):
        self._check_ctx(other)
        if len(other.entries) != len(self.entries):
            raise ValueError("dimension mismatch")

    def _check_ctx(self, other):
        if not isinstance(other, VectorQ) or other.ctx != self.ctx:
            raise ValueError("mismatched contexts")

    def __eq__(self, other):
        return (isinstance(other, VectorQ)
                and self.ctx == other.ctx and self.entries == other.entries)

    def __hash__(self):
        return hash((self.ctx, self.entries))

    def __repr__(self):
        return f"({', '.join(map(repr, self.entries))})"


class MatrixQ:
    """Dense exact matrix; immutable after construction."""

    __slots__ = ("ctx", "rows", "cols", "_rows")

    def __init__(self, ctx: FieldCtx, rows):
        table = tuple(tuple(ctx.elem(e) for e in row) for row in rows)
        if table:
            width = len(table[0])
            if any(len(r) != width for r in table):
                raise ValueError("ragged matrix rows")
        else:
            width = 0
        self.ctx = ctx
        self.rows = len(table)
        self.cols = width
        self._rows = table

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "MatrixQ":
        return cls(ctx, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, ctx: FieldCtx, rows: int, cols: int) -> "MatrixQ":
        return cls(ctx, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def from_rows(cls, vectors) -> "MatrixQ":
        vectors = list(vectors)
        return cls(vectors[0].ctx, tuple(v.entries for v in vectors))

    @classmethod
    def block_diag(cls, blocks) -> "MatrixQ":
        blocks = list(blocks)
        ctx = blocks[0].ctx
        n = sum(b.rows for b in blocks)
        rows = [[ctx.zero()] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    rows[off + i][off + j] = b.entry(i, j)
            off += b.rows
        return cls(ctx, rows)

    def entry(self, i: int, j: int) -> FieldElement:
        return self._rows[i][j]

    def row(self, i: int) -> VectorQ:
        return VectorQ(self.ctx, self._rows[i])

    def row_vectors(self) -> list[VectorQ]:
        return [VectorQ(self.ctx, r) for r in self._rows]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __add__(self, other: "MatrixQ") -> "MatrixQ":
        self._check_same_shape(other)
        return MatrixQ(self.ctx, tuple(tuple(a + b for a, b in zip(r1, r2))
                                       for r1, r2 in zip(self._rows, other._rows)))

    def __sub__(self, other: "MatrixQ") -> "MatrixQ":
        self._check_same_shape(other)
        return MatrixQ(self.ctx, tuple(tuple(a - b for a, b in zip(r1, r2))
                                       for r1, r2 in zip(self._rows, other._rows)))

    def __neg__(self):
        return MatrixQ(self.ctx, tuple(tuple(-a for a in r) for r in self._rows))

    def scale(self, c) -> "MatrixQ":
        c = self.ctx.elem(c)
        return MatrixQ(self.ctx, tuple(tuple(c * a for a in r) for r in self._rows))

    def __mul__(self, other):
        if isinstance(other, MatrixQ):
            if other.ctx != self.ctx or self.cols != other.rows:
                raise ValueError("dimension mismatch in matrix product")
            zero = self.ctx.zero()
            out = []
            for i in range(self.rows):
                row = []
                for j in range(other.cols):
                    acc = zero
                    for t in range(self.cols):
                        a = self._rows[i][t]
                        if not a.is_zero():
                            acc = acc + a * other._rows[t][j]
                    row.append(acc)
                out.append(tuple(row))
            return MatrixQ(self.ctx, tuple(out))
        return NotImplemented

    def __pow__(self, n: int) -> "MatrixQ":
        if not self.is_square():
            raise ValueError("matrix power needs a square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        result = MatrixQ.identity(self.ctx, self.rows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def transpose(self) -> "MatrixQ":
        return MatrixQ(self.ctx, tuple(tuple(self._rows[i][j] for i in range(self.rows))
                                       for j in range(self.cols)))

    def _elimination(self):
        """Returns (echelon rows, pivot columns, det or None) by Gaussian
        elimination with partial (first nonzero) pivoting."""
        work = [list(r) for r in self._rows]
        det = self.ctx.one()
        sign_swaps = 0
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot = None
            for i in range(r, self.rows):
                if not work[i][c].is_zero():
                    pivot = i
                    break
            if pivot is None:
                continue
            if pivot != r:
                work[r], work[pivot] = work[pivot], work[r]
                sign_swaps += 1
            pivots.append(c)
            pv = work[r][c]
            det = det * pv
            inv = pv.inverse()
            work[r] = [inv * a for a in work[r]]
            for i in range(self.rows):
                if i != r and not work[i][c].is_zero():
                    f = work[i][c]
                    work[i] = [a - f * b for a, b in zip(work[i], work[r])]
            r += 1
            if r == self.rows:
                break
        if sign_swaps % 2:
            det = -det
        return work, pivots, det, r

    def det(self) -> FieldElement:
        if not self.is_square():
            raise ValueError("determinant needs a square matrix")
        _, pivots, det, rank = self._elimination()
        if rank < self.rows:
            return self.ctx.zero()
        return det

    def rank(self) -> int:
        return self._elimination()[3]

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def inverse(self) -> "MatrixQ":
        if not self.is_square():
            raise ValueError("inverse needs a square matrix")
        n = self.rows
        work = [list(r) + [self.ctx.one() if i == j else self.ctx.zero() for j in range(n)]
                for i, r in enumerate(self._rows)]
        r = 0
        for c in range(n):
            pivot = None
            for i in range(r, n):
                if not work[i][c].is_zero():
                    pivot = i
                    break
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            work[r], work[pivot] = work[pivot], work[r]
            inv = work[r][c].inverse()
            work[r] = [inv * a for a in work[r]]
            for i in range(n):
                if i != r and not work[i][c].is_zero():
                    f = work[i][c]
                    work[i] = [a - f * b for a, b in zip(work[i], work[r])]
            r += 1
        return MatrixQ(self.ctx, tuple(tuple(row[n:]) for row in work))

    def solve_left(self, b: VectorQ) -> VectorQ:
        """Solve x * self = b; raises if inconsistent or non-square."""
        xt = self.transpose()._solve_right(b)
        return xt

    def _solve_right(self, b: VectorQ) -> VectorQ:
        if self.rows != len(b.entries):
            raise ValueError("dimension mismatch in solve")
        work = [list(r) + [b.entries[i]] for i, r in enumerate(self._rows)]
        n, m = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(m):
            pivot = None
            for i in range(r, n):
                if not work[i][c].is_zero():
                    pivot = i
                    break
            if pivot is None:
                continue
            work[r], work[pivot] = work[pivot], work[r]
            inv = work[r][c].inverse()
            work[r] = [inv * a for a in work[r]]
            for i in range(n):
                if i != r and not work[i][c].is_zero():
                    f = work[i][c]
                    work[i] = [a - f * bb for a, bb in zip(work[i], work[r])]
            pivots.append(c)
            r += 1
        for i in range(r, n):
            if not work[i][m].is_zero():
                raise ValueError("inconsistent linear system")
        x = [self.ctx.zero()] * m
        for i, c in enumerate(pivots):
            x[c] = work[i][m]
        return VectorQ(self.ctx, x)

    def left_kernel(self) -> list[VectorQ]:
        """Basis of {x : x * self = 0}, in deterministic echelon order."""
        At = self.transpose()
        work, pivots, _, rank = At._elimination()
        n = At.cols
        free = [j for j in range(n) if j not in pivots]
        basis = []
        for f in free:
            v = [self.ctx.zero()] * n
            v[f] = self.ctx.one()
            for i, c in enumerate(pivots):
                v[c] = -work[i][f]
            basis.append(VectorQ(self.ctx, v))
        return basis

    def _check_same_shape(self, other):
        if not isinstance(other, MatrixQ) or other.ctx != self.ctx:
            raise ValueError("mismatched contexts")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")

    def int_rows(self):
        if self.ctx.k == 1:
            return tuple(tuple(e.coeffs[0] for e in r) for r in self._rows)
        return tuple(tuple(e.coeffs for e in r) for r in self._rows)

    def __eq__(self, other):
        return (isinstance(other, MatrixQ)
                and self.ctx == other.ctx and self._rows == other._rows)

    def __hash__(self):
        return hash((self.ctx, self._rows))

    def __repr__(self):
        return "[" + "; ".join(" ".join(map(repr, r)) for r in self._rows) + "]"


def mat_arith(A: MatrixQ, B, op: str):
    """Dispatcher: add, mul, inverse, det, rank, solve (x*A = b)."""
    if op == "add":
        return A + B
    if op == "mul":
        return A * B
    if op == "inverse":
        return A.inverse()
    if op == "det":
        return A.det()
    if op == "rank":
        return A.rank()
    if op == "solve":
        return A.solve_left(B)
    raise ValueError(f"unknown matrix operation {op!r}")


@dataclass(frozen=True)
class AffineMap:
    """x -> x*matrix + shift on row vectors."""

    matrix: MatrixQ
    shift: VectorQ

    def __post_init__(self):
        if self.matrix.ctx != self.shift.ctx:
            raise ValueError("mismatched contexts")
        if not self.matrix.is_square() or self.matrix.rows != len(self.shift.entries):
            raise ValueError("affine map dimension mismatch")

    @property
    def ctx(self):
        return self.matrix.ctx

    @property
    def dim(self):
        return self.matrix.rows

    def __call__(self, x: VectorQ) -> VectorQ:
        return x * self.matrix + self.shift

    def then(self, other: "AffineMap") -> "AffineMap":
        """Composite: apply self first, then other."""
        return AffineMap(self.matrix * other.matrix,
                         self.shift * other.matrix + other.shift)

    def is_permutation(self) -> bool:
        return self.matrix.is_invertible()


def companion(P: Poly) -> MatrixQ:
    """Row-convention companion matrix: superdiagonal ones, last row the
    negated coefficients of P."""
    if not P.is_monic() or P.degree < 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    d = int(P.degree)
    ctx = P.ctx
    rows = []
    for i in range(d - 1):
        rows.append(tuple(ctx.one() if j == i + 1 else ctx.zero() for j in range(d)))
    rows.append(tuple(-P.coeff(j) for j in range(d)))
    return MatrixQ(ctx, rows)


def hypercompanion(Q: Poly, e: int) -> MatrixQ:
    """Block upper-bidiagonal matrix similar to Comp(Q^e): Comp(Q) blocks on
    the diagonal, a connecting 1 from each block's last row into the next
    block's first column.  This is multiplication by X on GF(q)[X]/(Q^e) in
    the basis (Q^i X^j)."""
    from .gf import is_irreducible
    if e < 1:
        raise ValueError("exponent must be >= 1")
    if not Q.is_monic() or Q.degree < 1 or not is_irreducible(Q):
        raise ValueError("hypercompanion needs a monic irreducible polynomial")
    m = int(Q.degree)
    ctx = Q.ctx
    n = m * e
    rows = [[ctx.zero()] * n for _ in range(n)]
    base = companion(Q)
    for b in range(e):
        off = b * m
        for i in range(m):
            for j in range(m):
                rows[off + i][off + j] = base.entry(i, j)
        if b < e - 1:
            rows[off + m - 1][off + m] = ctx.one()
    return MatrixQ(ctx, rows)


def poly_at_matrix(P: Poly, A: MatrixQ) -> MatrixQ:
    """Evaluate a polynomial at a square matrix (Horner)."""
    if not A.is_square():
        raise ValueError("polynomial evaluation needs a square matrix")
    n = A.rows
    acc = MatrixQ.zeros(A.ctx, n, n)
    for c in reversed(P.coeffs):
        acc = acc * A + MatrixQ.identity(A.ctx, n).scale(c)
    return acc


def charpoly(A: MatrixQ) -> Poly:
    """Characteristic polynomial via Hessenberg reduction."""
    if not A.is_square():
        raise ValueError("characteristic polynomial needs a square matrix")
    ctx = A.ctx
    n = A.rows
    if n == 0:
        return Poly.one(ctx)
    H = [list(r) for r in A._rows]
    for c in range(n - 2):
        pivot = None
        for i in range(c + 1, n):
            if not H[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != c + 1:
            H[c + 1], H[pivot] = H[pivot], H[c + 1]
            for i in range(n):
                H[i][c + 1], H[i][pivot] = H[i][pivot], H[i][c + 1]
        inv = H[c + 1][c].inverse()
        for i in range(c + 2, n):
            if not H[i][c].is_zero():
                f = H[i][c] * inv
                H[i] = [a - f * b for a, b in zip(H[i], H[c + 1])]
                for r in range(n):
                    H[r][c + 1] = H[r][c + 1] + f * H[r][i]
    # charpoly recurrence on the Hessenberg form
    x = Poly.x(ctx)
    ps = [Poly.one(ctx)]
    for m in range(1, n + 1):
        p = (x - H[m - 1][m - 1]) * ps[m - 1]
        prod = ctx.one()
        for i in range(m - 1, 0, -1):
            prod = prod * H[i][i - 1]
            p = p - Poly(ctx, (H[i - 1][m - 1] * prod,)) * ps[i - 1]
        ps.append(p)
    return ps[n]


def minpoly(A: MatrixQ) -> Poly:
    """Minimal polynomial via the first linear dependence among powers of A."""
    if not A.is_square():
        raise ValueError("minimal polynomial needs a square matrix")
    ctx = A.ctx
    n = A.rows
    powers = [MatrixQ.identity(ctx, n)]
    ech = _Echelon(ctx, n * n)
    while True:
        Ak = powers[-1]
        flat = VectorQ(ctx, [Ak.entry(i, j) for i in range(n) for j in range(n)])
        if not ech.insert(flat):
            # A^m depends on lower powers: solve sum c_i A^i = A^m
            m = len(powers) - 1
            rows = [[P.entry(i, j) for i in range(n) for j in range(n)]
                    for P in powers[:m]]
            sol = MatrixQ(ctx, rows).transpose()._solve_right(flat)
            return Poly(ctx, [-c for c in sol.entries] + [ctx.one()])
        powers.append(powers[-1] * A)


class _Echelon:
    """Mutable echelon basis of a row space; deterministic insertion order."""

    __slots__ = ("ctx", "n", "rows", "pivots")

    def __init__(self, ctx: FieldCtx, n: int):
        self.ctx = ctx
        self.n = n
        self.rows: list[list[FieldElement]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: VectorQ) -> list[FieldElement]:
        w = list(v.entries)
        for row, p in zip(self.rows, self.pivots):
            if not w[p].is_zero():
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def contains(self, v: VectorQ) -> bool:
        return all(a.is_zero() for a in self.reduce(v))

    def insert(self, v: VectorQ) -> bool:
        w = self.reduce(v)
        pivot = None
        for i, a in enumerate(w):
            if not a.is_zero():
                pivot = i
                break
        if pivot is None:
            return False
        inv = w[pivot].inverse()
        w = [inv * a for a in w]
        self.rows.append(w)
        self.pivots.append(pivot)
        return True


@dataclass(frozen=True)
class Prcf:
    """Primary rational canonical form: block list and basis change S with
    S^-1 * A * S equal to the assembled block diagonal exactly."""

    blocks: tuple[tuple[Poly, int], ...]
    basis_change: MatrixQ

    def block_diagonal(self) -> MatrixQ:
        return MatrixQ.block_diag([companion(Q ** e) for Q, e in self.blocks])

    def block_polys(self) -> list[Poly]:
        return [Q ** e for Q, e in self.blocks]


def _poly_exact_div(a: Poly, b: Poly) -> Poly:
    q, r = divmod(a, b)
    if not r.is_zero():
        raise ArithmeticError("inexact polynomial division in canonical form")
    return q


def _decompose_primary(A: MatrixQ, Q: Poly, comp_basis: list[VectorQ]):
    """Split one primary component into cyclic summands.

    Greedy: repeatedly take a vector of maximal height in the quotient by what
    has been collected, make it pure by subtracting the divisible part of its
    image inside the collected blocks, and append its Krylov block.  Returns
    (generator, height) pairs with non-increasing heights.
    """
    ctx = A.ctx
    QA = poly_at_matrix(Q, A)
    degQ = int(Q.degree)
    target_dim = len(comp_basis)

    collected = _Echelon(ctx, A.rows)
    gens: list[tuple[VectorQ, int]] = []
    gen_rows: list[VectorQ] = []   # Krylov rows in block order
    gen_meta: list[tuple[int, int]] = []  # (generator index, power) per row

    def height_mod(v: VectorQ, cap: int) -> int:
        h = 0
        w = v
        while not collected.contains(w):
            w = w * QA
            h += 1
            if h > cap:
                raise ArithmeticError("height exceeded component exponent")
        return h

    cap = target_dim // degQ + 1
    while collected.dim < target_dim:
        probe = _Echelon(ctx, A.rows)
        for row, piv in zip(collected.rows, collected.pivots):
            probe.rows.append(list(row))
            probe.pivots.append(piv)
        candidates = []
        for v in comp_basis:
            if probe.insert(v):
                candidates.append(v)
        heights = [height_mod(v, cap) for v in candidates]
        hmax = max(heights)
        x = candidates[heights.index(hmax)]
        # purify: x*QA^hmax lies in the collected blocks; every block
        # coordinate polynomial is divisible by Q^hmax, subtract the quotient
        if gen_rows:
            u = x
            for _ in range(hmax):
                u = u * QA
            if not u.is_zero():
                B = MatrixQ.from_rows(gen_rows)
                coords = B.transpose()._solve_right(u)
                for g_idx, (gen, h_g) in enumerate(gens):
                    cs = [coords.entries[r] for r, (gi, _) in enumerate(gen_meta) if gi == g_idx]
                    f = Poly(ctx, cs)
                    if f.is_zero():
                        continue
                    gpoly = _poly_exact_div(f, Q ** hmax)
                    corr = x
                    acc = gen
                    for c in gpoly.coeffs:
                        if not c.is_zero():
                            corr = corr - acc.scale(c)
                        acc = acc * A
                    x = corr
        # record the (now pure) block
        g_idx = len(gens)
        w = x
        block_rows = []
        for j in range(degQ * hmax):
            block_rows.append(w)
            gen_meta.append((g_idx, j))
            w = w * A
        check = x
        for _ in range(hmax):
            check = check * QA
        if not check.is_zero():
            raise ArithmeticError("purification failed in canonical form")
        for r in block_rows:
            if not collected.insert(r):
                raise ArithmeticError("dependent Krylov row in canonical form")
        gen_rows.extend(block_rows)
        gens.append((x, hmax))
    return gens


def prcf(A: MatrixQ) -> Prcf:
    """Primary rational canonical form with basis change.

    Deterministic: blocks sorted grade-lex on Q then ascending exponent, with
    generators chosen as the first maximal-height vector of the deterministic
    component basis.
    """
    if not A.is_square():
        raise ValueError("canonical form needs a square matrix")
    ctx = A.ctx
    n = A.rows
    cp = charpoly(A)
    entries: list[tuple[Poly, int, VectorQ]] = []
    for Q, mult in factor_monic(cp):
        QA_m = poly_at_matrix(Q, A) ** mult
        comp_basis = QA_m.left_kernel()
        if len(comp_basis) != mult * int(Q.degree):
            raise ArithmeticError("primary component has unexpected dimension")
        for gen, h in _decompose_primary(A, Q, comp_basis):
            entries.append((Q, h, gen))
    entries.sort(key=lambda t: (t[0].sort_key(), t[1]))
    rows = []
    blocks = []
    for Q, e, gen in entries:
        blocks.append((Q, e))
        w = gen
        for _ in range(int(Q.degree) * e):
            rows.append(w)
            w = w * A
    T = MatrixQ.from_rows(rows)
    S = T.inverse()
    result = Prcf(tuple(blocks), S)
    D = result.block_diagonal()
    if T * A != D * T:
        raise ArithmeticError("canonical form verification failed")
    return result
