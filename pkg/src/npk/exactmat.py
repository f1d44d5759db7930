"""Dense exact matrices over a cyclotomic field.

Operands of different field orders are lifted to the lcm conductor before
any operation.  Rank, determinant and inverse use exact-pivot Gaussian
elimination; nothing here ever falls back to floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclofield import CycNum, _field, as_cyc, conductor_normalize, descend, embed_complex, lcm, lift
from .errors import DimensionError, SingularMatrixError


class CycMatrix:
    """Immutable dense matrix with entries in Q(zeta_order), stored row-major."""

    __slots__ = ("order", "rows", "cols", "entries")

    def __init__(self, data: Sequence[Sequence], order: int | None = None):
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise DimensionError("ragged matrix rows")
        flat = [as_cyc(v) for r in data for v in r]
        m = lcm(*(x.order for x in flat)) if flat else 1
        if order is not None:
            m = lcm(m, conductor_normalize(order))
        self.order = m
        self.rows = rows
        self.cols = cols
        self.entries = tuple(lift(x, m) for x in flat)

    @classmethod
    def _raw(cls, order: int, rows: int, cols: int, entries) -> "CycMatrix":
        obj = object.__new__(cls)
        obj.order, obj.rows, obj.cols, obj.entries = order, rows, cols, tuple(entries)
        return obj

    @classmethod
    def identity(cls, k: int, order: int = 1) -> "CycMatrix":
        m = conductor_normalize(order)
        one, zero = CycNum.one(m), CycNum.zero(m)
        return cls._raw(m, k, k, [one if i == j else zero for i in range(k) for j in range(k)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None, order: int = 1) -> "CycMatrix":
        cols = rows if cols is None else cols
        m = conductor_normalize(order)
        return cls._raw(m, rows, cols, [CycNum.zero(m)] * (rows * cols))

    @classmethod
    def diag(cls, values: Iterable, order: int | None = None) -> "CycMatrix":
        values = list(values)
        k = len(values)
        zero = 0
        return cls([[values[i] if i == j else zero for j in range(k)] for i in range(k)], order)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[CycNum, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[CycNum]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def lift(self, m: int) -> "CycMatrix":
        m = conductor_normalize(m)
        if m == self.order:
            return self
        return CycMatrix._raw(m, self.rows, self.cols, [lift(x, m) for x in self.entries])

    def descend(self, m: int) -> "CycMatrix":
        """Same matrix with entries rewritten in Q(zeta_m); FieldError if impossible."""
        m = conductor_normalize(m)
        if m == self.order:
            return self
        return CycMatrix._raw(m, self.rows, self.cols, [descend(x, m) for x in self.entries])

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries)

    def map(self, fn) -> "CycMatrix":
        return CycMatrix([[fn(x) for x in self.row(i)] for i in range(self.rows)])

    def transpose(self) -> "CycMatrix":
        return CycMatrix._raw(self.order, self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __add__(self, other):
        return mat_add(self, other)

    def __sub__(self, other):
        return mat_add(self, mat_neg(other))

    def __neg__(self):
        return mat_neg(self)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __mul__(self, scalar):
        if isinstance(scalar, CycMatrix):
            return mat_mul(self, scalar)
        return mat_scale(scalar, self)

    def __rmul__(self, scalar):
        return mat_scale(scalar, self)

    def __pow__(self, k: int):
        return mat_pow(self, k)

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, b = _common(self, other)
        return a.entries == b.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(_short(x) for x in self.row(i)) for i in range(self.rows))
        return f"CycMatrix[{self.rows}x{self.cols}, m={self.order}]({body})"


def _short(x: CycNum) -> str:
    r = repr(x)
    return r[len("CycNum("):-1]


def _common(a: CycMatrix, b: CycMatrix):
    if a.order == b.order:
        return a, b
    m = lcm(a.order, b.order)
    return a.lift(m), b.lift(m)


def _check_square(A: CycMatrix):
    if not A.is_square:
        raise DimensionError(f"expected a square matrix, got {A.rows}x{A.cols}")


def mat_add(A: CycMatrix, B: CycMatrix) -> CycMatrix:
    if A.shape != B.shape:
        raise DimensionError(f"cannot add {A.rows}x{A.cols} and {B.rows}x{B.cols}")
    A, B = _common(A, B)
    return CycMatrix._raw(A.order, A.rows, A.cols, [x + y for x, y in zip(A.entries, B.entries)])


def mat_neg(A: CycMatrix) -> CycMatrix:
    return CycMatrix._raw(A.order, A.rows, A.cols, [-x for x in A.entries])


def mat_sub(A: CycMatrix, B: CycMatrix) -> CycMatrix:
    return mat_add(A, mat_neg(B))


def mat_scale(c, A: CycMatrix) -> CycMatrix:
    c = as_cyc(c)
    m = lcm(c.order, A.order)
    A = A.lift(m)
    c = lift(c, m)
    return CycMatrix._raw(m, A.rows, A.cols, [c * x for x in A.entries])


def _integer_form(A: CycMatrix):
    """Common denominator and integer coefficient vectors of every entry."""
    den = lcm(*(x.den for x in A.entries)) if A.entries else 1
    ints = [tuple(c * (den // x.den) for c in x.num) if x.den != den else x.num for x in A.entries]
    return den, ints


def mat_mul(A: CycMatrix, B: CycMatrix) -> CycMatrix:
    if A.cols != B.rows:
        raise DimensionError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    A, B = _common(A, B)
    m = A.order
    da, ia = _integer_form(A)
    db, ib = _integer_form(B)
    den = da * db
    n, k, p = A.rows, A.cols, B.cols
    out = []
    if m == 1:
        for i in range(n):
            arow = [ia[i * k + l][0] for l in range(k)]
            for j in range(p):
                s = 0
                for l in range(k):
                    a = arow[l]
                    if a:
                        b = ib[l * p + j][0]
                        if b:
                            s += a * b
                out.append(CycNum._make(1, (s,), den))
        return CycMatrix._raw(1, n, p, out)
    field = _field(m)
    d = field.degree
    zero = field.zero
    for i in range(n):
        arow = ia[i * k:(i + 1) * k]
        for j in range(p):
            acc = [0] * (2 * d - 1)
            for l in range(k):
                a = arow[l]
                if a == zero:
                    continue
                b = ib[l * p + j]
                if b == zero:
                    continue
                for s, av in enumerate(a):
                    if av:
                        for t, bv in enumerate(b):
                            if bv:
                                acc[s + t] += av * bv
            out.append(CycNum._make(m, field.reduce(acc), den))
    return CycMatrix._raw(m, n, p, out)


def mat_pow(A: CycMatrix, k: int) -> CycMatrix:
    _check_square(A)
    if k < 0:
        return mat_pow(inverse(A), -k)
    result = CycMatrix.identity(A.rows, A.order)
    base = A
    first = True
    while k:
        if k & 1:
            result = base if first else mat_mul(result, base)
            first = False
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def powers(A: CycMatrix, top: int) -> list[CycMatrix]:
    """[A^0, A^1, ..., A^top]."""
    _check_square(A)
    out = [CycMatrix.identity(A.rows, A.order)]
    for _ in range(top):
        out.append(A if len(out) == 1 else mat_mul(out[-1], A))
    return out


def block_diag(blocks: Sequence[CycMatrix]) -> CycMatrix:
    for b in blocks:
        if not b.is_square:
            raise DimensionError(f"block_diag needs square blocks, got {b.rows}x{b.cols}")
    m = lcm(*(b.order for b in blocks)) if blocks else 1
    size = sum(b.rows for b in blocks)
    zero = CycNum.zero(m)
    entries = [zero] * (size * size)
    off = 0
    for b in blocks:
        b = b.lift(m)
        for i in range(b.rows):
            for j in range(b.cols):
                entries[(off + i) * size + off + j] = b[i, j]
        off += b.rows
    return CycMatrix._raw(m, size, size, entries)


def block(grid: Sequence[Sequence[CycMatrix]]) -> CycMatrix:
    """Assemble a matrix from a rectangular grid of compatible blocks."""
    heights = [row[0].rows for row in grid]
    widths = [b.cols for b in grid[0]]
    for row in grid:
        if [b.rows for b in row] != [row[0].rows] * len(row) or [b.cols for b in row] != widths:
            raise DimensionError("incompatible block sizes")
    m = lcm(*(b.order for row in grid for b in row))
    out_rows = []
    for bi, row in enumerate(grid):
        lifted = [b.lift(m) for b in row]
        for i in range(heights[bi]):
            r = []
            for b in lifted:
                r.extend(b.row(i))
            out_rows.append(r)
    return CycMatrix._raw(m, sum(heights), sum(widths), [x for r in out_rows for x in r])


def submatrix(A: CycMatrix, r0: int, r1: int, c0: int, c1: int) -> CycMatrix:
    return CycMatrix._raw(A.order, r1 - r0, c1 - c0, [A[i, j] for i in range(r0, r1) for j in range(c0, c1)])


def trace(A: CycMatrix) -> CycNum:
    _check_square(A)
    total = CycNum.zero(A.order)
    for i in range(A.rows):
        total = total + A[i, i]
    return lift(total, A.order)


def _eliminate(rows: list[list[CycNum]], ncols: int):
    """Row-reduce in place to reduced echelon form over the first ``ncols`` columns.

    Returns the pivot columns and the determinant multiplier accumulated from
    row swaps and pivot scalings (only meaningful for full square reductions).
    """
    pivots: list[int] = []
    scale = CycNum.one(1)
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            scale = -scale
        p = rows[r][c]
        scale = scale * p
        inv = p.inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if not f.is_zero():
                    rows[i] = [x - f * y if not y.is_zero() else x for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots, scale


def rref(A: CycMatrix) -> tuple[CycMatrix, list[int]]:
    rows = A.to_rows()
    pivots, _ = _eliminate(rows, A.cols)
    return CycMatrix(rows, A.order) if rows else A, pivots


def rank(A: CycMatrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    pivots, _ = _eliminate(A.to_rows(), A.cols)
    return len(pivots)


def det(A: CycMatrix) -> CycNum:
    _check_square(A)
    if A.rows == 0:
        return CycNum.one(A.order)
    pivots, scale = _eliminate(A.to_rows(), A.cols)
    if len(pivots) < A.rows:
        return CycNum.zero(A.order)
    return lift(scale, A.order)


def inverse(A: CycMatrix) -> CycMatrix:
    _check_square(A)
    k = A.rows
    one, zero = CycNum.one(A.order), CycNum.zero(A.order)
    rows = [list(A.row(i)) + [one if i == j else zero for j in range(k)] for i in range(k)]
    pivots, _ = _eliminate(rows, k)
    if len(pivots) < k:
        raise SingularMatrixError("matrix is singular")
    return CycMatrix._raw(A.order, k, k, [lift(x, A.order) for r in rows for x in r[k:]])


def column_basis(A: CycMatrix) -> CycMatrix:
    """Columns of ``A`` at the pivot positions: a basis of its column space."""
    _, pivots = rref(A)
    return CycMatrix._raw(A.order, A.rows, len(pivots), [A[i, j] for i in range(A.rows) for j in pivots])


def poly_eval(p: Sequence, A: CycMatrix) -> CycMatrix:
    """Horner evaluation of ``p`` (coefficients lowest degree first) at ``A``."""
    _check_square(A)
    coeffs = [as_cyc(c) for c in p]
    m = lcm(A.order, *(c.order for c in coeffs)) if coeffs else A.order
    A = A.lift(m)
    ident = CycMatrix.identity(A.rows, m)
    result = CycMatrix.zeros(A.rows, A.rows, m)
    for c in reversed(coeffs):
        result = mat_add(mat_mul(result, A), mat_scale(c, ident))
    return result


def is_npotent(A: CycMatrix, n: int) -> bool:
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    _check_square(A)
    return mat_pow(A, n) == A


def is_idempotent(A: CycMatrix) -> bool:
    return is_npotent(A, 2)


def companion(monic: Sequence) -> CycMatrix:
    """Companion matrix of x^d + c_(d-1) x^(d-1) + ... + c_0 (coefficients low to high).

    Ones on the subdiagonal and -c_j down the last column, so for x^2+x+1 this
    is [[0, -1], [1, -1]].
    """
    coeffs = [as_cyc(c) for c in monic]
    if coeffs[-1] != 1:
        raise ValueError("companion matrix needs a monic polynomial")
    d = len(coeffs) - 1
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = -coeffs[i]
    return CycMatrix(rows, lcm(*(c.order for c in coeffs)))


def rational_matrix(rows: Sequence[Sequence]) -> CycMatrix:
    return CycMatrix([[Fraction(v) for v in r] for r in rows])


def integer_trace(A: CycMatrix) -> int:
    """Trace as an int; ValueError if it is not an integer."""
    t = trace(A).to_fraction()
    if t.denominator != 1:
        raise ValueError(f"trace {t} is not an integer")
    return int(t)


def frobenius_norm(A: CycMatrix, precision: int | None = None) -> float:
    total = 0.0
    for x in A.entries:
        v, _ = embed_complex(x, precision)
        total += abs(v) ** 2
    return math.sqrt(total)
