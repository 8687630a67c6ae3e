"""Exact dense linear algebra over Q.

Elimination is fraction-free: each row is scaled to integers and reduced
with Bareiss' update, so intermediate entries stay integral.  Pivots are
chosen as the first nonzero entry in column order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from sympy import divisors

from .arith import as_rational, upoly_divmod, upoly_eval


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows*cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        flat = tuple(as_rational(x) for r in rows for x in r)
        return cls(len(rows), ncols, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def column(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch")
        return RationalMatrix(self.rows, self.cols,
                              tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionError("shape mismatch in product")
        out = []
        ocols = [other.column(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
        return RationalMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v) -> list:
        if len(v) != self.cols:
            raise DimensionError("vector length mismatch")
        return [sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
                for i in range(self.rows)]

    def scale_identity(self, c) -> "RationalMatrix":
        """Return ``self - c*I`` (square only)."""
        if self.rows != self.cols:
            raise DimensionError("not square")
        n = self.rows
        return RationalMatrix(n, n, tuple(
            self.entries[i * n + j] - (c if i == j else 0) for i in range(n) for j in range(n)))

    def stack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.cols:
            raise DimensionError("column count mismatch")
        return RationalMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)


def _integer_rows(M: RationalMatrix) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; returns rows and the product of the scale factors."""
    out = []
    scale = Fraction(1)
    for i in range(M.rows):
        r = M.row(i)
        den = 1
        for x in r:
            den = lcm(den, x.denominator)
        out.append([int(x * den) for x in r])
        scale *= den
    return out, scale


def _bareiss_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int], int]:
    """In-place fraction-free forward elimination.

    Returns (rows, pivot columns, sign of the row permutation).
    """
    nrows = len(rows)
    pivots: list[int] = []
    sign = 1
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            sign = -sign
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            a = rows[i][c]
            ri = rows[i]
            rr = rows[r]
            for j in range(c + 1, ncols):
                ri[j] = (piv * ri[j] - a * rr[j]) // prev
            ri[c] = 0
        # rows above the pivot block keep their values; later rows carry the Bareiss scale
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots, sign


def determinant(M: RationalMatrix) -> Fraction:
    """Exact determinant by Bareiss elimination."""
    if M.rows != M.cols:
        raise DimensionError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return Fraction(1)
    rows, scale = _integer_rows(M)
    rows, pivots, sign = _bareiss_echelon(rows, n)
    if len(pivots) < n:
        return Fraction(0)
    return Fraction(sign * rows[n - 1][n - 1]) / scale


def rank(M: RationalMatrix) -> int:
    rows, _ = _integer_rows(M)
    return len(_bareiss_echelon(rows, M.cols)[1])


def rref(M: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    rows, _ = _integer_rows(M)
    rows, pivots, _ = _bareiss_echelon(rows, M.cols)
    red = [[Fraction(x) for x in rows[i]] for i in range(len(pivots))]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        p = red[i][c]
        red[i] = [x / p for x in red[i]]
        for k in range(i):
            f = red[k][c]
            if f:
                red[k] = [a - f * b for a, b in zip(red[k], red[i])]
    return red, pivots


def nullspace(M: RationalMatrix) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column (ascending).

    Each vector has a 1 in its free column and 0 in the other free columns.
    """
    if M.cols == 0:
        return []
    red, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(v)
    return basis


def canonical_span(vectors, ncols: int | None = None) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced echelon basis of the span of ``vectors``; equal spans give equal output."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return ()
    red, _ = rref(RationalMatrix.from_rows(vectors))
    return tuple(tuple(r) for r in red)


def char_poly(M: RationalMatrix) -> list[Fraction]:
    """Characteristic polynomial det(tI - M), lowest degree first (Faddeev-LeVerrier)."""
    if M.rows != M.cols:
        raise DimensionError(f"characteristic polynomial of a non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = RationalMatrix.zeros(n, n)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        Mk = (M @ Mk).scale_identity(-coeffs[n - k + 1])
        AM = M @ Mk
        trace = sum((AM[i, i] for i in range(n)), Fraction(0))
        coeffs[n - k] = -trace / k
    return coeffs


def rational_roots(p) -> list[Fraction]:
    """All rational roots with multiplicity, ascending.

    Uses the rational root theorem on the primitive integer form of ``p``.
    """
    coeffs = [as_rational(c) for c in p]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("rational_roots of the zero polynomial")
    roots: list[Fraction] = []
    while len(coeffs) > 1 and coeffs[0] == 0:
        roots.append(Fraction(0))
        coeffs.pop(0)
    if len(coeffs) == 1:
        return sorted(roots)
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    cands = set()
    for a in divisors(abs(ints[0])):
        for b in divisors(abs(ints[-1])):
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    work: list = list(ints)
    for r in sorted(cands):
        while len(work) > 1 and upoly_eval(work, r) == 0:
            roots.append(r)
            work, rem = upoly_divmod(work, [-r, Fraction(1)])
            assert not rem
    return sorted(roots)


def rank_mod_p(rows, p: int) -> int:
    """Rank over F_p of an integer matrix given as a list of rows."""
    rows = [[x % p for x in r] for r in rows]
    ncols = len(rows[0]) if rows else 0
    rk = 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = pow(rows[rk][c], -1, p)
        prow = [x * inv % p for x in rows[rk]]
        rows[rk] = prow
        for i in range(rk + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], prow)]
        rk += 1
        if rk == len(rows):
            break
    return rk
