"""Exact linear algebra over the rationals.

Dense matrices of ``fractions.Fraction`` entries are the carrier for every
linear map in this package.  All results are exact; there is no floating
point anywhere.  The elimination routines clear denominators and run a
fraction-free integer Gauss-Jordan internally (cross-multiplication with
per-row gcd reduction), which is an order of magnitude faster in CPython
than eliminating with Fraction arithmetic directly.

Conventions, fixed once so matrices are reproducible across runs:

* vectors are columns; a linear map ``V -> W`` is a ``dim W x dim V`` matrix,
* pivot selection takes the first nonzero entry in scan order,
* tensor products use the lexicographic pairing of basis indices,
* matrices with 0 rows or 0 columns are legal and arise constantly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Union

Rat = Fraction

RatLike = Union[int, str, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rat(x: RatLike) -> Fraction:
    """Coerce an int, "a/b" string, or Fraction to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rat_to_str(q: Fraction) -> str:
    """Canonical string form: "a/b" with b > 0, or "a" when b == 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class QMatrix:
    """Dense matrix of exact rationals, immutable after construction."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows: int, cols: int, entries: Iterable[RatLike]):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        e = [rat(x) for x in entries]
        if len(e) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(e)}")
        self._e = e

    # construction helpers

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[RatLike]], cols: Optional[int] = None) -> "QMatrix":
        rows = len(data)
        if rows == 0:
            return cls(0, 0 if cols is None else cols, [])
        if cols is None:
            cols = len(data[0])
        flat: list[RatLike] = []
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(rows, cols, flat)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m._e[i * n + i] = _ONE
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._e = [_ZERO] * (rows * cols)
        return m

    @classmethod
    def column(cls, values: Sequence[RatLike]) -> "QMatrix":
        return cls(len(values), 1, values)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[RatLike]], rows: Optional[int] = None) -> "QMatrix":
        if not columns:
            return cls(0 if rows is None else rows, 0, [])
        if rows is None:
            rows = len(columns[0])
        m = cls.zeros(rows, len(columns))
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("ragged columns")
            for i, v in enumerate(col):
                m._e[i * m.cols + j] = rat(v)
        return m

    # accessors

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._e[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        c = self.cols
        return self._e[i * c:(i + 1) * c]

    def col(self, j: int) -> list[Fraction]:
        c = self.cols
        return self._e[j::c] if c else []

    def column_vector(self, j: int) -> "QMatrix":
        return QMatrix.column(self.col(j))

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    # algebra

    def transpose(self) -> "QMatrix":
        t = QMatrix.zeros(self.cols, self.rows)
        e, c = self._e, self.cols
        for i in range(self.rows):
            base = i * c
            for j in range(c):
                t._e[j * self.rows + i] = e[base + j]
        return t

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape()} @ {other.shape()}")
        out = QMatrix.zeros(self.rows, other.cols)
        a, b, o = self._e, other._e, out._e
        n, m, k = self.rows, other.cols, self.cols
        for i in range(n):
            abase = i * k
            obase = i * m
            for t in range(k):
                v = a[abase + t]
                if not v:
                    continue
                bbase = t * m
                for j in range(m):
                    w = b[bbase + j]
                    if w:
                        o[obase + j] += v * w
        return out

    def apply(self, vec: Sequence[Fraction]) -> list[Fraction]:
        """Matrix times column vector, returned as a plain list."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [_ZERO] * self.rows
        e, c = self._e, self.cols
        for i in range(self.rows):
            base = i * c
            s = _ZERO
            for j, v in enumerate(vec):
                if v:
                    w = e[base + j]
                    if w:
                        s += w * v
            out[i] = s
        return out

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if self.shape() != other.shape():
            raise ValueError("shape mismatch in addition")
        out = QMatrix.zeros(self.rows, self.cols)
        out._e = [x + y for x, y in zip(self._e, other._e)]
        return out

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        if self.shape() != other.shape():
            raise ValueError("shape mismatch in subtraction")
        out = QMatrix.zeros(self.rows, self.cols)
        out._e = [x - y for x, y in zip(self._e, other._e)]
        return out

    def __neg__(self) -> "QMatrix":
        out = QMatrix.zeros(self.rows, self.cols)
        out._e = [-x for x in self._e]
        return out

    def scale(self, c: RatLike) -> "QMatrix":
        c = rat(c)
        out = QMatrix.zeros(self.rows, self.cols)
        out._e = [c * x for x in self._e]
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self._e == other._e

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self._e)))

    def is_zero(self) -> bool:
        return not any(self._e)

    def __repr__(self) -> str:
        if self.rows * self.cols > 64:
            return f"QMatrix({self.rows}x{self.cols})"
        body = "; ".join(" ".join(rat_to_str(v) for v in self.row(i)) for i in range(self.rows))
        return f"QMatrix({self.rows}x{self.cols}: {body})"


def hstack(*mats: QMatrix) -> QMatrix:
    mats = tuple(m for m in mats)
    if not mats:
        raise ValueError("nothing to stack")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("row count mismatch in hstack")
    out_rows = []
    for i in range(rows):
        r: list[Fraction] = []
        for m in mats:
            r.extend(m.row(i))
        out_rows.append(r)
    return QMatrix.from_rows(out_rows, cols=sum(m.cols for m in mats))


def vstack(*mats: QMatrix) -> QMatrix:
    mats = tuple(m for m in mats)
    if not mats:
        raise ValueError("nothing to stack")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("column count mismatch in vstack")
    rows: list[list[Fraction]] = []
    for m in mats:
        rows.extend(m.to_rows())
    return QMatrix.from_rows(rows, cols=cols)


# ---------------------------------------------------------------------------
# integer fraction-free elimination core
# ---------------------------------------------------------------------------

def _int_rows(m: QMatrix) -> list[list[int]]:
    """Clear denominators row by row; the row space is unchanged."""
    out = []
    for i in range(m.rows):
        row = m.row(i)
        den = 1
        for v in row:
            d = v.denominator
            if d != 1:
                den = den * d // gcd(den, d)
        if den == 1:
            out.append([v.numerator for v in row])
        else:
            out.append([v.numerator * (den // v.denominator) for v in row])
    return out


def _row_gcd_reduce(row: list[int]) -> None:
    g = 0
    for v in row:
        if v:
            g = gcd(g, -v if v < 0 else v)
            if g == 1:
                return
    if g > 1:
        for j, v in enumerate(row):
            if v:
                row[j] = v // g


_GROWTH_LIMIT = 1 << 96


def _combine(row: list[int], prow: list[int], pnz: list[int],
             pval: int, v: int, start: int, ncols: int) -> None:
    """row := (pval/g) * row - (v/g) * prow, integer and in place.

    When the pivot divides the eliminated entry only the pivot row's nonzero
    columns are touched, which keeps sparse eliminations near-linear.
    """
    g = gcd(pval, v)
    a = pval // g
    b = v // g
    if a == 1:
        for j in pnz:
            row[j] -= b * prow[j]
        if b > _GROWTH_LIMIT or -b > _GROWTH_LIMIT:
            _row_gcd_reduce(row)
    elif a == -1:
        for j in range(start, ncols):
            row[j] = -row[j]
        for j in pnz:
            row[j] -= b * prow[j]
        if b > _GROWTH_LIMIT or -b > _GROWTH_LIMIT:
            _row_gcd_reduce(row)
    else:
        for j in range(start, ncols):
            w = row[j]
            if w:
                row[j] = a * w
        for j in pnz:
            row[j] -= b * prow[j]
        if abs(a) > 1:
            for j in range(start, ncols):
                w = row[j]
                if w and (w > _GROWTH_LIMIT or -w > _GROWTH_LIMIT):
                    _row_gcd_reduce(row)
                    break


def _eliminate(rows: list[list[int]], ncols: int, reduced: bool) -> list[int]:
    """In-place integer row elimination; returns the pivot columns.

    Forward pass produces row echelon form; with ``reduced`` the entries
    above each pivot are cleared as well, so each column either is a pivot
    column (single nonzero) or only has entries in pivot rows.
    """
    pivots: list[int] = []
    nrows = len(rows)
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[piv], rows[r] = rows[r], rows[piv]
        prow = rows[r]
        pval = prow[c]
        pnz = [j for j in range(c, ncols) if prow[j]]
        for i in range(r + 1, nrows):
            row = rows[i]
            v = row[c]
            if v:
                _combine(row, prow, pnz, pval, v, c, ncols)
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    if reduced:
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            prow = rows[r]
            pval = prow[c]
            pnz = [j for j in range(c, ncols) if prow[j]]
            for i in range(r):
                row = rows[i]
                v = row[c]
                if v:
                    _combine(row, prow, pnz, pval, v, 0, ncols)
    return pivots


def _rref_rows(m: QMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon rows (Fractions, pivots normalized to 1)."""
    rows = _int_rows(m)
    pivots = _eliminate(rows, m.cols, reduced=True)
    out: list[list[Fraction]] = []
    for r, c in enumerate(pivots):
        pv = rows[r][c]
        out.append([Fraction(v, pv) if v else _ZERO for v in rows[r]])
    for r in range(len(pivots), m.rows):
        out.append([_ZERO] * m.cols)
    return out, pivots


def rref(m: QMatrix) -> tuple[QMatrix, list[int]]:
    """Reduced row echelon form and the pivot columns in increasing order."""
    rows, pivots = _rref_rows(m)
    return QMatrix.from_rows(rows, cols=m.cols), pivots


def rank(m: QMatrix) -> int:
    rows = _int_rows(m)
    return len(_eliminate(rows, m.cols, reduced=False))


def rref_with_transform(m: QMatrix) -> tuple[QMatrix, list[int], QMatrix]:
    """rref ``R``, pivots, and an invertible ``U`` with ``U @ m == R``.

    ``U`` records the row operations performed, so ``m`` can be reassembled
    from ``R`` as ``U^-1 @ R``.
    """
    n = m.cols
    aug = hstack(m, QMatrix.identity(m.rows))
    rows = _int_rows(aug)
    # eliminate on the left block only; the right block tags along
    pivots: list[int] = []
    nrows = len(rows)
    width = n + m.rows
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[piv], rows[r] = rows[r], rows[piv]
        prow = rows[r]
        pval = prow[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            v = row[c]
            if not v:
                continue
            for j in range(width):
                pv = prow[j]
                row[j] = pval * row[j] - v * pv if pv else pval * row[j]
            _row_gcd_reduce(row)
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        prow = rows[r]
        pval = prow[c]
        for i in range(r):
            row = rows[i]
            v = row[c]
            if not v:
                continue
            for j in range(width):
                pv = prow[j]
                row[j] = pval * row[j] - v * pv if pv else pval * row[j]
            _row_gcd_reduce(row)
    R_rows, U_rows = [], []
    for r in range(nrows):
        if r < len(pivots):
            pv = rows[r][pivots[r]]
        else:
            pv = next((v for v in rows[r][n:] if v), 1)
        R_rows.append([Fraction(v, pv) if v else _ZERO for v in rows[r][:n]])
        U_rows.append([Fraction(v, pv) if v else _ZERO for v in rows[r][n:]])
    return (QMatrix.from_rows(R_rows, cols=n), pivots,
            QMatrix.from_rows(U_rows, cols=m.rows))


def kernel_basis(m: QMatrix) -> QMatrix:
    """Columns form a basis of the null space of ``m``.

    The basis is in reduced form: the vector for free column ``j`` has a 1
    in coordinate ``j``, its other nonzero coordinates sit at pivot columns.
    """
    rows, pivots = _rref_rows(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    out = QMatrix.zeros(m.cols, len(free))
    for k, j in enumerate(free):
        out._e[j * len(free) + k] = _ONE
        for r, c in enumerate(pivots):
            v = rows[r][j]
            if v:
                out._e[c * len(free) + k] = -v
    return out


def nullity(m: QMatrix) -> int:
    return m.cols - rank(m)


def solve(m: QMatrix, b: Union[QMatrix, Sequence[RatLike]]) -> Optional[QMatrix]:
    """A witness ``x`` with ``m @ x == b``, or None when inconsistent."""
    if not isinstance(b, QMatrix):
        b = QMatrix.column(list(b))
    if b.rows != m.rows or b.cols != 1:
        raise ValueError("right-hand side has wrong shape")
    x = solve_matrix(m, b)
    return x


def solve_matrix(a: QMatrix, b: QMatrix) -> Optional[QMatrix]:
    """A witness ``X`` with ``a @ X == b``, or None when inconsistent."""
    if a.rows != b.rows:
        raise ValueError(f"shape mismatch: {a.shape()} X = {b.shape()}")
    rows, pivots = _rref_rows(hstack(a, b))
    # pivot in the b block means an inconsistent column
    if any(c >= a.cols for c in pivots):
        return None
    out = QMatrix.zeros(a.cols, b.cols)
    for r, c in enumerate(pivots):
        for j in range(b.cols):
            v = rows[r][a.cols + j]
            if v:
                out._e[c * b.cols + j] = v
    return out


def cokernel(m: QMatrix) -> tuple[QMatrix, int]:
    """Projection ``P`` from the codomain of ``m`` with kernel image(m).

    ``P`` has full row rank ``rows(m) - rank(m)``; its rows are a basis of
    the left null space, so ``P @ m == 0`` and ``ker P == im m``.
    """
    p = kernel_basis(m.transpose()).transpose()
    return p, p.rows


def column_space_basis(m: QMatrix) -> tuple[QMatrix, list[int]]:
    """The pivot columns of ``m``: a basis of its column space."""
    _, pivots = _rref_rows(m)
    return QMatrix.from_columns([m.col(j) for j in pivots], rows=m.rows), pivots


def kronecker(a: QMatrix, b: QMatrix) -> QMatrix:
    """Tensor product under the lexicographic basis pairing."""
    out = QMatrix.zeros(a.rows * b.rows, a.cols * b.cols)
    oc = out.cols
    for i in range(a.rows):
        for j in range(a.cols):
            v = a[i, j]
            if not v:
                continue
            rbase = i * b.rows
            cbase = j * b.cols
            for k in range(b.rows):
                obase = (rbase + k) * oc + cbase
                bbase = k * b.cols
                for l in range(b.cols):
                    w = b._e[bbase + l]
                    if w:
                        out._e[obase + l] = v * w
    return out


def right_inverse(p: QMatrix) -> QMatrix:
    """A section of a surjective matrix: ``p @ s == identity``."""
    s = solve_matrix(p, QMatrix.identity(p.rows))
    if s is None:
        raise ValueError("matrix has no right inverse (not surjective)")
    return s
