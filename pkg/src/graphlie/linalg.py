"""Exact rational linear algebra on sparse matrices.

Every coefficient in this package is a fractions.Fraction; there is no
floating point and no tolerance anywhere. Rows of sparse matrices and
sparse vectors are dicts mapping an index to a nonzero Fraction. Dense
vectors are lists of Fractions.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(value) -> Fraction:
    """Coerce an int, a Fraction, or a string like "3" or "-2/7".

    Floats are rejected so that inexact values cannot leak in.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def frac_str(value: Fraction) -> str:
    """Canonical serialization "p/q" with q > 0 and gcd(p, q) = 1."""
    return f"{value.numerator}/{value.denominator}"


def vec_to_dict(vec) -> dict:
    return {i: frac(c) for i, c in enumerate(vec) if c}


def dict_to_vec(d: dict, length: int) -> list:
    out = [ZERO] * length
    for i, c in d.items():
        out[i] = c
    return out


class RatMatrix:
    """Sparse matrix over the rationals; entries maps (row, col) to a nonzero Fraction."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"entry ({r},{c}) outside {rows}x{cols} matrix")
                v = frac(v)
                if v:
                    self.entries[(r, c)] = v

    @classmethod
    def from_rows(cls, data, cols: int | None = None) -> "RatMatrix":
        data = [list(row) for row in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        entries = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                v = frac(v)
                if v:
                    entries[(r, c)] = v
        return cls(len(data), cols, entries)

    @classmethod
    def from_row_dicts(cls, row_dicts, cols: int) -> "RatMatrix":
        entries = {}
        row_dicts = list(row_dicts)
        for r, row in enumerate(row_dicts):
            for c, v in row.items():
                v = frac(v)
                if v:
                    entries[(r, c)] = v
        return cls(len(row_dicts), cols, entries)

    def row_dicts(self) -> list:
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def to_rows(self) -> list:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def matmul(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        other_rows = other.row_dicts()
        acc: dict = {}
        for (r, c), v in self.entries.items():
            for c2, w in other_rows[c].items():
                key = (r, c2)
                s = acc.get(key, ZERO) + v * w
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return RatMatrix(self.rows, other.cols, acc)

    def mul_vec(self, vec) -> list:
        """Matrix times dense column vector."""
        if len(vec) != self.cols:
            raise ValueError("vector length does not match")
        out = [ZERO] * self.rows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] += v * vec[c]
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(sorted(self.entries.items()))))

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


class RowReducer:
    """Incremental exact row reduction.

    Rows are sparse dicts. Stored pivot rows are normalized to a unit pivot;
    in full mode they are also mutually reduced, so rows_sorted() is the
    reduced row echelon basis of everything added so far. The pivot of a row
    is its least nonzero column, which makes the result deterministic.
    """

    def __init__(self, full: bool = True):
        self.pivots: dict = {}
        self.full = full

    def reduce(self, row: dict) -> dict:
        row = {c: v for c, v in row.items() if v}
        while True:
            hit = None
            for c in row:
                if c in self.pivots and (hit is None or c < hit):
                    hit = c
            if hit is None:
                return row
            coef = row[hit]
            for c, v in self.pivots[hit].items():
                s = row.get(c, ZERO) - coef * v
                if s:
                    row[c] = s
                else:
                    row.pop(c, None)

    def add(self, row: dict) -> bool:
        """Reduce row against the current basis; keep it if independent."""
        red = self.reduce(row)
        if not red:
            return False
        p = min(red)
        inv = ONE / red[p]
        red = {c: v * inv for c, v in red.items()}
        if self.full:
            for q, prow in self.pivots.items():
                if p in prow:
                    coef = prow[p]
                    for c, v in red.items():
                        s = prow.get(c, ZERO) - coef * v
                        if s:
                            prow[c] = s
                        else:
                            prow.pop(c, None)
        self.pivots[p] = red
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rows_sorted(self) -> list:
        return [dict(self.pivots[p]) for p in sorted(self.pivots)]


def rref(matrix: RatMatrix):
    """Reduced row echelon form.

    Returns (R, pivot_columns, rank); R has the shape of the input with the
    RREF rows on top and zero rows below. Gauss-Jordan with the pivot taken
    as the first nonzero column, so the output is deterministic.
    """
    red = RowReducer(full=True)
    for row in matrix.row_dicts():
        red.add(row)
    rows = red.rows_sorted()
    out = RatMatrix.from_row_dicts(
        rows + [dict() for _ in range(matrix.rows - len(rows))], matrix.cols
    )
    return out, sorted(red.pivots), len(rows)


def kernel_basis(matrix: RatMatrix) -> "Subspace":
    """Right kernel {x : Mx = 0} as a subspace of dimension cols - rank."""
    reduced, pivot_cols, rank = rref(matrix)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(matrix.cols) if c not in pivot_set]
    rows = reduced.row_dicts()[:rank]
    basis = []
    for f in free_cols:
        vec = {f: ONE}
        for p, row in zip(pivot_cols, rows):
            v = row.get(f, ZERO)
            if v:
                vec[p] = -v
        basis.append(vec)
    return Subspace(matrix.cols, basis)


class Subspace:
    """A subspace of Q^n held as a reduced row echelon basis. Immutable."""

    def __init__(self, ambient_dim: int, rows=None):
        if ambient_dim < 0:
            raise ValueError("ambient dimension must be nonnegative")
        self.ambient_dim = ambient_dim
        self._red = RowReducer(full=True)
        for row in rows or []:
            if not isinstance(row, dict):
                row = vec_to_dict(row)
            for c in row:
                if not 0 <= c < ambient_dim:
                    raise ValueError("vector does not fit the ambient dimension")
            self._red.add(row)

    @property
    def dim(self) -> int:
        return self._red.rank

    def basis_rows(self) -> list:
        return self._red.rows_sorted()

    def basis_matrix(self) -> RatMatrix:
        return RatMatrix.from_row_dicts(self.basis_rows(), self.ambient_dim)

    def contains(self, vec) -> bool:
        if not isinstance(vec, dict):
            if len(vec) != self.ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
            vec = vec_to_dict(vec)
        return self._red.contains(vec)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self._red.pivots == other._red.pivots
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def full_space(n: int) -> Subspace:
    return Subspace(n, [{i: ONE} for i in range(n)])


def zero_space(n: int) -> Subspace:
    return Subspace(n, [])


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return Subspace(a.ambient_dim, a.basis_rows() + b.basis_rows())


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection, computed via the kernel of the stacked system.

    A vector in both row spaces is alpha^T A = beta^T B; the pairs
    (alpha, -beta) form the left kernel of the stacked matrix.
    """
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    arows = a.basis_rows()
    brows = b.basis_rows()
    stacked = RatMatrix.from_row_dicts(arows + brows, a.ambient_dim)
    left_kernel = kernel_basis(stacked.transpose())
    vectors = []
    for coeffs in left_kernel.basis_rows():
        vec: dict = {}
        for i, alpha in coeffs.items():
            if i < len(arows):
                for c, v in arows[i].items():
                    s = vec.get(c, ZERO) + alpha * v
                    if s:
                        vec[c] = s
                    else:
                        vec.pop(c, None)
        vectors.append(vec)
    return Subspace(a.ambient_dim, vectors)


def subspace_contains(a: Subspace, vec) -> bool:
    return a.contains(vec)
