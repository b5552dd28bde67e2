"""Sparse exact matrices.

Entries are stored as ``{row: {col: Fraction}}`` with zeros never stored.
Tensor products use the row-major index ``a * dim2 + b``.
"""

from __future__ import annotations

from fractions import Fraction


class LinOp:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int | None = None, rows=None):
        self.nrows = nrows
        self.ncols = nrows if ncols is None else ncols
        self.rows: dict[int, dict[int, Fraction]] = {}
        if rows:
            for r, row in rows.items():
                clean = {c: Fraction(v) for c, v in row.items() if v != 0}
                if clean:
                    self.rows[r] = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nrows, ncols=None):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, dim):
        return cls(dim, dim, {i: {i: Fraction(1)} for i in range(dim)})

    @classmethod
    def unit(cls, dim, i, j):
        """Matrix unit ``E_ij`` (0-based)."""
        return cls(dim, dim, {i: {j: Fraction(1)}})

    @classmethod
    def diagonal(cls, values):
        values = list(values)
        return cls(len(values), len(values), {i: {i: v} for i, v in enumerate(values)})

    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        rows: dict[int, dict[int, Fraction]] = {}
        for (r, c), v in entries.items():
            if v != 0:
                rows.setdefault(r, {})[c] = Fraction(v)
        op = cls(nrows, ncols)
        op.rows = rows
        return op

    # -- access -------------------------------------------------------

    def __getitem__(self, rc) -> Fraction:
        r, c = rc
        return self.rows.get(r, {}).get(c, Fraction(0))

    def entries(self):
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                yield (r, c), row[c]

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def columns(self) -> dict[int, dict[int, Fraction]]:
        cols: dict[int, dict[int, Fraction]] = {}
        for r, row in self.rows.items():
            for c, v in row.items():
                cols.setdefault(c, {})[r] = v
        return cols

    def to_dense(self):
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries():
            out[r][c] = v
        return out

    # -- arithmetic ---------------------------------------------------

    def _check_same_shape(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError(
                f"shape mismatch {self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}")

    def __add__(self, other: "LinOp") -> "LinOp":
        self._check_same_shape(other)
        rows = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            target = rows.setdefault(r, {})
            for c, v in row.items():
                s = target.get(c, 0) + v
                if s:
                    target[c] = s
                else:
                    target.pop(c, None)
            if not target:
                del rows[r]
        out = LinOp(self.nrows, self.ncols)
        out.rows = rows
        return out

    def __neg__(self) -> "LinOp":
        return self.scale(-1)

    def __sub__(self, other: "LinOp") -> "LinOp":
        return self + (-other)

    def scale(self, s) -> "LinOp":
        s = Fraction(s)
        out = LinOp(self.nrows, self.ncols)
        if s:
            out.rows = {r: {c: v * s for c, v in row.items()} for r, row in self.rows.items()}
        return out

    def __rmul__(self, s) -> "LinOp":
        return self.scale(s)

    def __matmul__(self, other: "LinOp") -> "LinOp":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.nrows}x{self.ncols} with {other.nrows}x{other.ncols}")
        orows = other.rows
        rows = {}
        for r, row in self.rows.items():
            acc: dict[int, Fraction] = {}
            for k, a in row.items():
                brow = orows.get(k)
                if not brow:
                    continue
                for c, b in brow.items():
                    acc[c] = acc.get(c, 0) + a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                rows[r] = acc
        out = LinOp(self.nrows, other.ncols)
        out.rows = rows
        return out

    def __pow__(self, k: int) -> "LinOp":
        if self.nrows != self.ncols or k < 0:
            raise ValueError("only non-negative powers of square operators")
        out = LinOp.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    def apply(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        """Act on a sparse column vector ``{index: value}``."""
        out: dict[int, Fraction] = {}
        for r, row in self.rows.items():
            s = sum((v * vec[c] for c, v in row.items() if c in vec), Fraction(0))
            if s:
                out[r] = s
        return out

    def kron(self, other: "LinOp") -> "LinOp":
        d2r, d2c = other.nrows, other.ncols
        rows: dict[int, dict[int, Fraction]] = {}
        for r1, row1 in self.rows.items():
            for r2, row2 in other.rows.items():
                target = rows.setdefault(r1 * d2r + r2, {})
                for c1, a in row1.items():
                    for c2, b in row2.items():
                        target[c1 * d2c + c2] = a * b
        out = LinOp(self.nrows * d2r, self.ncols * d2c)
        out.rows = rows
        return out

    def transpose(self) -> "LinOp":
        out = LinOp(self.ncols, self.nrows)
        out.rows = self.columns()
        return out

    def permute(self, perm_rows, perm_cols=None) -> "LinOp":
        """Relabel indices: entry ``(r, c)`` moves to ``(perm_rows[r], perm_cols[c])``."""
        perm_cols = perm_rows if perm_cols is None else perm_cols
        rows: dict[int, dict[int, Fraction]] = {}
        for r, row in self.rows.items():
            rows[perm_rows[r]] = {perm_cols[c]: v for c, v in row.items()}
        out = LinOp(self.nrows, self.ncols)
        out.rows = rows
        return out

    # -- comparison ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinOp):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.rows == other.rows

    __hash__ = None

    def first_difference(self, other: "LinOp"):
        """``((row, col), self_value, other_value)`` of the first mismatch, else None."""
        diff = self - other
        for rc, _ in diff.entries():
            return rc, self[rc], other[rc]
        return None

    def __repr__(self):
        return f"LinOp({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def commutator(a: LinOp, b: LinOp) -> LinOp:
    return a @ b - b @ a


def swap_permutation(d1: int, d2: int) -> list[int]:
    """Index map of the flip ``V1 (x) V2 -> V2 (x) V1``."""
    return [b * d1 + a for a in range(d1) for b in range(d2)]


def flip(op: LinOp, d1: int, d2: int) -> LinOp:
    """``P X P^-1`` for ``X`` on ``V1 (x) V2``; the result acts on ``V2 (x) V1``."""
    perm = swap_permutation(d1, d2)
    return op.permute(perm)
