"""Exact sparse linear algebra over the rationals.

Elimination is row-incremental: each incoming row is reduced against the
pivot rows collected so far, and a surviving row contributes a new pivot at
its leading column.  The pivot-column set is therefore an invariant of the
row space, which makes ranks, kernels and the free-variables-zero particular
solution independent of the order rows are supplied in.
"""

from dataclasses import dataclass, field
from fractions import Fraction


class RationalMatrix:
    """Sparse matrix with Fraction entries, stored row-wise."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
                if v:
                    self.entries[(r, c)] = Fraction(v)

    @classmethod
    def from_dense(cls, data, cols=None):
        data = [list(row) for row in data]
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(
            len(data),
            ncols,
            {(r, c): v for r, row in enumerate(data) for c, v in enumerate(row) if v},
        )

    @classmethod
    def from_rows(cls, rows, cols):
        """Build from a list of ``{col: value}`` dicts."""
        entries = {}
        for r, row in enumerate(rows):
            for c, v in row.items():
                if v:
                    entries[(r, c)] = v
        return cls(len(rows), cols, entries)

    def row_dicts(self):
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def to_dense(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError("inner dimensions differ")
            by_row = {}
            for (r, c), v in other.entries.items():
                by_row.setdefault(r, []).append((c, v))
            acc = {}
            for (r, k), v in self.entries.items():
                for c, w in by_row.get(k, ()):
                    acc[(r, c)] = acc.get((r, c), 0) + v * w
            return RationalMatrix(self.rows, other.cols, acc)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("vector length differs from column count")
        out = [Fraction(0)] * self.rows
        for (r, c), v in self.entries.items():
            out[r] += v * vec[c]
        return out

    def is_zero(self):
        return not self.entries

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


@dataclass
class AffineSystem:
    matrix: RationalMatrix
    rhs: list

    def __post_init__(self):
        if len(self.rhs) != self.matrix.rows:
            raise ValueError("rhs length must equal the number of rows")


@dataclass
class AffineSolution:
    particular: list
    kernel: list = field(default_factory=list)


class _Inconsistent:
    def __bool__(self):
        return False

    def __repr__(self):
        return "INCONSISTENT"


INCONSISTENT = _Inconsistent()


class Echelon:
    """Incremental row echelon form with monic pivot rows."""

    def __init__(self, cols):
        self.cols = cols
        self.pivots = {}

    def reduce(self, row):
        row = {c: Fraction(v) for c, v in row.items() if v}
        pivots = self.pivots
        while True:
            hits = [c for c in row if c in pivots]
            if not hits:
                return row
            c = min(hits)
            f = row[c]
            for cc, v in pivots[c].items():
                s = row.get(cc, 0) - f * v
                if s:
                    row[cc] = s
                else:
                    row.pop(cc, None)

    def add(self, row):
        """Insert a row; return its leading column or None if dependent."""
        row = self.reduce(row)
        if not row:
            return None
        lead = min(row)
        inv = 1 / row[lead]
        self.pivots[lead] = {c: v * inv for c, v in row.items()}
        return lead

    @property
    def rank(self):
        return len(self.pivots)

    def rref(self):
        """Back-substitute so each pivot column is zero outside its row."""
        order = sorted(self.pivots, reverse=True)
        for p in order:
            prow = self.pivots[p]
            for q in order:
                if q >= p:
                    continue
                qrow = self.pivots[q]
                f = qrow.get(p)
                if not f:
                    continue
                for c, v in prow.items():
                    s = qrow.get(c, 0) - f * v
                    if s:
                        qrow[c] = s
                    else:
                        qrow.pop(c, None)
        return self.pivots


def _echelon(m, extra_col=None):
    ech = Echelon(m.cols + (1 if extra_col is not None else 0))
    rows = m.row_dicts()
    if extra_col is not None:
        for r, v in enumerate(extra_col):
            if v:
                rows[r][m.cols] = Fraction(v)
    for row in rows:
        if row:
            ech.add(row)
    return ech


def rank(m):
    return _echelon(m).rank


def _kernel_from(pivots, cols):
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * cols
        vec[f] = Fraction(1)
        for p, prow in pivots.items():
            v = prow.get(f)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def kernel_basis(m):
    """Basis of the right null space, one vector per non-pivot column."""
    ech = _echelon(m)
    return _kernel_from(ech.rref(), m.cols)


def solve_affine(system):
    """Solve ``matrix @ x = rhs`` exactly.

    Returns an AffineSolution whose particular solution has every free
    variable set to zero, or ``INCONSISTENT``.
    """
    m = system.matrix
    ech = _echelon(m, system.rhs)
    if m.cols in ech.pivots:
        return INCONSISTENT
    pivots = ech.rref()
    x = [Fraction(0)] * m.cols
    for p, prow in pivots.items():
        x[p] = prow.get(m.cols, Fraction(0))
    kernel = _kernel_from(pivots, m.cols)
    return AffineSolution(x, kernel)
