"""Cohomology of the cosimplicial chord algebras, computed by exact rank.

Both complexes run through the list A_0, A_1, A_2, ...  For ``d`` the
cochain at position p is A_p; for ``d-tilde`` it is A_{p+1}.  Each
differential preserves chord degree, so everything splits degree by degree.
"""

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

from .chords import ChordSeries, normal_basis
from .cosimplicial import differential_d, differential_d_tilde
from .linalg import Echelon, RationalMatrix, kernel_basis, rank

COMPLEXES = ("d", "d-tilde")


@dataclass(frozen=True)
class CochainSlot:
    complex: str
    position: int
    degree: int

    def __post_init__(self):
        if self.complex not in COMPLEXES:
            raise ValueError(f"complex must be one of {COMPLEXES}")
        if self.position < 0 or self.degree < 0:
            raise ValueError("position and degree must be nonnegative")

    @property
    def strands(self):
        return self.position if self.complex == "d" else self.position + 1

    def next(self):
        return CochainSlot(self.complex, self.position + 1, self.degree)


def boundary_matrix(slot):
    """Differential out of ``slot`` in normal-form bases (rows = target)."""
    n, m = slot.strands, slot.degree
    source = normal_basis(n, m)
    target = normal_basis(n + 1, m)
    index = {w: r for r, w in enumerate(target)}
    diff = differential_d if slot.complex == "d" else differential_d_tilde
    entries = {}
    for col, w in enumerate(source):
        image = diff(ChordSeries(n, m, {w: Fraction(1)}))
        for u, c in image.terms.items():
            entries[(index[u], col)] = c
    return RationalMatrix(len(target), len(source), entries)


@dataclass
class CohomologyRow:
    complex: str
    position: int
    chord_degree: int
    dim_kernel: int
    dim_image: int
    generators: list = field(default_factory=list)

    @property
    def dim_H(self):
        return self.dim_kernel - self.dim_image


def _incoming(slot):
    if slot.position == 0:
        return None
    return boundary_matrix(CochainSlot(slot.complex, slot.position - 1, slot.degree))


def cohomology_at(slot, with_generators=False):
    out_map = boundary_matrix(slot)
    in_map = _incoming(slot)
    dim_image = rank(in_map) if in_map is not None else 0
    gens = []
    if with_generators:
        kernel = kernel_basis(out_map)
        ech = Echelon(out_map.cols)
        if in_map is not None:
            for col in _columns(in_map):
                ech.add(col)
        basis = normal_basis(slot.strands, slot.degree)
        for v in kernel:
            reduced = ech.reduce({c: x for c, x in enumerate(v) if x})
            if reduced:
                ech.add(reduced)
                gens.append(ChordSeries(slot.strands, slot.degree, {basis[c]: x for c, x in reduced.items()}))
        dim_kernel = len(kernel)
    else:
        dim_kernel = out_map.cols - rank(out_map)
    return CohomologyRow(slot.complex, slot.position, slot.degree, dim_kernel, dim_image, gens)


def _columns(m):
    cols = [dict() for _ in range(m.cols)]
    for (r, c), v in m.entries.items():
        cols[c][r] = v
    return cols


def h2_dimensions(complex, max_chord_degree, with_generators=True):
    if max_chord_degree < 1:
        raise ValueError("max chord degree must be at least 1")
    return [
        cohomology_at(CochainSlot(complex, 2, m), with_generators)
        for m in range(max_chord_degree + 1)
    ]


def h01_dimensions(complex, max_chord_degree, with_generators=False):
    if max_chord_degree < 0:
        raise ValueError("max chord degree must be nonnegative")
    return [
        cohomology_at(CochainSlot(complex, p, m), with_generators)
        for p in (0, 1)
        for m in range(max_chord_degree + 1)
    ]


def cohomology_table(max_chord_degree, positions=(0, 1, 2), complexes=COMPLEXES):
    return [
        cohomology_at(CochainSlot(cx, p, m))
        for cx in complexes
        for p in positions
        for m in range(max_chord_degree + 1)
    ]


CSV_COLUMNS = ("complex", "position", "chord_degree", "dim_kernel", "dim_image", "dim_H")


def to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow((r.complex, r.position, r.chord_degree, r.dim_kernel, r.dim_image, r.dim_H))
    return buf.getvalue()
