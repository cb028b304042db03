"""Degree-by-degree construction of rational associators.

Writing ``Phi_m = Phi_{m-1} + phi_m`` with ``phi_m`` homogeneous of degree m,
the degree-m part of every residual is affine-linear in ``phi_m``: its
constant is the degree-m part of the residual of ``Phi_{m-1}`` and its
linear part only involves the unit of ``Phi_{m-1}``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .chords import (
    ChordSeries,
    TensorSeries,
    coproduct,
    normal_basis,
    parity,
    permute,
    tensor,
    word_pairs,
)
from .cosimplicial import apply_d, apply_s
from .equations import (
    P132,
    P312,
    group_like_residual,
    hexagon_residual,
    is_associator,
    nondegeneracy_residuals,
    pentagon_residual,
)
from .linalg import INCONSISTENT, AffineSystem, RationalMatrix, solve_affine


class InconsistentSystem(RuntimeError):
    """A degree-m system had no solution; this means a bug, not bad input."""


@dataclass
class LinearConstraint:
    """One block of rows: ``apply(delta) = rhs`` in the image coordinates.

    ``apply`` maps a homogeneous ChordSeries to a ChordSeries or TensorSeries;
    ``rhs`` is an object of the same kind (or None for a homogeneous block).
    """

    name: str
    apply: object
    rhs: object = None


def _coords(x, m):
    """Nonzero degree-m coordinates of a chord or tensor series, keyed."""
    if isinstance(x, TensorSeries):
        return {k: c for k, c in x.terms.items() if len(k[0]) + len(k[1]) == m}
    return {w: c for w, c in x.terms.items() if len(w) == m}


def _sort_key(k):
    if k and isinstance(k[0], tuple):
        return (word_pairs(k[0]), word_pairs(k[1]))
    return word_pairs(k)


def assemble(basis, m, strands, max_degree, constraints):
    """Matrix and right-hand side of a stack of linear constraints.

    Unknowns are coefficients over ``basis`` (homogeneous words of degree m).
    """
    columns = {}
    rhs_parts = {}
    for block, con in enumerate(constraints):
        for col, word in enumerate(basis):
            e = ChordSeries(strands, max_degree, {word: Fraction(1)})
            for key, v in _coords(con.apply(e), m).items():
                columns.setdefault((block, key), {})[col] = v
        if con.rhs is not None:
            for key, v in _coords(con.rhs, m).items():
                rhs_parts[(block, key)] = v
    row_keys = sorted(set(columns) | set(rhs_parts), key=lambda bk: (bk[0], _sort_key(bk[1])))
    rows = [columns.get(rk, {}) for rk in row_keys]
    rhs = [rhs_parts.get(rk, Fraction(0)) for rk in row_keys]
    return RationalMatrix.from_rows(rows, len(basis)), rhs


def linearized_pentagon(x):
    return apply_d(4, x) + apply_d(2, x) + apply_d(0, x) - apply_d(1, x) - apply_d(3, x)


def linearized_hexagon(x):
    return x - permute(x, P132) + permute(x, P312)


def primitivity_defect(x):
    one = ChordSeries.one(x.strands, x.max_degree)
    return coproduct(x) - tensor(x, one) - tensor(one, x)


def _s_map(i):
    return lambda x: apply_s(i, x)


@dataclass
class SolverConfig:
    target_degree: int = 4
    even: bool = False
    seed: ChordSeries = None
    seed_degree: int = 1

    def __post_init__(self):
        if self.target_degree < 1:
            raise ValueError("target degree must be at least 1")
        if self.seed is not None:
            if self.seed_degree >= self.target_degree:
                raise ValueError("seed degree must be below the target degree")
            if not is_associator(self.seed, self.seed_degree):
                raise ValueError("seed does not pass is_associator at its declared degree")


@dataclass
class ExtensionStep:
    degree: int
    unknown_dimension: int
    constraint_rows: int
    solution: ChordSeries
    kernel_dimension: int
    kernel: list = field(default_factory=list, repr=False)


def associator_constraints(phi):
    """Affine constraints on the degree-M correction of ``phi``.

    ``phi`` must already be lifted to truncation M = phi.max_degree.
    """
    s_res = nondegeneracy_residuals(phi)
    return [
        LinearConstraint("pentagon", linearized_pentagon, -pentagon_residual(phi)),
        LinearConstraint("hexagon+", linearized_hexagon, hexagon_residual(phi, +1)),
        LinearConstraint("hexagon-", linearized_hexagon, hexagon_residual(phi, -1)),
        LinearConstraint("group-like", primitivity_defect, -group_like_residual(phi)),
    ] + [LinearConstraint(f"s{i}", _s_map(i), -s_res[i - 1]) for i in (1, 2, 3)]


def solve_degree(m, strands, constraints):
    """Solve the stacked constraints for a homogeneous degree-m series.

    Returns ``(particular, kernel, rows)`` or raises InconsistentSystem.
    """
    basis = normal_basis(strands, m)
    matrix, rhs = assemble(basis, m, strands, m, constraints)
    sol = solve_affine(AffineSystem(matrix, rhs))
    if sol is INCONSISTENT:
        names = ", ".join(c.name for c in constraints)
        raise InconsistentSystem(f"degree-{m} system ({names}) has no solution")

    def series(vec):
        return ChordSeries(strands, m, {w: c for w, c in zip(basis, vec) if c})

    return series(sol.particular), [series(v) for v in sol.kernel], matrix.rows


def extend_one_degree(phi, m=None):
    """Lift an associator valid to degree m-1 to one valid to degree m."""
    m = phi.max_degree + 1 if m is None else m
    lifted = phi.up_to(m - 1).with_max_degree(m)
    part, kernel, nrows = solve_degree(m, 3, associator_constraints(lifted))
    return ExtensionStep(
        degree=m,
        unknown_dimension=len(normal_basis(3, m)),
        constraint_rows=nrows,
        solution=part,
        kernel_dimension=len(kernel),
        kernel=kernel,
    )


def symmetrize_even(phi):
    """(Phi + P Phi) / 2."""
    if not is_associator(phi):
        raise ValueError("input is not an associator at its truncation degree")
    return (phi + parity(phi)).scale(Fraction(1, 2))


@dataclass
class BuildResult:
    phi: ChordSeries
    steps: list
    even: bool

    @property
    def kernel_dimensions(self):
        return {s.degree: s.kernel_dimension for s in self.steps}


def build_associator(config):
    if config.seed is not None:
        phi = config.seed.with_max_degree(config.seed_degree)
        start = config.seed_degree
    else:
        phi = ChordSeries.one(3, 1)
        start = 1
    if config.even:
        phi = (phi + parity(phi)).scale(Fraction(1, 2))
    steps = []
    for m in range(start + 1, config.target_degree + 1):
        step = extend_one_degree(phi, m)
        if config.even:
            step.solution = (step.solution + parity(step.solution)).scale(Fraction(1, 2))
        steps.append(step)
        phi = phi.with_max_degree(m) + step.solution.with_max_degree(m)
    phi = phi.with_max_degree(config.target_degree)
    report = is_associator(phi)
    if not report:
        raise InconsistentSystem(f"constructed series is not an associator: {report.summary()}")
    return BuildResult(phi, steps, config.even)
