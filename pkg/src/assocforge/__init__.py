"""Exact computations with Drinfeld-Kohno chord algebras, associators and GRT."""

__version__ = "0.1.0"

from .chords import (
    ChordGenerator,
    ChordMonomial,
    ChordSeries,
    DimensionMismatch,
    Permutation,
    TensorSeries,
    commutator,
    coproduct,
    exp,
    graded_dimension,
    inverse,
    log,
    multiply,
    normal_basis,
    normal_form,
    parity,
    permute,
)
from .cosimplicial import (
    StrandOp,
    apply_d,
    apply_d_tilde,
    apply_s,
    differential_d,
    differential_d_tilde,
)
from .equations import (
    DualChordSeries,
    Report,
    cabling_residual,
    classical_hexagon_residual,
    group_like_residual,
    hexagon_residual,
    is_associator,
    is_grt_element,
    nondegeneracy_residuals,
    pentagon_residual,
    quantum_hexagon_residual,
    semiclassical_hexagon_residual,
)
from .linalg import INCONSISTENT, AffineSystem, RationalMatrix, kernel_basis, rank, solve_affine
from .solver import SolverConfig, build_associator, extend_one_degree, symmetrize_even
from .grt import (
    GrtElement,
    grt_act,
    grt_exponentiate,
    grt_inverse,
    grt_lie_solutions,
    grt_multiply,
    transitivity_probe,
)
from .cohomology import CochainSlot, boundary_matrix, h01_dimensions, h2_dimensions
from .pacd import (
    PaBWord,
    PaCDMorphism,
    PaPMorphism,
    Parenthesization,
    check_braid_relations,
    compile_braid_generator,
    compose,
    evaluate_Z,
)
from .serialize import format_series, parse_series
