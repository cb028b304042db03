"""The group GRT truncated at degree M and its Lie algebra.

A GRT element is a group-like, non-degenerate Gamma in A^pb_3 satisfying
the pentagon and the classical hexagon.  Products and the action on
associators use the substitution

    t12 -> G^-1 t12 G,   t13 -> (G^-1)^{132} t13 G^{132},   t23 -> t23

applied letter by letter to a normal-form expansion.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .chords import ChordSeries, chord_code, exp, inverse, normal_basis, permute
from .equations import (
    P132,
    classical_hexagon_residual,
    group_like_residual,
    is_associator,
    is_grt_element,
    nondegeneracy_residuals,
    pentagon_residual,
)
from .linalg import kernel_basis
from .solver import (
    InconsistentSystem,
    LinearConstraint,
    _s_map,
    assemble,
    linearized_hexagon,
    linearized_pentagon,
    primitivity_defect,
    solve_degree,
)

T12, T13, T23 = chord_code(1, 2), chord_code(1, 3), chord_code(2, 3)


class GrtElement:
    """Validated wrapper around a GRT series."""

    __slots__ = ("gamma",)

    def __init__(self, gamma, validate=True):
        if validate:
            report = is_grt_element(gamma)
            if not report:
                raise ValueError(f"not a GRT element: {report.summary()}")
        self.gamma = gamma

    @classmethod
    def identity(cls, M):
        return cls(ChordSeries.one(3, M), validate=False)

    @property
    def max_degree(self):
        return self.gamma.max_degree

    def __eq__(self, other):
        if not isinstance(other, GrtElement):
            return NotImplemented
        return self.gamma == other.gamma

    __hash__ = None

    def __mul__(self, other):
        return grt_multiply(self, other)

    def __repr__(self):
        return f"GrtElement({self.gamma})"


@dataclass
class GrtLieSolution:
    degree: int
    basis: list = field(default_factory=list)

    @property
    def dimension(self):
        return len(self.basis)


def _series(g):
    return g.gamma if isinstance(g, GrtElement) else g


def substitution_images(gamma):
    """Images of t12, t13, t23 under the substitution attached to gamma."""
    M = gamma.max_degree
    ginv = inverse(gamma)
    t = {c: ChordSeries(3, M, {(c,): Fraction(1)}) for c in (T12, T13, T23)}
    return {
        T12: ginv * t[T12] * gamma,
        T13: permute(ginv, P132) * t[T13] * permute(gamma, P132),
        T23: t[T23],
    }


def evaluate_hom(x, images):
    """Apply the algebra map sending letter code c to ``images[c]``.

    Prefix products are shared between words.
    """
    M = x.max_degree
    one = ChordSeries.one(x.strands, M)
    prefixes = {(): one}
    out = ChordSeries.zero(x.strands, M)
    for w in sorted(x.terms, key=lambda w: (len(w), w)):
        # every prefix of a normal word is normal but need not occur in x
        for k in range(1, len(w) + 1):
            p = w[:k]
            if p not in prefixes:
                prefixes[p] = prefixes[w[: k - 1]] * images[w[k - 1]]
        out = out + prefixes[w].scale(x.terms[w])
    return out


def _check_same(a, b):
    if a.max_degree != b.max_degree:
        raise ValueError(f"truncations differ: {a.max_degree} and {b.max_degree}")


def grt_multiply(g1, g2):
    a, b = _series(g1), _series(g2)
    _check_same(a, b)
    if a.constant_term() != 1:
        raise ValueError("left factor must have constant term 1")
    return GrtElement(a * evaluate_hom(b, substitution_images(a)), validate=False)


def grt_act(g, phi):
    """Left action Gamma(Phi) on an associator."""
    a = _series(g)
    _check_same(a, phi)
    if a.constant_term() != 1:
        raise ValueError("group element must have constant term 1")
    return a * evaluate_hom(phi, substitution_images(a))


def grt_inverse(g):
    """Right inverse found degree by degree; it is also a left inverse."""
    a = _series(g)
    M = a.max_degree
    images = substitution_images(a)
    inv = ChordSeries.one(3, M)
    for m in range(1, M + 1):
        prod = a * evaluate_hom(inv, images)
        inv = inv - prod.degree_part(m)
    return GrtElement(inv, validate=False)


def grt_lie_solutions(m):
    """Basis of the degree-m part of the grt Lie algebra."""
    if m < 1:
        raise ValueError("degree must be at least 1")
    basis = normal_basis(3, m)
    constraints = [
        LinearConstraint("pentagon", linearized_pentagon),
        LinearConstraint("hexagon", linearized_hexagon),
        LinearConstraint("primitive", primitivity_defect),
    ] + [LinearConstraint(f"s{i}", _s_map(i)) for i in (1, 2, 3)]
    matrix, _ = assemble(basis, m, 3, m, constraints)
    vectors = kernel_basis(matrix)
    return GrtLieSolution(
        m, [ChordSeries(3, m, {w: c for w, c in zip(basis, v) if c}) for v in vectors]
    )


def grt_constraints(gamma):
    s_res = nondegeneracy_residuals(gamma)
    return [
        LinearConstraint("pentagon", linearized_pentagon, -pentagon_residual(gamma)),
        LinearConstraint("classical hexagon", linearized_hexagon, classical_hexagon_residual(gamma)),
        LinearConstraint("group-like", primitivity_defect, -group_like_residual(gamma)),
    ] + [LinearConstraint(f"s{i}", _s_map(i), -s_res[i - 1]) for i in (1, 2, 3)]


def grt_exponentiate(gamma_hom, M, choose=None):
    """Integrate a homogeneous grt solution to a GRT element at truncation M.

    Each degree starts from ``exp(gamma)`` and adds the particular solution
    of the linearized system.  ``choose(m, kernel)`` may return coefficients
    of a kernel combination to add, which lets callers walk the whole affine
    family of lifts.
    """
    if gamma_hom.strands != 3:
        raise ValueError("gamma must live on 3 strands")
    degs = gamma_hom.degrees()
    if len(degs) > 1:
        raise ValueError("gamma must be homogeneous")
    if not degs:
        return GrtElement.identity(M)
    m0 = degs[0]
    if m0 > M:
        return GrtElement.identity(M)
    target = exp(gamma_hom.with_max_degree(M))
    gamma = ChordSeries.one(3, m0 - 1).with_max_degree(m0) + gamma_hom.with_max_degree(m0)
    for m in range(m0 + 1, M + 1):
        guess = gamma.with_max_degree(m) + target.degree_part(m).with_max_degree(m)
        part, kernel, _ = solve_degree(m, 3, grt_constraints(guess))
        delta = part
        if choose is not None and kernel:
            for c, k in zip(choose(m, kernel), kernel):
                delta = delta + k.scale(c)
        gamma = guess + delta.with_max_degree(m)
    gamma = gamma.with_max_degree(M)
    report = is_grt_element(gamma, include_cabling=False)
    if not report:
        raise InconsistentSystem(f"exponentiation failed: {report.summary()}")
    return GrtElement(gamma, validate=False)


def transitivity_probe(phi, phi_prime):
    """The Gamma with Gamma(phi) = phi_prime, found degree by degree.

    Raises ValueError if the resulting Gamma is not in GRT.
    """
    _check_same(phi, phi_prime)
    for x in (phi, phi_prime):
        if not is_associator(x):
            raise ValueError("both inputs must be associators")
    M = phi.max_degree
    gamma = ChordSeries.one(3, M)
    for m in range(1, M + 1):
        current = grt_act(gamma, phi)
        gamma = gamma + (phi_prime - current).degree_part(m)
    report = is_grt_element(gamma)
    if not report:
        raise ValueError(f"probe did not land in GRT: {report.summary()}")
    return GrtElement(gamma, validate=False)
