"""Residuals of the associator and GRT equations.

Every residual is ``LHS - RHS`` computed at the truncation degree of its
input, so "holds to degree M" means "residual is zero".
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .chords import (
    ChordSeries,
    Permutation,
    coproduct,
    exp,
    inverse,
    permute,
    tensor,
)
from .cosimplicial import apply_d, apply_s

P132 = Permutation((1, 3, 2))
P312 = Permutation((3, 1, 2))


def _require_unit(x, what):
    if x.strands != 3:
        raise ValueError(f"{what} must live on 3 strands, got {x.strands}")
    if x.constant_term() != 1:
        raise ValueError(f"{what} must have constant term 1")


def _t(i, j, n, M):
    return ChordSeries.generator(i, j, n, M)


def pentagon_residual(phi):
    _require_unit(phi, "phi")
    lhs = apply_d(4, phi) * apply_d(2, phi) * apply_d(0, phi)
    rhs = apply_d(1, phi) * apply_d(3, phi)
    return lhs - rhs


def hexagon_residual(phi, sign=+1):
    """d1 exp(+-t12/2) - phi e^{+-t23/2} (phi^-1)^{132} e^{+-t13/2} phi^{312}."""
    _require_unit(phi, "phi")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    M = phi.max_degree
    half = Fraction(sign, 2)
    lhs = exp((_t(1, 3, 3, M) + _t(2, 3, 3, M)).scale(half))
    rhs = (
        phi
        * exp(_t(2, 3, 3, M).scale(half))
        * permute(inverse(phi), P132)
        * exp(_t(1, 3, 3, M).scale(half))
        * permute(phi, P312)
    )
    return lhs - rhs


def nondegeneracy_residuals(phi):
    one = ChordSeries.one(phi.strands - 1, phi.max_degree)
    return tuple(apply_s(i, phi) - one for i in (1, 2, 3))


def group_like_residual(x):
    return coproduct(x) - tensor(x, x)


def classical_hexagon_residual(gamma):
    """1 - gamma (gamma^-1)^{132} gamma^{312}."""
    _require_unit(gamma, "gamma")
    one = ChordSeries.one(3, gamma.max_degree)
    return one - gamma * permute(inverse(gamma), P132) * permute(gamma, P312)


def cabling_residual(gamma):
    """d2 t12 - (g^-1 t12 g + (g^-1 t12 g)^{132})."""
    _require_unit(gamma, "gamma")
    M = gamma.max_degree
    t12 = _t(1, 2, 3, M)
    conj = inverse(gamma) * t12 * gamma
    lhs = apply_d(2, _t(1, 2, 2, M))
    return lhs - (conj + permute(conj, P132))


def semiclassical_hexagon_residual(gamma):
    """d1 t12 - g (t23 (g^-1)^{132} + (g^-1)^{132} t13) g^{312}."""
    _require_unit(gamma, "gamma")
    M = gamma.max_degree
    ginv132 = permute(inverse(gamma), P132)
    middle = _t(2, 3, 3, M) * ginv132 + ginv132 * _t(1, 3, 3, M)
    lhs = apply_d(1, _t(1, 2, 2, M))
    return lhs - gamma * middle * permute(gamma, P312)


class DualChordSeries:
    """``a + eps b`` with eps**2 = 0 and a, b chord series of the same shape."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=None):
        if b is None:
            b = ChordSeries.zero(a.strands, a.max_degree)
        a._check(b)
        self.a = a
        self.b = b

    def __add__(self, other):
        other = _dual(other)
        return DualChordSeries(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        other = _dual(other)
        return DualChordSeries(self.a - other.a, self.b - other.b)

    def __mul__(self, other):
        other = _dual(other)
        return DualChordSeries(self.a * other.a, self.a * other.b + self.b * other.a)

    def __rmul__(self, other):
        return _dual(other) * self

    def __eq__(self, other):
        if not isinstance(other, DualChordSeries):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    __hash__ = None

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __repr__(self):
        return f"DualChordSeries({self.a} + eps*({self.b}))"


def _dual(x):
    return x if isinstance(x, DualChordSeries) else DualChordSeries(x)


def dual_exp_linear(t):
    """exp(eps t) = 1 + eps t."""
    return DualChordSeries(ChordSeries.one(t.strands, t.max_degree), t)


def quantum_hexagon_residual(gamma):
    """e^{eps(t13+t23)} - g e^{eps t23} (g^-1)^{132} e^{eps t13} g^{312}."""
    _require_unit(gamma, "gamma")
    M = gamma.max_degree
    t13, t23 = _t(1, 3, 3, M), _t(2, 3, 3, M)
    lhs = dual_exp_linear(t13 + t23)
    rhs = (
        _dual(gamma)
        * dual_exp_linear(t23)
        * _dual(permute(inverse(gamma), P132))
        * dual_exp_linear(t13)
        * _dual(permute(gamma, P312))
    )
    return lhs - rhs


@dataclass
class Report:
    """Outcome of a battery of residual checks.

    ``checks`` maps an equation name to the lowest degree at which its
    residual is nonzero (None when it vanishes).
    """

    kind: str
    max_degree: int
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(v is None for v in self.checks.values())

    def __bool__(self):
        return self.ok

    @property
    def first_failure(self):
        bad = [(d, name) for name, d in self.checks.items() if d is not None]
        return min(bad) if bad else None

    def summary(self):
        if self.ok:
            return f"all residuals zero to degree {self.max_degree}"
        d, name = self.first_failure
        return f"{name} fails in degree {d}"


def _lowest(x):
    if hasattr(x, "lowest_degree"):
        return x.lowest_degree()
    degs = [len(u) + len(v) for (u, v) in x.terms]
    return min(degs) if degs else None


def _at_degree(x, M):
    if x.max_degree < M:
        raise ValueError(f"series known only to degree {x.max_degree}, asked for {M}")
    return x.with_max_degree(M)


def is_associator(phi, M=None):
    M = phi.max_degree if M is None else M
    phi = _at_degree(phi, M)
    report = Report("associator", M)
    if phi.strands != 3 or phi.constant_term() != 1:
        report.checks["constant term"] = 0
        return report
    report.checks["pentagon"] = _lowest(pentagon_residual(phi))
    report.checks["hexagon+"] = _lowest(hexagon_residual(phi, +1))
    report.checks["hexagon-"] = _lowest(hexagon_residual(phi, -1))
    for i, r in enumerate(nondegeneracy_residuals(phi), 1):
        report.checks[f"s{i}"] = _lowest(r)
    report.checks["group-like"] = _lowest(group_like_residual(phi))
    return report


def is_grt_element(gamma, M=None, *, include_cabling=True):
    M = gamma.max_degree if M is None else M
    gamma = _at_degree(gamma, M)
    report = Report("grt", M)
    if gamma.strands != 3 or gamma.constant_term() != 1:
        report.checks["constant term"] = 0
        return report
    report.checks["pentagon"] = _lowest(pentagon_residual(gamma))
    report.checks["classical hexagon"] = _lowest(classical_hexagon_residual(gamma))
    if include_cabling:
        report.checks["semi-classical hexagon"] = _lowest(semiclassical_hexagon_residual(gamma))
        report.checks["cabling"] = _lowest(cabling_residual(gamma))
    for i, r in enumerate(nondegeneracy_residuals(gamma), 1):
        report.checks[f"s{i}"] = _lowest(r)
    report.checks["group-like"] = _lowest(group_like_residual(gamma))
    return report
