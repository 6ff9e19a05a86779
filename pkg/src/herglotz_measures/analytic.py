"""Interpolation nodes, certified Schur-class parameters, and the pointwise
analytic pipeline

    B  ->  omega  ->  s = B*omega  ->  c = (1+s)/(1-s)  ->  h = Re c,

together with the rank-one special system behind the phi-conditions.

All types are immutable after construction and every operation is a pure
function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from . import _kernels
from .errors import (
    CayleySingularity,
    DuplicateNode,
    EmptyNodeList,
    NodeOutsideDisc,
    ParameterNotCertified,
    PoleHit,
)

#: |1 - s| below this raises CayleySingularity (atom signal, not a fault).
CAYLEY_SINGULARITY_THRESHOLD = 1e-9

#: Boundary samples used to certify a rational parameter.
CERTIFICATION_GRID_SIZE = 8192

#: Required headroom: certified sup|omega| <= 1 - this, so certified rational
#: parameters are strictly contractive and never spawn spurious atoms.
CERTIFICATION_HEADROOM = 1e-9

#: |gamma| within this of 1 is snapped to exactly unimodular (inner form).
UNIMODULAR_SNAP_TOL = 1e-12

#: Default residual tolerance of the special system (matches quadrature accuracy).
SPECIAL_SYSTEM_TOL = 1e-8

_DISC_SLACK = 1e-12


@dataclass(frozen=True)
class NodeSet:
    """Pairwise-distinct interpolation nodes in the open unit disc."""

    points: tuple[complex, ...]

    def __post_init__(self):
        points = tuple(complex(p) for p in self.points)
        if not points:
            raise EmptyNodeList("at least one interpolation node is required")
        for k, p in enumerate(points):
            if abs(p) >= 1.0:
                raise NodeOutsideDisc(f"node {k} = {p} is not inside the open unit disc")
        if len(set(points)) != len(points):
            raise DuplicateNode("interpolation nodes must be pairwise distinct")
        object.__setattr__(self, "points", points)

    @property
    def n(self) -> int:
        return len(self.points)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=complex)


def validate_nodes(points) -> NodeSet:
    """Validate a point list into a NodeSet, preserving input order."""
    return NodeSet(tuple(points))


@dataclass(frozen=True)
class BoundaryPoint:
    """A point t = exp(i*theta) of the unit circle."""

    angle: float
    value: complex

    def __post_init__(self):
        if abs(abs(self.value) - 1.0) > 1e-12:
            raise ValueError(f"{self.value} is not on the unit circle")

    @classmethod
    def from_angle(cls, angle: float) -> "BoundaryPoint":
        angle = float(angle) % (2.0 * np.pi)
        return cls(angle=angle, value=complex(np.exp(1j * angle)))

    @classmethod
    def from_value(cls, value: complex) -> "BoundaryPoint":
        value = complex(value)
        return cls(angle=float(np.angle(value)) % (2.0 * np.pi), value=value)


def _snap_multiplier(gamma: complex) -> tuple[complex, bool]:
    modulus = abs(gamma)
    if modulus > 1.0 + UNIMODULAR_SNAP_TOL:
        raise ParameterNotCertified(f"|gamma| = {modulus} exceeds 1")
    if modulus >= 1.0 - UNIMODULAR_SNAP_TOL:
        return gamma / modulus, True
    return gamma, False


class SchurParameter:
    """A certified member of the Schur class.

    Only the three certified forms below exist; only inner parameters
    (unimodular multiplier) admit exact atom extraction.
    """

    @property
    def is_inner(self) -> bool:
        raise NotImplementedError

    def values(self, z):
        """Evaluate omega at a scalar or ndarray of points."""
        raise NotImplementedError


@dataclass(frozen=True)
class Constant(SchurParameter):
    """omega(z) = gamma with |gamma| <= 1; |gamma| = 1 is the inner case."""

    gamma: complex
    _inner: bool = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gamma, inner = _snap_multiplier(complex(self.gamma))
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "_inner", inner)

    @property
    def is_inner(self) -> bool:
        return self._inner

    def values(self, z):
        za = np.asarray(z, dtype=complex)
        if za.ndim == 0:
            return self.gamma
        return np.full(za.shape, self.gamma, dtype=complex)


@dataclass(frozen=True)
class ScaledBlaschke(SchurParameter):
    """omega = gamma * (finite Blaschke product with the given zeros)."""

    gamma: complex
    zeros: tuple[complex, ...] = ()
    _inner: bool = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gamma, inner = _snap_multiplier(complex(self.gamma))
        zeros = tuple(complex(a) for a in self.zeros)
        for k, a in enumerate(zeros):
            if abs(a) >= 1.0:
                raise ParameterNotCertified(
                    f"Blaschke zero {k} = {a} is not inside the open unit disc"
                )
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "_inner", inner)

    @property
    def is_inner(self) -> bool:
        return self._inner

    def values(self, z):
        return self.gamma * _blaschke_raw(self.zeros, z)


@dataclass(frozen=True)
class CertifiedRational(SchurParameter):
    """omega = p/q with q zero-free on the closed disc and a certified boundary bound.

    Coefficients are in ascending order.  Certification samples
    ``CERTIFICATION_GRID_SIZE`` uniform boundary points and requires
    sup|omega| <= 1 - CERTIFICATION_HEADROOM, so the form is strictly
    contractive (never inner).  The achieved sup is stored as the certificate.
    """

    numerator: tuple[complex, ...]
    denominator: tuple[complex, ...]
    boundary_sup: float = field(init=False, compare=False)

    def __post_init__(self):
        num = tuple(complex(c) for c in self.numerator)
        den = tuple(complex(c) for c in self.denominator)
        if not num or not den:
            raise ParameterNotCertified("numerator and denominator must be non-empty")
        den_trimmed = np.trim_zeros(np.asarray(den, dtype=complex), "b")
        if den_trimmed.size == 0:
            raise ParameterNotCertified("denominator is identically zero")
        if den_trimmed.size > 1:
            roots = npoly.polyroots(den_trimmed)
            bad = np.abs(roots) <= 1.0
            if np.any(bad):
                raise ParameterNotCertified(
                    f"denominator roots {roots[bad]} lie in the closed unit disc"
                )
        grid = np.exp(2j * np.pi * np.arange(CERTIFICATION_GRID_SIZE) / CERTIFICATION_GRID_SIZE)
        sup = float(np.max(np.abs(npoly.polyval(grid, num) / npoly.polyval(grid, den))))
        if sup > 1.0 - CERTIFICATION_HEADROOM:
            raise ParameterNotCertified(
                f"boundary sup {sup} exceeds the certified bound {1.0 - CERTIFICATION_HEADROOM}"
            )
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)
        object.__setattr__(self, "boundary_sup", sup)

    @property
    def is_inner(self) -> bool:
        return False

    def values(self, z):
        za = np.asarray(z, dtype=complex)
        num = np.asarray(self.numerator, dtype=complex)
        den = np.asarray(self.denominator, dtype=complex)
        vals = npoly.polyval(za, num) / npoly.polyval(za, den)
        if za.ndim == 0:
            return complex(vals)
        return vals


def _require_closed_disc(za: np.ndarray) -> None:
    if za.size and float(np.max(np.abs(za))) > 1.0 + _DISC_SLACK:
        raise PoleHit("evaluation point outside the closed unit disc")


def _blaschke_raw(zeros: tuple[complex, ...], z):
    za = np.asarray(z, dtype=complex)
    flat = za.reshape(-1)
    vals = _kernels.blaschke_values(flat, np.asarray(zeros, dtype=complex))
    if za.ndim == 0:
        return complex(vals[0])
    return vals.reshape(za.shape)


def blaschke_eval(nodes: NodeSet, z):
    """Blaschke product of the nodes at z, factor z_k -> t replaced by t at z_k = 0."""
    za = np.asarray(z, dtype=complex)
    _require_closed_disc(za)
    return _blaschke_raw(nodes.points, z)


def schur_eval(param: SchurParameter, z):
    """Value of the certified parameter omega at z."""
    za = np.asarray(z, dtype=complex)
    _require_closed_disc(za)
    return param.values(z)


def s_eval(nodes: NodeSet, param: SchurParameter, z):
    """s = B * omega; vanishes at every node and is contractive on the disc."""
    return blaschke_eval(nodes, z) * schur_eval(param, z)


def _cayley_gap_check(s, singular_tol: float) -> None:
    gap = np.abs(1.0 - np.asarray(s, dtype=complex))
    if float(np.min(gap)) < singular_tol:
        raise CayleySingularity(
            f"|1 - s| = {float(np.min(gap))} below threshold {singular_tol}"
        )


def caratheodory_eval(
    nodes: NodeSet,
    param: SchurParameter,
    z,
    *,
    singular_tol: float = CAYLEY_SINGULARITY_THRESHOLD,
):
    """c = (1+s)/(1-s); equals 1 at every node and has non-negative real part."""
    s = s_eval(nodes, param, z)
    _cayley_gap_check(s, singular_tol)
    return (1.0 + s) / (1.0 - s)


def herglotz_eval(
    nodes: NodeSet,
    param: SchurParameter,
    z,
    *,
    singular_tol: float = CAYLEY_SINGULARITY_THRESHOLD,
):
    """h = Re c computed as (1-|s|^2)/|1-s|^2, non-negative by construction."""
    s = s_eval(nodes, param, z)
    _cayley_gap_check(s, singular_tol)
    sa = np.asarray(s, dtype=complex)
    h = (1.0 - np.abs(sa) ** 2) / np.abs(1.0 - sa) ** 2
    if sa.ndim == 0:
        return float(h)
    return h


def cayley_to_s(c_value, *, singular_tol: float = CAYLEY_SINGULARITY_THRESHOLD):
    """Inverse Cayley transform s = (c-1)/(c+1); singular at c = -1."""
    ca = np.asarray(c_value, dtype=complex)
    if float(np.min(np.abs(ca + 1.0))) < singular_tol:
        raise CayleySingularity("c = -1 has no Schur counterpart")
    s = (ca - 1.0) / (ca + 1.0)
    if ca.ndim == 0:
        return complex(s)
    return s


@dataclass(frozen=True)
class SpecialSystemResult:
    """Outcome of the rank-one system phi_k + conj(phi_l) = 2 (all pairs).

    ``residual`` is the mean absolute defect |phi_k + conj(phi_l) - 2| over
    the n^2 ordered pairs (it equals the single defect when n = 1);
    ``max_defect`` is the worst pair and decides solvability.
    """

    beta: float | None
    residual: float
    max_defect: float

    @property
    def solvable(self) -> bool:
        return self.beta is not None


def solve_special_system(phi, tol: float = SPECIAL_SYSTEM_TOL) -> SpecialSystemResult:
    """Solve phi_k + conj(phi_l) = 2 for the common value phi_k = 1 - i*beta.

    Returns beta = -mean(Im phi) when every pairwise defect is within ``tol``,
    otherwise a NotSolvable result carrying the defect diagnostics.
    """
    values = np.asarray(list(phi), dtype=complex)
    if values.size == 0:
        raise EmptyNodeList("the special system needs at least one value")
    defects = np.abs(values[:, None] + values[None, :].conj() - 2.0)
    max_defect = float(defects.max())
    residual = float(defects.mean())
    if max_defect <= tol:
        return SpecialSystemResult(float(-values.imag.mean()), residual, max_defect)
    return SpecialSystemResult(None, residual, max_defect)


def blaschke_log_derivative(zeros, t: complex) -> complex:
    """d/dz log B at t: sum of (|a|^2-1)/((1-conj(a) z)(a-z)), 1/z for a zero at 0."""
    total = 0.0 + 0.0j
    for a in zeros:
        a = complex(a)
        if a == 0:
            total += 1.0 / t
        else:
            total += (abs(a) ** 2 - 1.0) / ((1.0 - a.conjugate() * t) * (a - t))
    return total


def mass_bound_base(nodes: NodeSet) -> float:
    """B(0) = prod |z_k|, the quantity governing the sharp mass bounds."""
    return float(np.prod(np.abs(nodes.as_array())))
