"""Shared fixtures: random admissible inputs and independent oracles.

The oracle helpers re-implement the underlying formulas directly (plain
numpy, no package kernels) so tests can cross-check the library against an
independent route.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

import herglotz_measures as hm
from herglotz_measures.errors import DuplicateNode

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# random admissible inputs
# ---------------------------------------------------------------------------


def random_nodes(rng, max_n: int = 6, radius: float = 0.8) -> hm.NodeSet:
    """Random pairwise-distinct nodes with |z_k| <= radius."""
    n = int(rng.integers(1, max_n + 1))
    while True:
        r = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
        ang = rng.uniform(0.0, TWO_PI, n)
        try:
            return hm.validate_nodes(r * np.exp(1j * ang))
        except DuplicateNode:  # pragma: no cover - probability zero
            continue


def _random_disc_points(rng, count: int, radius: float) -> np.ndarray:
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, count))
    return r * np.exp(1j * rng.uniform(0.0, TWO_PI, count))


def random_contractive_param(rng) -> hm.SchurParameter:
    """A random strictly contractive parameter from the certified grammar."""
    form = int(rng.integers(0, 3))
    if form == 0:
        return hm.Constant(complex(0.9 * rng.uniform(0.0, 1.0) * np.exp(1j * rng.uniform(0.0, TWO_PI))))
    if form == 1:
        count = int(rng.integers(0, 4))
        zeros = tuple(_random_disc_points(rng, count, 0.8))
        gamma = 0.9 * rng.uniform(0.1, 1.0) * np.exp(1j * rng.uniform(0.0, TWO_PI))
        return hm.ScaledBlaschke(complex(gamma), zeros)
    degree = int(rng.integers(1, 4))
    num = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    roots = rng.uniform(1.3, 3.0, degree) * np.exp(1j * rng.uniform(0.0, TWO_PI, degree))
    den = np.polynomial.polynomial.polyfromroots(roots)
    grid = np.exp(1j * TWO_PI * np.arange(4096) / 4096)
    sup = np.max(
        np.abs(
            np.polynomial.polynomial.polyval(grid, num)
            / np.polynomial.polynomial.polyval(grid, den)
        )
    )
    num = num * (0.9 * rng.uniform(0.3, 1.0) / sup)
    return hm.CertifiedRational(tuple(num), tuple(den))


def random_inner_param(rng, max_extra: int = 3) -> hm.SchurParameter:
    gamma = complex(np.exp(1j * rng.uniform(0.0, TWO_PI)))
    count = int(rng.integers(0, max_extra + 1))
    if count == 0 and rng.integers(0, 2):
        return hm.Constant(gamma)
    return hm.ScaledBlaschke(gamma, tuple(_random_disc_points(rng, count, 0.8)))


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------


def oracle_blaschke(zeros, z):
    """Direct product formula, factor t for a zero at the origin."""
    out = np.ones_like(np.asarray(z, dtype=complex))
    for a in zeros:
        a = complex(a)
        if a == 0:
            out = out * z
        else:
            out = out * (a - z) / (1 - a.conjugate() * z) * (abs(a) / a)
    return out


def oracle_s(nodes: hm.NodeSet, param, z):
    """s = B * omega evaluated with the test-local product formula.

    Works outside the closed disc too (needed by the derivative oracle),
    unlike the library entry point.
    """
    b = oracle_blaschke(nodes.points, z)
    if isinstance(param, hm.Constant):
        omega = param.gamma
    elif isinstance(param, hm.ScaledBlaschke):
        omega = param.gamma * oracle_blaschke(param.zeros, z)
    else:
        omega = np.polynomial.polynomial.polyval(
            z, np.asarray(param.numerator)
        ) / np.polynomial.polynomial.polyval(z, np.asarray(param.denominator))
    return b * omega


def oracle_s_derivative(nodes: hm.NodeSet, param, t0: complex, radius: float = 0.12, samples: int = 1024):
    """s'(t0) by the Cauchy integral over a small circle around t0."""
    ang = TWO_PI * np.arange(samples) / samples
    xi = t0 + radius * np.exp(1j * ang)
    values = oracle_s(nodes, param, xi)
    # (1/2 pi i) * integral s(xi)/(xi-t0)^2 dxi, dxi = i r e^{i ang} d ang
    return complex(np.mean(values / (radius * np.exp(1j * ang)) ** 2 * radius * np.exp(1j * ang)))


def oracle_integral(measure: hm.GeneratedMeasure, f) -> complex:
    """Trapezoid plus atom sums, written independently of the package kernels."""
    total = 0.0 + 0.0j
    density = np.asarray(measure.density)
    if density.size:
        t = np.exp(1j * TWO_PI * np.arange(density.size) / density.size)
        total += complex(np.sum(density * f(t)) / density.size)
    for atom in measure.atoms:
        total += atom.weight * f(atom.location)
    return total


def oracle_gram_target(points) -> np.ndarray:
    z = np.asarray(points, dtype=complex)
    n = z.size
    out = np.empty((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            out[k, l] = 1.0 / (1.0 - z[k] * z[l].conjugate())
    return out


# ---------------------------------------------------------------------------
# session warmup (JIT compilation happens outside any timed block)
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    nodes = hm.validate_nodes([0.4, -0.2j])
    ac = hm.build_measure(nodes, hm.Constant(0.5), 256)
    hm.verify_membership(ac, 1.0)
    hm.check_phi_conditions(ac, 1.0)
    hm.kernel_identity_check(ac, 0.1, 0.2j)
    atomic = hm.build_measure(nodes, hm.Constant(1.0), 256)
    hm.verify_membership(atomic, 1.0)
    yield
