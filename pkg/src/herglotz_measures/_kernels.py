"""Hot numeric kernels: numba-accelerated loops with a pure-numpy fallback.

The backend is resolved once at import time from the environment variable
``HERGLOTZ_MEASURES_BACKEND``:

* ``auto`` (default) -- numba when importable, numpy otherwise
* ``numba``          -- require numba, fail loudly if it is missing
* ``numpy``          -- force the vectorized numpy path

Both implementations of every kernel stay importable through
``IMPLEMENTATIONS`` so the test suite can cross-check them and
``benchmarks/kernel_benchmark.py`` can time them side by side.
"""

from __future__ import annotations

import os

import numpy as np

BACKEND_ENV_VAR = "HERGLOTZ_MEASURES_BACKEND"

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env-flag fallback
    HAS_NUMBA = False


def _resolve_backend() -> str:
    choice = os.environ.get(BACKEND_ENV_VAR, "auto").strip().lower()
    if choice in ("", "auto"):
        return "numba" if HAS_NUMBA else "numpy"
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not HAS_NUMBA:
            raise RuntimeError(
                f"{BACKEND_ENV_VAR}=numba requested but numba is not importable"
            )
        return "numba"
    raise RuntimeError(f"unknown {BACKEND_ENV_VAR} value {choice!r}")


# ---------------------------------------------------------------------------
# numpy implementations (vectorized over the boundary grid)
# ---------------------------------------------------------------------------


def _blaschke_values_numpy(t, zeros):
    out = np.ones_like(t)
    for a in zeros:
        if a == 0:
            out = out * t
        else:
            out = out * ((a - t) / (1.0 - a.conjugate() * t) * (abs(a) / a))
    return out


def _poisson_slope_numpy(t, zeros):
    out = np.zeros(t.shape[0])
    for a in zeros:
        out += (1.0 - abs(a) ** 2) / np.abs(t - a) ** 2
    return out


def _density_values_numpy(s, threshold):
    gap = np.abs(1.0 - s)
    flagged = gap < threshold
    safe = np.where(flagged, 1.0, gap)
    density = np.where(flagged, 0.0, (1.0 - np.abs(s) ** 2) / safe**2)
    return density, flagged


def hermitian_assembly(gram):
    """Conjugate-symmetric assembly: keep k <= l, reflect, real diagonal."""
    out = np.triu(gram) + np.triu(gram, 1).conj().T
    np.fill_diagonal(out, out.diagonal().real)
    return out


def _gram_from_density_numpy(t, density, nodes):
    cauchy = 1.0 / (t[None, :] - nodes[:, None])
    return hermitian_assembly((cauchy * density[None, :]) @ cauchy.conj().T / t.shape[0])


def _gram_from_atoms_numpy(locations, weights, nodes):
    cauchy = 1.0 / (locations[None, :] - nodes[:, None])
    return hermitian_assembly((cauchy * weights[None, :]) @ cauchy.conj().T)


def _herglotz_transform_numpy(t, density, z):
    return np.mean(density * (t + z) / (t - z))


def _pair_quadrature_numpy(t, density, zeta1, zeta2):
    return np.mean(density / ((t - zeta1) * np.conj(t - zeta2)))


# ---------------------------------------------------------------------------
# loop implementations (compiled by numba)
# ---------------------------------------------------------------------------


def _blaschke_values_loop(t, zeros):
    out = np.empty(t.shape[0], dtype=np.complex128)
    for j in range(t.shape[0]):
        acc = 1.0 + 0.0j
        for k in range(zeros.shape[0]):
            a = zeros[k]
            if a == 0j:
                acc *= t[j]
            else:
                acc *= (a - t[j]) / (1.0 - a.conjugate() * t[j]) * (abs(a) / a)
        out[j] = acc
    return out


def _poisson_slope_loop(t, zeros):
    out = np.zeros(t.shape[0])
    for j in range(t.shape[0]):
        acc = 0.0
        for k in range(zeros.shape[0]):
            a = zeros[k]
            d = t[j] - a
            acc += (1.0 - (a.real * a.real + a.imag * a.imag)) / (
                d.real * d.real + d.imag * d.imag
            )
        out[j] = acc
    return out


def _density_values_loop(s, threshold):
    n = s.shape[0]
    density = np.empty(n)
    flagged = np.empty(n, dtype=np.bool_)
    for j in range(n):
        gap = abs(1.0 - s[j])
        if gap < threshold:
            density[j] = 0.0
            flagged[j] = True
        else:
            mod2 = s[j].real * s[j].real + s[j].imag * s[j].imag
            density[j] = (1.0 - mod2) / (gap * gap)
            flagged[j] = False
    return density, flagged


def _gram_from_density_loop(t, density, nodes):
    n = nodes.shape[0]
    m = t.shape[0]
    gram = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        for l in range(k, n):
            acc = 0.0 + 0.0j
            for j in range(m):
                acc += density[j] / ((t[j] - nodes[k]) * (t[j] - nodes[l]).conjugate())
            gram[k, l] = acc / m
            if l != k:
                gram[l, k] = gram[k, l].conjugate()
    return gram


def _gram_from_atoms_loop(locations, weights, nodes):
    n = nodes.shape[0]
    m = locations.shape[0]
    gram = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        for l in range(k, n):
            acc = 0.0 + 0.0j
            for j in range(m):
                acc += weights[j] / (
                    (locations[j] - nodes[k]) * (locations[j] - nodes[l]).conjugate()
                )
            gram[k, l] = acc
            if l != k:
                gram[l, k] = gram[k, l].conjugate()
    return gram


def _herglotz_transform_loop(t, density, z):
    acc = 0.0 + 0.0j
    for j in range(t.shape[0]):
        acc += density[j] * (t[j] + z) / (t[j] - z)
    return acc / t.shape[0]


def _pair_quadrature_loop(t, density, zeta1, zeta2):
    acc = 0.0 + 0.0j
    for j in range(t.shape[0]):
        acc += density[j] / ((t[j] - zeta1) * (t[j] - zeta2).conjugate())
    return acc / t.shape[0]


_NUMPY_IMPLS = {
    "blaschke_values": _blaschke_values_numpy,
    "poisson_slope": _poisson_slope_numpy,
    "density_values": _density_values_numpy,
    "gram_from_density": _gram_from_density_numpy,
    "gram_from_atoms": _gram_from_atoms_numpy,
    "herglotz_transform": _herglotz_transform_numpy,
    "pair_quadrature": _pair_quadrature_numpy,
}

IMPLEMENTATIONS = {"numpy": _NUMPY_IMPLS}

if HAS_NUMBA:
    _jit = njit(cache=True)
    IMPLEMENTATIONS["numba"] = {
        "blaschke_values": _jit(_blaschke_values_loop),
        "poisson_slope": _jit(_poisson_slope_loop),
        "density_values": _jit(_density_values_loop),
        "gram_from_density": _jit(_gram_from_density_loop),
        "gram_from_atoms": _jit(_gram_from_atoms_loop),
        "herglotz_transform": _jit(_herglotz_transform_loop),
        "pair_quadrature": _jit(_pair_quadrature_loop),
    }

_BACKEND = _resolve_backend()
_ACTIVE = IMPLEMENTATIONS[_BACKEND]


def active_backend() -> str:
    return _BACKEND


def _c128(x) -> np.ndarray:
    return np.ascontiguousarray(x, dtype=np.complex128)


def _f64(x) -> np.ndarray:
    return np.ascontiguousarray(x, dtype=np.float64)


def blaschke_values(t, zeros) -> np.ndarray:
    """Normalized Blaschke product over the points ``t`` (factor t for a zero at 0)."""
    return _ACTIVE["blaschke_values"](_c128(t), _c128(zeros))


def poisson_slope(t, zeros) -> np.ndarray:
    """Boundary phase derivative sum((1-|a|^2)/|t-a|^2) of the Blaschke product."""
    return _ACTIVE["poisson_slope"](_c128(t), _c128(zeros))


def density_values(s, threshold: float):
    """Herglotz density (1-|s|^2)/|1-s|^2 with near-singular entries zeroed and flagged."""
    return _ACTIVE["density_values"](_c128(s), float(threshold))


def gram_from_density(t, density, nodes) -> np.ndarray:
    """Cauchy-fraction Gram matrix of the sampled density (conjugate-symmetric assembly)."""
    return _ACTIVE["gram_from_density"](_c128(t), _f64(density), _c128(nodes))


def gram_from_atoms(locations, weights, nodes) -> np.ndarray:
    """Cauchy-fraction Gram matrix of a purely atomic measure (exact finite sums)."""
    return _ACTIVE["gram_from_atoms"](_c128(locations), _f64(weights), _c128(nodes))


def herglotz_transform(t, density, z: complex) -> complex:
    """Quadrature of (t+z)/(t-z) against the sampled density."""
    return complex(_ACTIVE["herglotz_transform"](_c128(t), _f64(density), complex(z)))


def pair_quadrature(t, density, zeta1: complex, zeta2: complex) -> complex:
    """Quadrature of 1/((t-zeta1) conj(t-zeta2)) against the sampled density."""
    return complex(
        _ACTIVE["pair_quadrature"](_c128(t), _f64(density), complex(zeta1), complex(zeta2))
    )
