"""Two-mode transfer-matrix algebra.

Matrices are ``complex128`` arrays of shape ``(..., 2, 2)``; rows are output
modes and columns input modes, index 0 is the upper (signal) path and index 1
the lower (idler) path. Every builder broadcasts over array-valued phases, so a
whole parameter grid can be composed in one call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

Matrix2 = np.ndarray
Phase = Union[float, np.ndarray]

TOL = 1e-12
TWO_PI = 2.0 * math.pi
ARMS = ("upper", "lower")


def _check_finite(x, what: str) -> None:
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{what} must be finite, got {x!r}")


@dataclass(frozen=True)
class FieldPair:
    """Complex amplitudes on the two modes, in units of sqrt(I0).

    ``upper`` and ``lower`` may be arrays when a batch of matrices was applied.
    """

    upper: complex | np.ndarray
    lower: complex | np.ndarray

    def __post_init__(self):
        _check_finite(self.upper, "upper amplitude")
        _check_finite(self.lower, "lower amplitude")

    @property
    def intensities(self) -> tuple:
        return np.abs(self.upper) ** 2, np.abs(self.lower) ** 2

    @property
    def total_intensity(self):
        i_u, i_l = self.intensities
        return i_u + i_l

    def as_array(self) -> np.ndarray:
        return np.stack(np.broadcast_arrays(self.upper, self.lower), axis=-1).astype(complex)


@dataclass(frozen=True)
class PhaseSpec:
    """Phase produced by a path-length difference at a given wavelength (meters)."""

    wavelength: float
    path_difference: float

    def __post_init__(self):
        _check_finite(self.wavelength, "wavelength")
        _check_finite(self.path_difference, "path_difference")
        if self.wavelength <= 0:
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")

    @property
    def phase(self) -> float:
        return TWO_PI * self.path_difference / self.wavelength

    @property
    def wrapped(self) -> float:
        return wrap_phase(self.phase)


def wrap_phase(theta: float) -> float:
    """Representative of ``theta`` in [0, 2*pi)."""
    w = math.fmod(theta, TWO_PI)
    if w < 0:
        w += TWO_PI
    # fmod of a tiny negative number can round up to exactly 2*pi
    return 0.0 if w >= TWO_PI else w


def phase_of(spec: PhaseSpec) -> float:
    return spec.phase


def identity() -> Matrix2:
    return np.eye(2, dtype=complex)


def bs_matrix() -> Matrix2:
    """Lossless 50/50 beam splitter, (1/sqrt 2) [[1, i], [i, 1]]."""
    return np.array([[1.0, 1j], [1j, 1.0]], dtype=complex) / math.sqrt(2.0)


def phase_matrix(theta: Phase, arm: str = "upper") -> Matrix2:
    """Phase shift ``exp(i theta)`` on one arm: diag(e^{i theta}, 1) or diag(1, e^{i theta})."""
    if arm not in ARMS:
        raise ValueError(f"arm must be one of {ARMS}, got {arm!r}")
    theta = np.asarray(theta, dtype=float)
    _check_finite(theta, "theta")
    out = np.zeros(theta.shape + (2, 2), dtype=complex)
    k = 0 if arm == "upper" else 1
    out[..., k, k] = np.exp(1j * theta)
    out[..., 1 - k, 1 - k] = 1.0
    return out


def mat_mul(a: Matrix2, b: Matrix2) -> Matrix2:
    return np.matmul(a, b)


def compose(*matrices: Matrix2) -> Matrix2:
    """Product of matrices given in propagation order (first argument acts first)."""
    out = identity()
    for m in matrices:
        out = np.matmul(m, out)
    return out


def mat_apply(m: Matrix2, f: FieldPair) -> FieldPair:
    m = np.asarray(m)
    up = m[..., 0, 0] * f.upper + m[..., 0, 1] * f.lower
    lo = m[..., 1, 0] * f.upper + m[..., 1, 1] * f.lower
    if np.ndim(up) == 0:
        return FieldPair(complex(up), complex(lo))
    return FieldPair(up, lo)


def dagger(m: Matrix2) -> Matrix2:
    return np.conj(np.swapaxes(m, -1, -2))


def unitarity_residual(m: Matrix2) -> float:
    """Largest Frobenius norm of M^dagger M - I over a batch."""
    err = np.matmul(dagger(m), m) - np.eye(2)
    return float(np.max(np.sqrt(np.sum(np.abs(err) ** 2, axis=(-2, -1)))))


def approx_eq_up_to_global_phase(a: Matrix2, b: Matrix2, tol: float = TOL) -> bool:
    """True iff ``a`` is within ``tol`` (Frobenius) of ``c*b`` for a unimodular ``c``.

    ``c`` is read off the largest-magnitude entry of ``b``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    ratio = a[idx] / b[idx] if b[idx] != 0 else 0.0
    c = ratio / abs(ratio) if ratio != 0 else 1.0
    return bool(np.linalg.norm(a - c * b) <= tol)
