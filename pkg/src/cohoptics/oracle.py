"""Closed-form results, written out independently of the matrix machinery.

Used only as cross-checks: nothing here calls into ``xfer`` or ``networks``.
Intensities are in units of I0.
"""

from __future__ import annotations

import numpy as np


def _check_n(n: int) -> None:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def r_alphabeta_eq1(zeta):
    """Coincidence after the first beam splitter: (1 + cos 2 zeta) / 2."""
    return 0.5 * (1.0 + np.cos(2.0 * np.asarray(zeta)))


def intensities_eq3_eq4(zeta, phi):
    x = np.cos(zeta) * np.sin(phi)
    return 1.0 + x, 1.0 - x


def r_ab_eq5(zeta, phi):
    return 1.0 - (np.cos(zeta) * np.sin(phi)) ** 2


def fig1_closed_form(zeta, phi) -> np.ndarray:
    """The coupled-MZI amplitude matrix, entry by entry."""
    ez = np.exp(1j * np.asarray(zeta, dtype=float))
    ep = np.exp(1j * np.asarray(phi, dtype=float))
    ez, ep = np.broadcast_arrays(ez, ep)
    out = np.empty(ez.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = ep - 1
    out[..., 0, 1] = 1j * ez * (1 + ep)
    out[..., 1, 0] = 1j * (1 + ep)
    out[..., 1, 1] = ez * (1 - ep)
    return 0.5 * out


def mzi_closed_form(phi) -> np.ndarray:
    ep = np.exp(1j * np.asarray(phi, dtype=float))
    out = np.empty(ep.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = 1 - ep
    out[..., 0, 1] = 1j * (1 + ep)
    out[..., 1, 0] = 1j * (1 + ep)
    out[..., 1, 1] = -(1 - ep)
    return 0.5 * out


def eq8_first_column(phi):
    """Two-block chain at psi = pi acting on (1, 0): (-(1+e^{2i phi})/2, i(1-e^{2i phi})/2)."""
    e2 = np.exp(2j * np.asarray(phi, dtype=float))
    return -(1 + e2) / 2, 1j * (1 - e2) / 2


def eq9_eq10_intensities(phi):
    c = np.cos(2.0 * np.asarray(phi))
    return 0.5 * (1 + c), 0.5 * (1 - c)


def chain_first_column_eq11(n: int, phi):
    """General n-block chain at psi = pi acting on (1, 0)."""
    _check_n(n)
    s = (-1) ** n * np.exp(1j * n * np.asarray(phi, dtype=float))
    pre = 0.5 * (-1) ** (n - 1)
    return pre * (1 + s), pre * (-1j) * (1 - s)


def cbw_intensities_eq12_eq13(n: int, phi):
    _check_n(n)
    c = (-1) ** n * np.cos(n * np.asarray(phi))
    return 0.5 * (1 + c), 0.5 * (1 - c)


def r_ab_eq14(n: int, phi):
    _check_n(n)
    return 0.5 * (1.0 - np.cos(2 * n * np.asarray(phi)))
