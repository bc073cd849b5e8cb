"""Anisotropic XY chain in a transverse field: momentum grid, dispersion, Bogoliubov angle.

Model (energies in units of the exchange coupling):

    H = sum_j [ (1+alpha)/2 sx_j sx_{j+1} + (1-alpha)/2 sy_j sy_{j+1} + B sz_j ]

with periodic boundaries.  In the even fermion-parity sector the
Jordan-Wigner pseudomomenta take the half-integer values
k = +/-(2m-1)*pi/N, m = 1..N/2, and each (k, -k) pair carries the gap
Lambda_k = sqrt((cos k - B)^2 + alpha^2 sin^2 k) and mixing angle
cos(theta_k) = (cos k - B)/Lambda_k.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DegeneratePointError(ValueError):
    """Gap closes (cos k = B with alpha*sin k = 0); the Bogoliubov angle is 0/0 there."""

    def __init__(self, k, B, alpha):
        self.k = float(k)
        self.B = float(B)
        self.alpha = float(alpha)
        super().__init__(
            f"gapless point at k={self.k!r} (B={self.B!r}, alpha={self.alpha!r}): "
            "cos(theta_k) is undefined"
        )


@dataclass(frozen=True)
class ChainSpec:
    """Chain geometry and couplings: N spins, anisotropy alpha, rotation angle phi."""

    n_sites: int
    alpha: float
    phi: float = 0.0

    def __post_init__(self):
        if self.n_sites < 2 or self.n_sites % 2 != 0:
            raise ValueError(f"n_sites must be a positive even integer, got {self.n_sites}")
        if not self.alpha >= 0.0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")


@dataclass(frozen=True)
class Mode:
    """One positive momentum with its gap Lambda_k and Bogoliubov angle cos(theta_k)."""

    k: float
    lambda_k: float
    cos_theta_k: float

    def __post_init__(self):
        if not self.lambda_k >= 0.0:
            raise ValueError(f"lambda_k must be >= 0, got {self.lambda_k}")
        if abs(self.cos_theta_k) > 1.0:
            raise ValueError(f"|cos_theta_k| must be <= 1, got {self.cos_theta_k}")


def momentum_grid(spec: ChainSpec) -> np.ndarray:
    """Positive half-integer pseudomomenta (2m-1)*pi/N, m = 1..N/2, strictly increasing.

    The smallest entry k0 = pi/N is the minimum-gap mode; the negative
    partners -k are implied by symmetry.
    """
    m = np.arange(1, spec.n_sites // 2 + 1)
    return (2 * m - 1) * np.pi / spec.n_sites


def dispersion(k, B, alpha):
    """Quasiparticle gap Lambda_k = sqrt((cos k - B)^2 + alpha^2 sin^2 k); >= 0 always."""
    return np.hypot(np.cos(k) - B, alpha * np.sin(k))


def bogoliubov_angle(k, B, alpha):
    """cos(theta_k) = (cos k - B)/Lambda_k, in [-1, 1].

    Raises DegeneratePointError at gapless points; callers must mask or
    perturb rather than receive a sentinel.
    """
    c = np.cos(k) - B
    lam = np.hypot(c, alpha * np.sin(k))
    if np.any(lam == 0.0):
        k_b, B_b, a_b, lam_b = map(np.ravel, np.broadcast_arrays(k, B, alpha, lam))
        i = int(np.flatnonzero(lam_b == 0.0)[0])
        raise DegeneratePointError(k_b[i], B_b[i], a_b[i])
    return c / lam


def mode_at(k: float, B: float, alpha: float) -> Mode:
    """Mode record at a single gapped momentum."""
    lam = float(dispersion(k, B, alpha))
    if lam == 0.0:
        raise DegeneratePointError(k, B, alpha)
    return Mode(k=float(k), lambda_k=lam, cos_theta_k=float((np.cos(k) - B) / lam))


def modes_on_grid(spec: ChainSpec, B: float) -> list[Mode]:
    """Mode records for every positive grid momentum at field B."""
    return [mode_at(float(k), B, spec.alpha) for k in momentum_grid(spec)]
