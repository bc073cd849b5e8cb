"""Renormalization-group flow of the bosonized chain and the static phase map.

The sine-Gordon coupling alpha and Luttinger parameter K run as

    d(alpha)/dl = (2 - 1/K) alpha,      dK/dl = alpha^2 / 4,

so K never decreases and alpha = 0 is a line of fixed points.  For
K > 1/2 the coupling is relevant and opens the gap
M = cutoff * (alpha/2)^(1/(2 - 1/K)); a quench field comparable to M
restores the Luttinger liquid and a larger one polarizes the chain.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

COMPLETED = "completed"
STRONG_COUPLING = "strong_coupling"


class PhaseLabel(enum.Enum):
    LUTTINGER_LIQUID = "luttinger_liquid"
    STAGGERED_ORDER = "staggered_order"
    FERROMAGNETIC = "ferromagnetic"


@dataclass(frozen=True)
class RGState:
    """Running couplings (alpha, K) at logarithmic scale l."""

    alpha: float
    K: float
    l: float = 0.0

    def __post_init__(self):
        if not self.alpha >= 0.0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if not self.K > 0.0:
            raise ValueError(f"K must be > 0, got {self.K}")
        if not self.l >= 0.0:
            raise ValueError(f"l must be >= 0, got {self.l}")


@dataclass(frozen=True)
class RGTrajectory:
    states: tuple
    status: str


def _rhs(alpha: float, K: float) -> tuple[float, float]:
    return (2.0 - 1.0 / K) * alpha, alpha * alpha / 4.0


def rg_flow(
    initial: RGState, l_max: float, dl: float = 1e-3, alpha_cap: float = 1e3
) -> RGTrajectory:
    """Integrate the flow with fixed-step classical RK4 from initial.l to l_max.

    The fixed step keeps trajectories reproducible bit for bit.  If alpha
    exceeds alpha_cap the run stops early with status "strong_coupling"
    (the perturbative equations have left their domain); otherwise the
    status is "completed".
    """
    if not dl > 0.0:
        raise ValueError(f"dl must be > 0, got {dl}")
    if not l_max > initial.l:
        raise ValueError(f"l_max must exceed initial.l = {initial.l}, got {l_max}")
    n = max(1, int(round((l_max - initial.l) / dl)))
    h = (l_max - initial.l) / n

    states = [initial]
    a, k = initial.alpha, initial.K
    status = COMPLETED
    for i in range(1, n + 1):
        da1, dk1 = _rhs(a, k)
        da2, dk2 = _rhs(a + 0.5 * h * da1, k + 0.5 * h * dk1)
        da3, dk3 = _rhs(a + 0.5 * h * da2, k + 0.5 * h * dk2)
        da4, dk4 = _rhs(a + h * da3, k + h * dk3)
        a = a + (h / 6.0) * (da1 + 2.0 * da2 + 2.0 * da3 + da4)
        k = k + (h / 6.0) * (dk1 + 2.0 * dk2 + 2.0 * dk3 + dk4)
        states.append(RGState(alpha=a, K=k, l=initial.l + i * h))
        if a > alpha_cap:
            status = STRONG_COUPLING
            break
    return RGTrajectory(states=tuple(states), status=status)


def mass_gap(alpha: float, K: float, cutoff: float) -> float:
    """Sine-Gordon gap M = cutoff * (alpha/2)^(1/(2 - 1/K)), defined for K > 1/2."""
    if not K > 0.5:
        raise ValueError(f"mass gap needs the relevant regime K > 1/2, got K={K}")
    if not alpha > 0.0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    if not cutoff > 0.0:
        raise ValueError(f"cutoff must be > 0, got {cutoff}")
    return cutoff * (alpha / 2.0) ** (1.0 / (2.0 - 1.0 / K))


def classify_phase(
    K: float,
    alpha: float,
    B: float,
    cutoff: float,
    band: float = 0.5,
    b_ferro: float = 1.0,
) -> PhaseLabel:
    """Static phase of the chain under a quench-induced field B.

    K <= 1/2: the coupling is irrelevant; the Luttinger liquid survives
    until the field exceeds b_ferro (single-particle band edge by
    default), after which the chain polarizes.  K > 1/2: the gapped
    staggered phase holds for B well below the gap M, the field wins for
    B well above it, and a field of the order of M (relative band `band`)
    restores the Luttinger liquid.
    """
    if not 0.0 < band < 1.0:
        raise ValueError(f"band must lie in (0, 1), got {band}")
    if not B >= 0.0:
        raise ValueError(f"quench field must be >= 0, got {B}")
    if K <= 0.5:
        return PhaseLabel.FERROMAGNETIC if B > b_ferro else PhaseLabel.LUTTINGER_LIQUID
    m = mass_gap(alpha, K, cutoff)
    if B > (1.0 + band) * m:
        return PhaseLabel.FERROMAGNETIC
    if B < (1.0 - band) * m:
        return PhaseLabel.STAGGERED_ORDER
    return PhaseLabel.LUTTINGER_LIQUID


def flow_derivative(state: RGState) -> tuple[float, float]:
    """Right-hand side (d alpha/dl, dK/dl) at the given couplings."""
    return _rhs(state.alpha, state.K)
