"""Entropy functionals: Wehrl entropy, Boltzmann entropy, histogram entropy.

For a spin-1/2 state with larger eigenvalue x the Wehrl entropy (differential
entropy of the Husimi density against the invariant measure
d2s = 2 sin(theta) dtheta dphi / 4pi, total sphere volume 2) has the closed form

    S_W(x) = [ (1-x)^2 (ln(1-x) - 1/2) - x^2 (ln x - 1/2) ] / (2x - 1),

continuous on [0, 1] with range [1/2, ln 2]: 1/2 on coherent (pure) states,
ln 2 on the maximally mixed state.  The Boltzmann entropy of N independent
spins with identical reduced state is S_B = N S_W + N - N ln N.

Reported Boltzmann entropies cover the spin sector only: in thermal
equilibrium the translational sector adds a state-independent constant that
cancels in every difference, so it is omitted throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spin import SpinHalfState, SphereDirection, husimi_values

LN2 = math.log(2.0)

# |2x - 1| below this uses the Taylor expansion of the closed form
# (direct evaluation loses digits to cancellation near x = 1/2).
_SERIES_HALFWIDTH = 1e-4


@dataclass(frozen=True)
class QuadratureGrid:
    """Product quadrature on the sphere for the measure d2s (total weight 2).

    theta, phi, weights are flat parallel arrays (one entry per node);
    Gauss-Legendre in cos(theta) crossed with a uniform phi grid.
    """

    theta: np.ndarray
    phi: np.ndarray
    weights: np.ndarray
    n_theta: int
    n_phi: int

    def __post_init__(self) -> None:
        if abs(float(np.sum(self.weights)) - 2.0) > 1e-12:
            raise ValueError("quadrature weights must sum to 2 (sphere volume for s=1/2)")
        if np.any(self.weights <= 0.0):
            raise ValueError("quadrature weights must all be positive")

    def integrate(self, values) -> float:
        """Integrate node values against d2s (deterministic reduction order)."""
        return float(np.dot(self.weights, np.asarray(values, dtype=float)))

    def nodes(self):
        """Iterate the nodes as SphereDirection objects."""
        for t, p in zip(self.theta, self.phi):
            yield SphereDirection(float(t), float(p))


def build_gauss_sphere_grid(n_theta: int, n_phi: int) -> QuadratureGrid:
    """Gauss-Legendre nodes in cos(theta) x uniform nodes in phi.

    Weights are normalized so that their sum is 2, the volume of the
    spin-1/2 sphere under d2s.
    """
    if n_theta < 2 or n_phi < 2:
        raise ValueError(f"grid sizes must be >= 2, got ({n_theta}, {n_phi})")
    u, w = np.polynomial.legendre.leggauss(int(n_theta))
    theta_1d = np.arccos(u)
    phi_1d = 2.0 * math.pi * np.arange(int(n_phi)) / int(n_phi)
    theta = np.repeat(theta_1d, n_phi)
    phi = np.tile(phi_1d, n_theta)
    weights = np.repeat(w / n_phi, n_phi)
    return QuadratureGrid(theta=theta, phi=phi, weights=weights,
                          n_theta=int(n_theta), n_phi=int(n_phi))


# ---------------------------------------------------------------------------
# Wehrl entropy
# ---------------------------------------------------------------------------


def _x_log_x_minus_half(u: float) -> float:
    """u^2 (ln u - 1/2) with the u -> 0 limit 0."""
    if u <= 0.0:
        return 0.0
    return u * u * (math.log(u) - 0.5)


def wehrl_closed_form(x: float) -> float:
    """Wehrl entropy of a spin-1/2 state with larger eigenvalue x in [0, 1].

    The removable singularity at x = 1/2 is evaluated by a 4th-order Taylor
    expansion; the function is symmetric about 1/2 and continuous on [0, 1].
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"mixing parameter must lie in [0, 1], got {x}")
    eps = x - 0.5
    if abs(2.0 * eps) < _SERIES_HALFWIDTH:
        e2 = eps * eps
        return LN2 - (2.0 / 3.0) * e2 - (4.0 / 15.0) * e2 * e2
    return (_x_log_x_minus_half(1.0 - x) - _x_log_x_minus_half(x)) / (2.0 * x - 1.0)


def wehrl_quadrature(state: SpinHalfState, grid: QuadratureGrid) -> float:
    """Wehrl entropy -sum_k w_k f_k ln f_k with f_k the Husimi node values.

    0 ln 0 is treated as 0 (and tiny negative f from rounding likewise).
    """
    f = husimi_values(state, grid.theta, grid.phi)
    safe = np.where(f > 0.0, f, 1.0)
    integrand = np.where(f > 0.0, f * np.log(safe), 0.0)
    return -float(np.dot(grid.weights, integrand))


def boltzmann_from_wehrl(S_W: float, N: int) -> float:
    """Boltzmann entropy of N independent spins: N*S_W + N - N ln N."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return N * S_W + N - N * math.log(N)


# ---------------------------------------------------------------------------
# histogram (macrostate) entropy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MacrostateHistogram:
    """Occupation numbers n(C_a) of phase-space cells for N particles.

    cell_spec is a free-form description of the partition (which coordinates
    are binned and how); counts holds one nonnegative integer per cell.
    """

    counts: np.ndarray
    cell_spec: str = ""
    N: int = field(default=-1)

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64)
        object.__setattr__(self, "counts", counts)
        if np.any(counts < 0):
            raise ValueError("cell counts must be nonnegative")
        total = int(counts.sum())
        if self.N == -1:
            object.__setattr__(self, "N", total)
        elif total != self.N:
            raise ValueError(f"counts sum to {total}, expected N = {self.N}")


def histogram_entropy(hist: MacrostateHistogram) -> float:
    """Exact multinomial Boltzmann entropy ln N! - sum_a ln n_a!.

    This counts the microstates compatible with the occupation numbers; the
    Stirling (continuum) form is available as
    :func:`histogram_entropy_stirling` and agrees to O(ln N).
    """
    if hist.N < 1:
        raise ValueError("histogram must contain at least one particle")
    total = math.lgamma(hist.N + 1)
    occupied = hist.counts[hist.counts > 1]
    return total - float(sum(math.lgamma(int(n) + 1) for n in occupied))


def histogram_entropy_stirling(hist: MacrostateHistogram) -> float:
    """Stirling-limit variant -N sum_a p_a ln p_a of the histogram entropy."""
    if hist.N < 1:
        raise ValueError("histogram must contain at least one particle")
    p = hist.counts[hist.counts > 0] / hist.N
    return -hist.N * float(np.sum(p * np.log(p)))


# ---------------------------------------------------------------------------
# mean spin Hamiltonian during relaxation
# ---------------------------------------------------------------------------


def mean_hamiltonian_analytic(
    t: float, omega_bar: float, alpha: float, gamma_T: float
) -> float:
    """Mean spin energy H(t) = -(omega_bar/(1+2 alpha)) (1 - e^{-Gamma_T (1+2 alpha) t}).

    omega_bar is the spatial average of the precession frequency.  H(0) = 0
    after the initial pi/2 pulse and the pulses at later times leave the
    populations (hence the energy) untouched, so the expression is smooth
    through the whole echo protocol.  With gamma_T = 0 the dynamics conserves
    energy and H is identically 0.
    """
    if t < 0.0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if gamma_T == 0.0:
        return 0.0
    rate = gamma_T * (1.0 + 2.0 * alpha)
    return (omega_bar / (1.0 + 2.0 * alpha)) * math.expm1(-rate * t)
