"""Dissipative spin-1/2 dynamics: Lindblad generator, analytic solutions, RK4.

The master equation for a spin-1/2 coupled to a thermal reservoir is, in the
(|m=-1/2>, |m=+1/2>) ordered basis of :mod:`spinecho.spin`,

    d rho11 / dt = Gamma_T [ alpha rho00 - (alpha + 1) rho11 ]
    d rho00 / dt = -d rho11 / dt
    d rho01 / dt = [ +i omega_p - Gamma_T (alpha + 1/2) - Gamma_L ] rho01

i.e. thermal raising/lowering dissipators at rates Gamma_T*alpha (absorption)
and Gamma_T*(alpha+1) (emission) plus pure dephasing Gamma_L, with the
Hamiltonian omega_p * S_z.  The solutions are

    rho11(t) = p_inf + (rho11(0) - p_inf) e^{-t/T1'},   p_inf = alpha/(1+2 alpha),
    rho01(t) = rho01(0) e^{+i omega_p t} e^{-t/T2},

with relaxation times

    T1 = [Gamma_T (2 alpha + 1)]^{-1},
    T2 = [Gamma_T (alpha + 1/2) + Gamma_L]^{-1},

so T1/T2 >= 1/2 always.  The stationary state is the thermal state of
:func:`spinecho.spin.thermal_state` for the same alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spin import SpinHalfState


class InfeasibleRatioError(ValueError):
    """Requested T1/T2 ratio below the algebraic floor of 1/2."""


@dataclass(frozen=True)
class ReservoirParams:
    """Reservoir coupling: transverse/longitudinal rates, thermal alpha, and
    the local precession frequency omega_p."""

    gamma_T: float
    gamma_L: float
    alpha: float
    omega_p: float

    def __post_init__(self) -> None:
        if self.gamma_T < 0.0 or self.gamma_L < 0.0:
            raise ValueError("dissipation rates must be nonnegative")
        if self.alpha < 0.0 or math.isnan(self.alpha):
            raise ValueError(f"alpha must be nonnegative, got {self.alpha}")
        if not math.isfinite(self.omega_p):
            raise ValueError("omega_p must be finite")

    @property
    def t1(self) -> float:
        return relaxation_times(self)[0]

    @property
    def t2(self) -> float:
        return relaxation_times(self)[1]

    @property
    def population_rate(self) -> float:
        """Longitudinal relaxation rate Gamma_T (1 + 2 alpha) = 1/T1."""
        if self.gamma_T == 0.0:
            return 0.0
        return self.gamma_T * (1.0 + 2.0 * self.alpha)

    @property
    def coherence_rate(self) -> float:
        """Transverse decay rate Gamma_T (alpha + 1/2) + Gamma_L = 1/T2."""
        rate = self.gamma_L
        if self.gamma_T > 0.0:
            rate += self.gamma_T * (self.alpha + 0.5)
        return rate

    @property
    def stationary_population(self) -> float:
        """Excited-level population alpha/(1 + 2 alpha) of the fixed point."""
        if math.isinf(self.alpha):
            return 0.5
        return self.alpha / (1.0 + 2.0 * self.alpha)


def relaxation_times(params: ReservoirParams) -> tuple[float, float]:
    """(T1, T2); an infinite time is returned when the matching rate is 0."""
    r1 = params.population_rate
    r2 = params.coherence_rate
    t1 = math.inf if r1 == 0.0 else 1.0 / r1
    t2 = math.inf if r2 == 0.0 else 1.0 / r2
    return t1, t2


def gamma_L_for_ratio(ratio: float, gamma_T: float, alpha: float) -> float:
    """Pure-dephasing rate giving the requested T1/T2 ratio.

    Gamma_L = Gamma_T (2 alpha + 1) ratio - Gamma_T (alpha + 1/2); feasible
    only for ratio >= 1/2 (Gamma_L would otherwise be negative).
    """
    if gamma_T <= 0.0:
        raise ValueError("gamma_T must be positive to target a T1/T2 ratio")
    if alpha < 0.0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    if ratio < 0.5:
        raise InfeasibleRatioError(
            f"T1/T2 = {ratio} is below the algebraic floor 1/2"
        )
    gamma_L = gamma_T * (2.0 * alpha + 1.0) * ratio - gamma_T * (alpha + 0.5)
    if gamma_L < 0.0:  # rounding at the ratio = 1/2 boundary
        gamma_L = 0.0
    return gamma_L


# ---------------------------------------------------------------------------
# generator and propagators
# ---------------------------------------------------------------------------


def _rhs_components(
    rho11: float, rho01: complex, params: ReservoirParams
) -> tuple[float, complex]:
    """(d rho11/dt, d rho01/dt) -- scalar core shared with the integrator."""
    rho00 = 1.0 - rho11
    d11 = params.gamma_T * (params.alpha * rho00 - (params.alpha + 1.0) * rho11)
    d01 = (complex(0.0, params.omega_p) - params.coherence_rate) * rho01
    return d11, d01


def lindblad_rhs(state: SpinHalfState, params: ReservoirParams) -> np.ndarray:
    """Right-hand side of the master equation as a traceless 2x2 matrix."""
    d11, d01 = _rhs_components(state.rho11, state.rho01, params)
    return np.array([[-d11, d01], [d01.conjugate(), d11]], dtype=complex)


def evolve_analytic(
    state0: SpinHalfState, t: float, params: ReservoirParams
) -> SpinHalfState:
    """Propagate a state for time t with the exact solutions.

    Populations relax exponentially at rate Gamma_T (1 + 2 alpha) toward the
    thermal value; the coherence rotates by e^{+i omega_p t} and decays at
    1/T2.  The map is a completely positive semigroup: composing two calls
    equals one call for the summed time.
    """
    if t < 0.0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if t == 0.0:
        return state0
    p_inf = params.stationary_population
    e1 = math.exp(-params.population_rate * t)
    rho11 = p_inf + (state0.rho11 - p_inf) * e1
    decay = math.exp(-params.coherence_rate * t)
    if decay == 0.0 or state0.rho01 == 0.0:
        rho01 = 0.0j
    else:
        wt = params.omega_p * t
        rho01 = state0.rho01 * complex(math.cos(wt), math.sin(wt)) * decay
    return SpinHalfState(rho11=rho11, rho00=1.0 - rho11, rho01=rho01)


def evolve_numeric(
    state0: SpinHalfState, t: float, dt: float, params: ReservoirParams
) -> SpinHalfState:
    """Classical fixed-step RK4 integration of the master equation.

    Serves as the independent cross-check of :func:`evolve_analytic`; the
    deviation between the two is O(dt^4).
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    if dt > t:
        raise ValueError(f"dt = {dt} exceeds total time t = {t}")
    n_steps = max(1, round(t / dt))
    h = t / n_steps
    y11, y01 = state0.rho11, complex(state0.rho01)
    for _ in range(n_steps):
        k1_11, k1_01 = _rhs_components(y11, y01, params)
        k2_11, k2_01 = _rhs_components(y11 + 0.5 * h * k1_11, y01 + 0.5 * h * k1_01, params)
        k3_11, k3_01 = _rhs_components(y11 + 0.5 * h * k2_11, y01 + 0.5 * h * k2_01, params)
        k4_11, k4_01 = _rhs_components(y11 + h * k3_11, y01 + h * k3_01, params)
        y11 += (h / 6.0) * (k1_11 + 2.0 * k2_11 + 2.0 * k3_11 + k4_11)
        y01 += (h / 6.0) * (k1_01 + 2.0 * k2_01 + 2.0 * k3_01 + k4_01)
    return SpinHalfState(rho11=y11, rho00=1.0 - y11, rho01=y01)


def bloch_observables(state: SpinHalfState, N: int) -> tuple[float, complex, complex]:
    """(M_z, M_+, M_-) for N identical spins: M_i = N <S_i>.

    M_z = N (rho11 - rho00)/2 and M_+ = N rho01 = M_x + i M_y; under
    :func:`evolve_analytic`, M_+ evolves as e^{+i omega_p t} e^{-t/T2}
    (counterclockwise transverse rotation) and M_z relaxes at 1/T1.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    m_plus = N * state.rho01
    return N * 0.5 * (state.rho11 - state.rho00), m_plus, m_plus.conjugate()
