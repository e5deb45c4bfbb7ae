"""Classical precessing-dipole ensembles in an inhomogeneous field.

Each dipole carries a position, a momentum, and a classical spin direction;
it precesses about +z at its local frequency omega = g * B(x), so the
azimuth evolves as phi(t) = phi(0) + omega t (counterclockwise, matching the
quantum convention in :mod:`spinecho.spin`).  The inversion pulse maps
phi -> -phi with theta untouched.

The dipole stores its azimuth *unwrapped* (any real value); the
SphereDirection view normalizes.  This keeps the echo identity exact in
floating point: precess(tau) o invert o precess(tau) returns every phase to
literally 0.0, because the two halves accumulate the identical product
omega * tau.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Literal, NamedTuple

import numpy as np

from .spin import PhysicalParams, SphereDirection, _wrap_angle

# sigma_omega / omega_bar above this triggers the narrow-band warning
NARROWBAND_RATIO = 0.5

_FOURIER_CAP = 512
_RINGING_WARN = 1e-12


# ---------------------------------------------------------------------------
# field profiles and frequency statistics
# ---------------------------------------------------------------------------


class FieldProfile:
    """Static field magnitude B(x) > 0 along +z over the domain [0, extent).

    Two kinds:

    * ``gaussian-cells``: the domain splits into n_cells equal cells whose
      field values are independent draws from Normal(mean_B, sigma_B)
      (nonpositive draws are redrawn, deterministically for a fixed seed).
      B is constant within a cell.
    * ``linear-gradient``: B(x) = mean_B + slope * (x - extent/2); cells for
      macrostate binning are the same equal split with midpoint fields.
    """

    def __init__(self, kind: str, mean_B: float, extent: float, n_cells: int,
                 cell_B: np.ndarray, slope: float = 0.0, sigma_B: float = 0.0,
                 seed: int | None = None):
        if mean_B <= 0.0:
            raise ValueError(f"mean_B must be positive, got {mean_B}")
        if extent <= 0.0:
            raise ValueError(f"extent must be positive, got {extent}")
        if n_cells < 1:
            raise ValueError(f"n_cells must be >= 1, got {n_cells}")
        self.kind = kind
        self.mean_B = float(mean_B)
        self.extent = float(extent)
        self.n_cells = int(n_cells)
        self.cell_B = np.asarray(cell_B, dtype=float)
        self.slope = float(slope)
        self.sigma_B = float(sigma_B)
        self.seed = seed
        if np.any(self.cell_B <= 0.0):
            raise ValueError("field must be positive over the whole domain")

    @classmethod
    def gaussian_cells(cls, mean_B: float, sigma_B: float, n_cells: int,
                       seed: int, extent: float = 1.0) -> "FieldProfile":
        if sigma_B < 0.0:
            raise ValueError(f"sigma_B must be nonnegative, got {sigma_B}")
        rng = np.random.default_rng(seed)
        values = rng.normal(mean_B, sigma_B, size=n_cells)
        bad = values <= 0.0
        while np.any(bad):  # redraw nonpositive cells (truncation)
            values[bad] = rng.normal(mean_B, sigma_B, size=int(bad.sum()))
            bad = values <= 0.0
        return cls("gaussian-cells", mean_B, extent, n_cells, values,
                   sigma_B=sigma_B, seed=seed)

    @classmethod
    def linear_gradient(cls, mean_B: float, slope: float, extent: float = 1.0,
                        n_cells: int = 100) -> "FieldProfile":
        if mean_B - abs(slope) * extent / 2.0 <= 0.0:
            raise ValueError("gradient makes the field nonpositive inside the domain")
        mids = (np.arange(n_cells) + 0.5) * (extent / n_cells)
        values = mean_B + slope * (mids - extent / 2.0)
        return cls("linear-gradient", mean_B, extent, n_cells, values, slope=slope)

    def cell_index(self, x: float) -> int:
        if not 0.0 <= x < self.extent:
            raise ValueError(f"position {x} outside the domain [0, {self.extent})")
        return min(self.n_cells - 1, int(x / self.extent * self.n_cells))

    def field_at(self, x: float) -> float:
        if self.kind == "gaussian-cells":
            return float(self.cell_B[self.cell_index(x)])
        return self.mean_B + self.slope * (x - self.extent / 2.0)


@dataclass(frozen=True)
class FrequencyDistribution:
    """Gaussian precession-frequency statistics: mean omega_bar, spread sigma_omega.

    Warns when sigma_omega is not small against omega_bar, outside the
    narrow-band regime the label-averaged description assumes.
    """

    omega_bar: float
    sigma_omega: float

    def __post_init__(self) -> None:
        if self.sigma_omega < 0.0:
            raise ValueError(f"sigma_omega must be nonnegative, got {self.sigma_omega}")
        if self.sigma_omega > NARROWBAND_RATIO * self.omega_bar:
            warnings.warn(
                f"sigma_omega = {self.sigma_omega} is not small against "
                f"omega_bar = {self.omega_bar}; narrow-band assumption violated",
                stacklevel=2,
            )


# ---------------------------------------------------------------------------
# dipoles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalDipole:
    """Point dipole: position x, momentum p, spin (theta, unwrapped phi),
    and its cached precession frequency omega = g * B(x).

    Positions are frozen within a run (each dipole keeps its field cell), so
    omega never needs recomputing after construction.
    """

    x: np.ndarray
    p: np.ndarray
    theta: float
    phi: float
    omega: float

    @property
    def spin(self) -> SphereDirection:
        return SphereDirection(self.theta, _wrap_angle(self.phi))

    @property
    def kinetic_energy_over_mass(self) -> float:
        """p^2 / 2 (divide by the particle mass for the energy)."""
        return 0.5 * float(np.dot(self.p, self.p))


def precess(dipole: ClassicalDipole, dt: float) -> ClassicalDipole:
    """Free precession: phi -> phi + omega * dt, theta and (x, p) untouched."""
    if dt < 0.0:
        raise ValueError(f"dt must be nonnegative, got {dt}")
    return replace(dipole, phi=dipole.phi + dipole.omega * dt)


def pi_pulse(dipole: ClassicalDipole) -> ClassicalDipole:
    """Inversion pulse: phi -> -phi, theta unchanged.  An involution."""
    return replace(dipole, phi=-dipole.phi)


def net_magnetization(ensemble: list[ClassicalDipole], m: float) -> np.ndarray:
    """Total moment m * sum_i (sin t_i cos p_i, sin t_i sin p_i, cos t_i)."""
    if not ensemble:
        raise ValueError("ensemble must be nonempty")
    mx = my = mz = 0.0
    for d in ensemble:
        st = math.sin(d.theta)
        mx += st * math.cos(d.phi)
        my += st * math.sin(d.phi)
        mz += math.cos(d.theta)
    return m * np.array([mx, my, mz])


def sample_thermal_ensemble(
    N: int,
    beta: float,
    params: PhysicalParams,
    field: FieldProfile,
    seed: int,
    start: Literal["post_pulse", "aligned"] = "post_pulse",
) -> list[ClassicalDipole]:
    """Draw N dipoles: uniform positions, Maxwell-Boltzmann momenta at beta,
    and spins either all at (pi/2, 0) (just after the initial pi/2 pulse) or
    aligned with the field (theta = 0, the beta*m*B >> 1 equilibrium).

    Deterministic for a fixed seed.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if beta <= 0.0:
        raise ValueError(f"beta must be positive, got {beta}")
    if start not in ("post_pulse", "aligned"):
        raise ValueError(f"unknown start {start!r}")
    rng = np.random.default_rng(seed)
    positions = rng.uniform(0.0, field.extent, size=(N, 3))
    momenta = rng.normal(0.0, math.sqrt(params.mass / beta), size=(N, 3))
    theta = math.pi / 2.0 if start == "post_pulse" else 0.0
    return [
        ClassicalDipole(
            x=positions[i],
            p=momenta[i],
            theta=theta,
            phi=0.0,
            omega=params.g * field.field_at(positions[i, 0]),
        )
        for i in range(N)
    ]


# ---------------------------------------------------------------------------
# label-averaged azimuthal density and its entropy production
# ---------------------------------------------------------------------------


def default_fourier_cutoff(sigma_t: float) -> int:
    """Truncation order ceil(8 / sigma_t) capped at 512 (modes beyond carry
    weight below e^{-32})."""
    return min(_FOURIER_CAP, math.ceil(8.0 / (sigma_t + 1e-12)))


def averaged_f(phi, t: float, dist: FrequencyDistribution,
               n_max: int | None = None):
    """Azimuthal density of an ensemble with Gaussian frequency spread.

    f(phi, t) = (1/2pi) [1 + 2 sum_{n=1}^{n_max} e^{-n^2 sigma^2 t^2 / 2}
                             cos(n (phi - omega_bar t))],

    the truncated wrapped-normal series centered at omega_bar * t.  It is
    real by conjugate pairing and integrates to 1 over [0, 2pi) before
    clipping; truncation ringing below 1e-12 is clipped silently, larger
    negative excursions are clipped with a warning.
    """
    phi_arr = np.asarray(phi, dtype=float)
    scalar = phi_arr.ndim == 0
    sigma_t = dist.sigma_omega * t
    if n_max is None:
        n_max = default_fourier_cutoff(sigma_t)
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    n = np.arange(1, n_max + 1)
    amps = np.exp(-0.5 * (n * sigma_t) ** 2)
    shifted = np.atleast_1d(phi_arr) - dist.omega_bar * t
    f = (1.0 + 2.0 * (amps @ np.cos(np.outer(n, shifted)))) / (2.0 * math.pi)
    worst = float(f.min())
    if worst < -_RINGING_WARN:
        warnings.warn(
            f"truncation ringing reaches {worst:.3e}; clipped to 0 "
            f"(n_max = {n_max}, sigma*t = {sigma_t:.3g})",
            stacklevel=2,
        )
    f = np.maximum(f, 0.0)
    return float(f[0]) if scalar else f


def angular_entropy(f_samples, dphi: float) -> float:
    """-integral f ln f dphi on a uniform grid (0 ln 0 treated as 0)."""
    f = np.asarray(f_samples, dtype=float)
    safe = np.where(f > 0.0, f, 1.0)
    return -float(np.sum(np.where(f > 0.0, f * np.log(safe), 0.0))) * dphi


def diffusive_entropy_rate(f_samples, sigma_omega: float, t: float) -> float:
    """Entropy production sigma^2 t * integral (1/f) (df/dphi)^2 dphi.

    f_samples holds strictly positive density values on a uniform grid over
    [0, 2pi); the derivative is spectral.  The result is nonnegative for any
    admissible f and vanishes only for the uniform density.
    """
    f = np.asarray(f_samples, dtype=float)
    if np.any(f <= 0.0):
        raise ValueError("density samples must be strictly positive")
    n = f.size
    modes = np.arange(n // 2 + 1, dtype=float)
    if n % 2 == 0:
        modes[-1] = 0.0  # drop the unpaired Nyquist mode of the real FFT
    df = np.fft.irfft(1j * modes * np.fft.rfft(f), n)
    dphi = 2.0 * math.pi / n
    return sigma_omega**2 * t * float(np.sum(df * df / f)) * dphi


class LiouvilleEstimate(NamedTuple):
    ratio: float
    negligible: bool


def liouville_correction_ratio(beta: float, mass: float, L: float) -> LiouvilleEstimate:
    """Order of magnitude sqrt(beta/mass)/L of the field-gradient force term
    relative to pure precession; `negligible` is True below 1e-2.

    sqrt(beta/mass) is the thermal de Broglie wavelength, L the field
    inhomogeneity scale; freezing the translational motion is self-consistent
    only when the ratio is small.
    """
    if beta <= 0.0 or mass <= 0.0 or L <= 0.0:
        raise ValueError("beta, mass and L must all be positive")
    ratio = math.sqrt(beta / mass) / L
    return LiouvilleEstimate(ratio=ratio, negligible=ratio < 1e-2)
