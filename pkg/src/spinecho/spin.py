"""Spin-1/2 states, spin coherent states, Husimi values, and ideal pulses.

Sign and basis conventions (fixed here once, relied on everywhere else):

* Basis ordering is ``(index 0, index 1) = (|m=-1/2>, |m=+1/2>)``, so
  ``rho11`` is the population of the level that is *excited* for a field
  along +z (Hamiltonian ``H = omega_p * S_z`` with ``S_z = diag(-1/2, +1/2)``).
  The thermal occupation of that level is ``alpha / (1 + 2 alpha)``.
* Bloch vector: ``rz = rho11 - rho00`` and ``rx + i ry = 2 * rho01`` where
  ``rho01 = <-1/2| rho |+1/2> = <S_+>``.  Under free precession ``rho01``
  acquires the phase ``e^{+i omega_p t}``: the transverse magnetization
  rotates counterclockwise, ``M(t) ~ (cos wt, sin wt, 0)``, matching the
  classical dipole solution in :mod:`spinecho.ensemble`.
* Spin coherent states use the normalized highest-weight expansion

      |theta, phi> = sum_m sqrt(C(2s, s+m)) cos^{s+m}(theta/2)
                     sin^{s-m}(theta/2) e^{-i m phi} |m>,

  so ``|<a|b>|^2 = cos^{4s}(Theta/2)`` with ``Theta`` the great-circle angle
  between the two directions.  Only moduli of overlaps feed any entropy or
  magnetization result; the amplitude phase convention is quarantined here.
* The Husimi value of a state at direction ``n`` is
  ``<n|rho|n> = (1 + r . n) / 2`` with ``r`` the Bloch vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

_TRACE_TOL = 1e-12
_POSITIVITY_TOL = 1e-12
_AXIS_TOL = 1e-12


def _wrap_angle(phi: float) -> float:
    """Map an angle into [0, 2*pi)."""
    out = phi % TWO_PI
    # Python's % can round up to the modulus itself for tiny negative inputs.
    if out >= TWO_PI:
        out = 0.0
    return out


@dataclass(frozen=True)
class SphereDirection:
    """Point on the unit sphere: polar angle theta in [0, pi], azimuth phi.

    phi is normalized into [0, 2*pi) on construction.
    """

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        object.__setattr__(self, "phi", _wrap_angle(float(self.phi)))

    @property
    def unit_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )

    @classmethod
    def from_vector(cls, v) -> "SphereDirection":
        v = np.asarray(v, dtype=float)
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            raise ValueError("cannot infer a direction from the zero vector")
        return cls(math.acos(max(-1.0, min(1.0, v[2] / norm))), math.atan2(v[1], v[0]))


@dataclass(frozen=True)
class BlochVector:
    """Bloch vector (rx, ry, rz) of a spin-1/2 state; |r| <= 1."""

    rx: float
    ry: float
    rz: float

    def __post_init__(self) -> None:
        if self.norm > 1.0 + 1e-12:
            raise ValueError(f"Bloch vector norm {self.norm} exceeds 1")

    @property
    def norm(self) -> float:
        return math.sqrt(self.rx**2 + self.ry**2 + self.rz**2)

    def to_state(self) -> "SpinHalfState":
        return SpinHalfState.from_bloch(self.rx, self.ry, self.rz)


@dataclass(frozen=True)
class SpinHalfState:
    """Single-particle spin-1/2 density matrix.

    rho11 is the population of |m=+1/2>, rho00 the population of |m=-1/2>,
    and rho01 the (row 0, column 1) coherence <-1/2|rho|+1/2>, i.e. <S_+>.
    """

    rho11: float
    rho00: float
    rho01: complex

    def __post_init__(self) -> None:
        if abs(self.rho00 + self.rho11 - 1.0) > _TRACE_TOL:
            raise ValueError(
                f"populations must sum to 1, got {self.rho00 + self.rho11!r}"
            )
        if self.rho00 < -_POSITIVITY_TOL or self.rho11 < -_POSITIVITY_TOL:
            raise ValueError(
                f"negative population: rho00={self.rho00!r}, rho11={self.rho11!r}"
            )
        if self.rho00 * self.rho11 - abs(self.rho01) ** 2 < -_POSITIVITY_TOL:
            raise ValueError(
                "positivity violated: rho00*rho11 < |rho01|^2 "
                f"({self.rho00 * self.rho11!r} < {abs(self.rho01) ** 2!r})"
            )
        object.__setattr__(self, "rho01", complex(self.rho01))

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_bloch(cls, rx: float, ry: float, rz: float) -> "SpinHalfState":
        return cls(
            rho11=0.5 * (1.0 + rz),
            rho00=0.5 * (1.0 - rz),
            rho01=0.5 * complex(rx, ry),
        )

    @classmethod
    def maximally_mixed(cls) -> "SpinHalfState":
        return cls(0.5, 0.5, 0.0)

    @classmethod
    def pure(cls, direction: SphereDirection) -> "SpinHalfState":
        """Projector onto the coherent state pointing along `direction`."""
        c, s = math.cos(direction.theta / 2.0), math.sin(direction.theta / 2.0)
        return cls(
            rho11=c * c,
            rho00=s * s,
            rho01=s * c * complex(math.cos(direction.phi), math.sin(direction.phi)),
        )

    @classmethod
    def from_matrix(cls, m) -> "SpinHalfState":
        m = np.asarray(m, dtype=complex)
        coh = 0.5 * (m[0, 1] + np.conj(m[1, 0]))
        return cls(rho11=float(m[1, 1].real), rho00=float(m[0, 0].real), rho01=complex(coh))

    # -- views --------------------------------------------------------------

    @property
    def bloch(self) -> BlochVector:
        return BlochVector(
            rx=2.0 * self.rho01.real,
            ry=2.0 * self.rho01.imag,
            rz=self.rho11 - self.rho00,
        )

    def as_matrix(self) -> np.ndarray:
        """2x2 density matrix in the (|m=-1/2>, |m=+1/2>) ordered basis."""
        return np.array(
            [[self.rho00, self.rho01], [np.conj(self.rho01), self.rho11]],
            dtype=complex,
        )

    def eigenvalues(self) -> tuple[float, float]:
        """Eigenvalue pair (x, 1-x) with x the larger one, x = (1 + |r|)/2."""
        x = self.mixing_parameter()
        return x, 1.0 - x

    def mixing_parameter(self) -> float:
        """Larger eigenvalue of the density matrix, in [1/2, 1]."""
        r = min(1.0, self.bloch.norm)
        return 0.5 * (1.0 + r)


@dataclass(frozen=True)
class PhysicalParams:
    """Microscopic scales: gyromagnetic ratio g, moment mu, mass, inverse
    temperature beta, and the field-inhomogeneity length L.  hbar = 1."""

    g: float
    mu: float
    mass: float
    beta: float
    L: float
    hbar: float = 1.0

    def __post_init__(self) -> None:
        for name in ("g", "mu", "mass", "beta", "L", "hbar"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")


# ---------------------------------------------------------------------------
# coherent states and Husimi values
# ---------------------------------------------------------------------------


def coherent_overlap(a: SphereDirection, b: SphereDirection, s: float = 0.5) -> complex:
    """Overlap <a|b> of two spin-s coherent states.

    s must be a positive half-integer.  For s = 1/2 the squared modulus is
    cos^2(Theta/2) with Theta the angle between the two directions;
    generally it is cos^{4s}(Theta/2).
    """
    two_s = 2.0 * s
    if two_s <= 0 or abs(two_s - round(two_s)) > 1e-12:
        raise ValueError(f"s must be a positive half-integer, got {s}")
    n = int(round(two_s))

    ca, sa = math.cos(a.theta / 2.0), math.sin(a.theta / 2.0)
    cb, sb = math.cos(b.theta / 2.0), math.sin(b.theta / 2.0)
    total = 0.0j
    for k in range(n + 1):  # k = s + m runs over 0 .. 2s
        m = k - n / 2.0
        amp_a = math.sqrt(math.comb(n, k)) * ca**k * sa ** (n - k)
        amp_b = math.sqrt(math.comb(n, k)) * cb**k * sb ** (n - k)
        phase = complex(math.cos(m * (a.phi - b.phi)), math.sin(m * (a.phi - b.phi)))
        total += amp_a * amp_b * phase
    return total


def husimi(state: SpinHalfState, direction: SphereDirection) -> float:
    """Husimi value <n|rho|n> = (1 + r . n)/2 at the given direction."""
    r = state.bloch
    n = direction.unit_vector
    value = 0.5 * (1.0 + r.rx * n[0] + r.ry * n[1] + r.rz * n[2])
    return min(1.0, max(0.0, value))


def husimi_values(state: SpinHalfState, theta, phi) -> np.ndarray:
    """Vectorized Husimi values on arrays of angles (used by quadratures)."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    r = state.bloch
    st = np.sin(theta)
    return 0.5 * (
        1.0 + r.rz * np.cos(theta) + st * (r.rx * np.cos(phi) + r.ry * np.sin(phi))
    )


# ---------------------------------------------------------------------------
# thermal states
# ---------------------------------------------------------------------------


def thermal_alpha(beta: float, g: float, B: float) -> float:
    """Bose-type occupation 1/(e^{beta g B} - 1) of the thermal spin state.

    Returns 0.0 in the underflow limit beta*g*B -> infinity.
    """
    x = beta * g * B
    if x <= 0.0:
        raise ValueError(f"beta*g*B must be positive, got {x}")
    if x > 700.0:  # e^x overflows; alpha underflows to 0
        return 0.0
    return 1.0 / math.expm1(x)


def thermal_state(alpha: float) -> SpinHalfState:
    """Diagonal thermal state with excited population alpha/(1 + 2 alpha).

    Its Husimi value at polar angle theta is (alpha + sin^2(theta/2))/(1+2 alpha);
    it is the stationary state of the dissipative evolution in
    :mod:`spinecho.lindblad` for the same alpha.
    """
    if alpha < 0.0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    if math.isinf(alpha):
        return SpinHalfState.maximally_mixed()
    p_excited = alpha / (1.0 + 2.0 * alpha)
    return SpinHalfState(rho11=p_excited, rho00=1.0 - p_excited, rho01=0.0)


# ---------------------------------------------------------------------------
# pulses
# ---------------------------------------------------------------------------


def apply_pulse(state: SpinHalfState, axis, angle: float) -> SpinHalfState:
    """Instantaneous SU(2) pulse: rho -> U rho U(dagger).

    Acts on the Bloch vector as the right-handed rotation by `angle` about
    the unit 3-vector `axis` (Rodrigues form), which is exactly the adjoint
    action of U = exp(-i angle axis.S); trace and eigenvalues are preserved.
    """
    k = np.asarray(axis, dtype=float)
    if abs(float(np.linalg.norm(k)) - 1.0) > _AXIS_TOL:
        raise ValueError(f"pulse axis must be a unit vector, |axis| = {np.linalg.norm(k)}")
    b = state.bloch
    r = np.array([b.rx, b.ry, b.rz])
    c, s = math.cos(angle), math.sin(angle)
    rotated = r * c + np.cross(k, r) * s + k * np.dot(k, r) * (1.0 - c)
    return SpinHalfState.from_bloch(rotated[0], rotated[1], rotated[2])


def conjugate_coherence(state: SpinHalfState) -> SpinHalfState:
    """Idealized refocusing (pi) pulse: reflect the transverse plane.

    Maps rho01 -> conj(rho01) (ry -> -ry) and leaves populations untouched.
    This is complex conjugation of rho in the energy basis, an antiunitary
    symmetry: it preserves the spectrum, hence every entropy functional, and
    is the quantum counterpart of the classical phase inversion phi -> -phi.
    """
    return SpinHalfState(state.rho11, state.rho00, state.rho01.conjugate())
