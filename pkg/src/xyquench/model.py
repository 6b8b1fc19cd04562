"""Model parameterization and per-mode coefficients of the quenched XY chain.

The chain

    H(J) = sum_i J/4 [ (1+gamma) sx_i sx_{i+1} + (1-gamma) sy_i sy_{i+1} ]
           - h/2 sum_i sz_i

with periodic boundaries splits, after Jordan-Wigner + Fourier, into
independent four-dimensional momentum blocks labeled by an angle
phi in (0, pi).  In the block basis {|0>, |p,-p>, |p>, |-p>} the
Hamiltonian is the explicit 4x4 matrix built by :func:`mode_hamiltonian`.

Everything here is a pure function of its value arguments.  Zero
temperature is represented by ``beta = math.inf`` and handled by its own
analytic branch (Boltzmann block -> ground-state projector), never by a
large float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

INFINITE_BETA = math.inf

# Below this the quasiparticle gap is treated as closed and the ratios
# e/Lambda, g/Lambda are replaced by their (vanishing) limits.
_GAP_FLOOR = 1e-14


@dataclass(frozen=True)
class ModelParams:
    """Couplings of one quench experiment: J1 -> J2 at t = 0.

    Couplings are dimensionless (scaled by the field); ``h`` is kept
    explicit so figure captions map one-to-one onto configurations.
    ``beta = math.inf`` selects the zero-temperature branch.
    """

    j1: float
    j2: float
    gamma: float
    h: float = 1.0
    beta: float = INFINITE_BETA

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")
        if not self.h > 0.0:
            raise ValueError(f"h must be positive, got {self.h}")
        if not self.beta > 0.0:
            raise ValueError(f"beta must be positive or inf, got {self.beta}")

    @property
    def zero_temperature(self) -> bool:
        return math.isinf(self.beta)


@dataclass(frozen=True)
class ModeCoeffs:
    """Per-mode quantities: energies, thermal weights, evolution amplitudes.

    The thermal block of the initial state is reconstructed as

        rho_p(0) = diag([[k11, k12], [conj(k12), k22]], k33, k44) / E0

    with the normalization fixed so that k33 = k44 = sech(beta*Lambda1)
    (hence k11 = k22 = k33 = k44 = 1 and E0 = 4 at beta = 0, and
    k33 = k44 = 0 at beta = inf).  ``v11``, ``v12`` are the entries of the
    2x2 evolution block, satisfying |v11|^2 + v12^2 = 1.
    """

    phi: float
    e1: float
    e2: float
    g1: float
    g2: float
    lambda1: float
    lambda2: float
    k11: float
    k22: float
    k33: float
    k44: float
    k12: complex
    E0: float
    v11: complex
    v12: float

    def thermal_block(self) -> np.ndarray:
        """The normalized 4x4 initial density matrix of this mode."""
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = self.k11
        rho[0, 1] = self.k12
        rho[1, 0] = np.conj(self.k12)
        rho[1, 1] = self.k22
        rho[2, 2] = self.k33
        rho[3, 3] = self.k44
        return rho / self.E0

    def evolution_matrix(self, t: float, j2: float, h: float) -> np.ndarray:
        """The full 4x4 evolution matrix U_p(t), global phase included."""
        phase = np.exp(-1j * t * j2 * np.cos(self.phi))
        u = np.eye(4, dtype=complex)
        u[0, 0] = self.v11
        u[0, 1] = self.v12
        u[1, 0] = -np.conj(self.v12)
        u[1, 1] = np.conj(self.v11)
        return phase * u


def single_particle_energy(j: float, h: float, phi):
    """e(phi) = J cos(phi) - h, the number-conserving part of a mode."""
    return j * np.cos(phi) - h


def pairing_amplitude(j: float, gamma: float, phi):
    """g(phi) = J gamma sin(phi), the pair-creation part of a mode."""
    return j * gamma * np.sin(phi)


def dispersion(j: float, gamma: float, h: float, phi):
    """Quasiparticle energy Lambda(J) = sqrt((J cos phi - h)^2 + J^2 g^2 sin^2 phi).

    Accepts scalars or arrays in ``phi``.  Vanishes exactly when
    J cos(phi) = h and J gamma sin(phi) = 0 (the critical gap closing).
    """
    return np.hypot(single_particle_energy(j, h, phi),
                    pairing_amplitude(j, gamma, phi))


def mode_hamiltonian(j: float, gamma: float, h: float, phi: float) -> np.ndarray:
    """The 4x4 momentum-block Hamiltonian in the {|0>, |p,-p>, |p>, |-p>} basis."""
    delta = -2.0 * gamma * j * np.sin(phi)
    c = j * np.cos(phi)
    return np.array(
        [
            [h, 0.5j * delta, 0, 0],
            [-0.5j * delta, 2 * c - h, 0, 0],
            [0, 0, c, 0],
            [0, 0, 0, c],
        ],
        dtype=complex,
    )


def _sech(x):
    # overflow-safe 1/cosh for large arguments
    ax = np.abs(x)
    return 2.0 * np.exp(-ax) / (1.0 + np.exp(-2.0 * ax))


def _guarded_ratio(num, lam):
    """num/lam with the 0/0 gap-closing limit resolved to 0."""
    lam_safe = np.where(lam > _GAP_FLOOR, lam, 1.0)
    return np.where(lam > _GAP_FLOOR, num / lam_safe, 0.0)


def thermal_mode_coeffs(params: ModelParams, phi: float) -> ModeCoeffs:
    """Thermal weights of rho_p(0) = exp(-beta H_p(J1)) / Tr exp(-beta H_p(J1)).

    At beta = inf the Boltzmann block degenerates to the ground-state
    projector of the 2x2 block (k33 = k44 = 0); a closed gap there yields
    the equal-weight mixture over the degenerate ground space.
    """
    if not 0.0 < phi < np.pi + 1e-12:
        raise ValueError(f"phi must lie in (0, pi], got {phi}")
    e1 = single_particle_energy(params.j1, params.h, phi)
    g1 = pairing_amplitude(params.j1, params.gamma, phi)
    lam1 = float(np.hypot(e1, g1))
    e2 = single_particle_energy(params.j2, params.h, phi)
    g2 = pairing_amplitude(params.j2, params.gamma, phi)
    lam2 = float(np.hypot(e2, g2))

    ue = float(_guarded_ratio(e1, lam1))
    ug = float(_guarded_ratio(g1, lam1))
    if params.zero_temperature:
        tanh_bl = 1.0 if lam1 > _GAP_FLOOR else 0.0
        sech_bl = 0.0 if lam1 > _GAP_FLOOR else 1.0
    else:
        tanh_bl = float(np.tanh(params.beta * lam1))
        sech_bl = float(_sech(params.beta * lam1))

    k11 = 1.0 + ue * tanh_bl
    k22 = 1.0 - ue * tanh_bl
    k33 = k44 = sech_bl
    k12 = 1j * ug * tanh_bl
    return ModeCoeffs(
        phi=phi, e1=float(e1), e2=float(e2), g1=float(g1), g2=float(g2),
        lambda1=lam1, lambda2=lam2,
        k11=k11, k22=k22, k33=k33, k44=k44, k12=k12,
        E0=k11 + k22 + k33 + k44,
        v11=1.0 + 0.0j, v12=0.0,
    )


def evolution_coeffs(params: ModelParams, phi: float, t: float) -> ModeCoeffs:
    """Mode coefficients including the evolution amplitudes at time t.

    v11 = cos(L2 t) + i (e2/L2) sin(L2 t), v12 = -(g2/L2) sin(L2 t); the
    isolated point L2 = 0 is reached through the sinc limit, never by
    division.
    """
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    coeffs = thermal_mode_coeffs(params, phi)
    # t * sinc(L2 t) == sin(L2 t)/L2, exact and finite at L2 = 0
    s = t * np.sinc(coeffs.lambda2 * t / np.pi)
    v11 = complex(np.cos(coeffs.lambda2 * t), coeffs.e2 * s)
    v12 = float(-coeffs.g2 * s)
    return replace(coeffs, v11=v11, v12=v12)
