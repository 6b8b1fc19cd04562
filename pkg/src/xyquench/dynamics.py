"""Time-evolved magnetization and nearest-neighbor correlators after the quench.

Each momentum block carries a Bloch vector r = (rx, ry, rz) for its
{|0>, |p,-p>} sector.  The thermal initial state pins

    r(0) = tanh(beta Lambda1 / 2) * (0, -g1/L1, e1/L1),

and evolution under H(J2) precesses it about n = (0, g2/L2, -e2/L2) by
the angle 2 Lambda2 t.  All observables are angle-weighted averages of
r(t) over the Brillouin zone:

    m_z  = <-rz>,
    t_xx = <cos(phi) (-rz)> + <sin(phi) ry>,
    t_yy = <cos(phi) (-rz)> - <sin(phi) ry>,
    t_xy = <sin(phi) rx>,
    t_zz = m_z^2 - t_xx t_yy + t_xy^2   (Wick),

in Pauli normalization throughout (channel signs frozen against the
exact-diagonalization oracle).  The steady state drops the precessing
components (Riemann-Lebesgue), so t_xy = 0 there exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .model import ModelParams, _guarded_ratio, pairing_amplitude, single_particle_energy
from .quadrature import IntegrationGrid, integrate_modes, oscillation_panels, adaptive_gauss_legendre

STEADY = math.inf


@dataclass(frozen=True)
class CorrelatorSet:
    """Magnetization and the non-vanishing Pauli two-site correlators."""

    mz: float
    txx: float
    tyy: float
    tzz: float
    txy: float
    params: ModelParams
    t: float  # math.inf marks the steady state
    mode: str  # "finite-N" | "thermodynamic" | "steady-state"
    n_modes: int = 0

    def as_dict(self) -> dict:
        return {"mz": self.mz, "txx": self.txx, "tyy": self.tyy,
                "tzz": self.tzz, "txy": self.txy}


def _mode_vectors(params: ModelParams, phi):
    """Initial Bloch vectors and rotation axes for an array of angles."""
    e1 = single_particle_energy(params.j1, params.h, phi)
    g1 = pairing_amplitude(params.j1, params.gamma, phi)
    lam1 = np.hypot(e1, g1)
    e2 = single_particle_energy(params.j2, params.h, phi)
    g2 = pairing_amplitude(params.j2, params.gamma, phi)
    lam2 = np.hypot(e2, g2)

    if params.zero_temperature:
        theta = np.where(lam1 > 0, 1.0, 0.0)
    else:
        theta = np.tanh(0.5 * params.beta * lam1)
    ry0 = -theta * _guarded_ratio(g1, lam1)
    rz0 = theta * _guarded_ratio(e1, lam1)
    ny = _guarded_ratio(g2, lam2)
    nz = -_guarded_ratio(e2, lam2)
    return ry0, rz0, ny, nz, lam2


def mode_bloch_vector(params: ModelParams, t: float, phi):
    """r(t) = (rx, ry, rz) per mode; ``phi`` may be a scalar or an array.

    Where the post-quench gap closes (n undefined) the block Hamiltonian
    is proportional to the identity and the vector simply does not move.
    """
    phi = np.asarray(phi, dtype=float)
    ry0, rz0, ny, nz, lam2 = _mode_vectors(params, phi)
    axis_defined = np.hypot(ny, nz) > 0.5  # unit vector or exactly zero
    rn = ry0 * ny + rz0 * nz
    c = np.cos(2.0 * lam2 * t)
    s = np.sin(2.0 * lam2 * t)
    rx = (ny * rz0 - nz * ry0) * s
    ry = rn * ny + (ry0 - rn * ny) * c
    rz = rn * nz + (rz0 - rn * nz) * c
    return (np.where(axis_defined, rx, 0.0),
            np.where(axis_defined, ry, ry0),
            np.where(axis_defined, rz, rz0))


def mode_bloch_steady(params: ModelParams, phi):
    """Dephased (t -> inf) Bloch vector: only the component along n survives."""
    phi = np.asarray(phi, dtype=float)
    ry0, rz0, ny, nz, _ = _mode_vectors(params, phi)
    axis_defined = np.hypot(ny, nz) > 0.5
    rn = ry0 * ny + rz0 * nz
    return (np.where(axis_defined, rn * ny, ry0),
            np.where(axis_defined, rn * nz, rz0))


def mode_occupation(params: ModelParams, phi, t: float):
    """Per-mode <a+_p a_p + a+_{-p} a_{-p} - 1> = -rz(t)."""
    _, _, rz = mode_bloch_vector(params, t, phi)
    return -rz


def mode_anomalous(params: ModelParams, phi, t: float):
    """Per-mode pair expectation <a+_p a+_{-p} + a_p a_{-p}> = -i ry(t)."""
    _, ry, _ = mode_bloch_vector(params, t, phi)
    return -1j * ry


def _grid_for(params: ModelParams, t: float, grid: IntegrationGrid):
    """Average f over the zone, seeding panels from the oscillation rate."""
    lam2_max = abs(params.j2) + params.h

    def run(f):
        if grid.kind == "modes":
            return integrate_modes(f, grid)
        panels = oscillation_panels(t, lam2_max)
        return adaptive_gauss_legendre(f, tol=grid.tol, initial_panels=panels) / np.pi

    return run


def correlators(params: ModelParams, t: float, grid: IntegrationGrid) -> CorrelatorSet:
    """All correlators at time t in a single pass over momentum space."""

    def integrand(phi):
        rx, ry, rz = mode_bloch_vector(params, t, phi)
        return np.stack([-rz, -np.cos(phi) * rz, np.sin(phi) * ry, np.sin(phi) * rx])

    mz, t1, t2, txy = _grid_for(params, t, grid)(integrand)
    txx, tyy = t1 + t2, t1 - t2
    return CorrelatorSet(
        mz=float(mz), txx=float(txx), tyy=float(tyy),
        tzz=zz_correlator(float(mz), float(txx), float(tyy), float(txy)),
        txy=float(txy), params=params, t=t,
        mode="finite-N" if grid.kind == "modes" else "thermodynamic",
        n_modes=grid.n_modes,
    )


def steady_state_correlators(params: ModelParams, grid: IntegrationGrid) -> CorrelatorSet:
    """The t -> inf limit: oscillatory integrand terms dropped, t_xy = 0."""

    def integrand(phi):
        ry, rz = mode_bloch_steady(params, phi)
        return np.stack([-rz, -np.cos(phi) * rz, np.sin(phi) * ry])

    mz, t1, t2 = _grid_for(params, 0.0, grid)(integrand)
    txx, tyy = t1 + t2, t1 - t2
    return CorrelatorSet(
        mz=float(mz), txx=float(txx), tyy=float(tyy),
        tzz=zz_correlator(float(mz), float(txx), float(tyy), 0.0),
        txy=0.0, params=params, t=STEADY, mode="steady-state",
        n_modes=grid.n_modes,
    )


def magnetization(params: ModelParams, t: float, grid: IntegrationGrid) -> float:
    """<sigma^z>(t)."""
    run = _grid_for(params, t, grid)
    return float(run(lambda phi: -mode_bloch_vector(params, t, phi)[2]))


def transverse_correlator(params: ModelParams, t: float, R: int,
                          grid: IntegrationGrid) -> float:
    """G(R): the xx (R = -1) or yy (R = +1) nearest-neighbor correlator."""
    if R not in (-1, 1):
        raise ValueError(f"R must be -1 or +1, got {R}")
    run = _grid_for(params, t, grid)

    def integrand(phi):
        _, ry, rz = mode_bloch_vector(params, t, phi)
        return -np.cos(phi) * rz - R * np.sin(phi) * ry

    return float(run(integrand))


def xy_correlator(params: ModelParams, t: float, grid: IntegrationGrid) -> float:
    """The xy cross correlator; identically zero at t = 0 and for J1 = J2."""
    if t == 0.0 or params.j1 == params.j2:
        return 0.0
    run = _grid_for(params, t, grid)
    return float(run(lambda phi: np.sin(phi) * mode_bloch_vector(params, t, phi)[0]))


def zz_correlator(mz: float, g_minus: float, g_plus: float, txy: float) -> float:
    """Wick combination t_zz = m_z^2 - G(-1) G(+1) + t_xy^2."""
    return mz * mz - g_minus * g_plus + txy * txy


@dataclass(frozen=True)
class SweepPoint:
    """One grid point of a sweep: coordinates plus result or failure."""

    coords: dict
    result: CorrelatorSet | None
    error: str | None = None


_SWEEPABLE = ("j1", "j2", "gamma", "beta", "t")


def correlator_sweep(base: ModelParams, axes: Sequence[tuple[str, Sequence[float]]],
                     grid: IntegrationGrid, t: float = 0.0) -> list[SweepPoint]:
    """Correlators over a rectangular grid, row-major over the declared axes.

    Axis names are drawn from {"j1", "j2", "gamma", "beta", "t"}; ``t``
    applies where no time axis is declared, with ``t = math.inf``
    selecting the steady-state branch.  Point-level failures are recorded
    on their rows; the sweep itself never aborts.
    """
    for name, _ in axes:
        if name not in _SWEEPABLE:
            raise ValueError(f"cannot sweep over {name!r}")
    names = [name for name, _ in axes]
    points = []
    for values in itertools.product(*(vals for _, vals in axes)):
        coords = dict(zip(names, (float(v) for v in values)))
        try:
            overrides = {k: v for k, v in coords.items() if k != "t"}
            p = replace(base, **overrides)
            tt = coords.get("t", t)
            if math.isinf(tt):
                result = steady_state_correlators(p, grid)
            else:
                result = correlators(p, tt, grid)
            points.append(SweepPoint(coords=coords, result=result))
        except Exception as exc:  # recorded, not raised
            points.append(SweepPoint(coords=coords, result=None, error=str(exc)))
    return points
