"""Bipartite correlation measures for two-qubit states.

Concurrence (Wootters), von Neumann entropies, mutual information, and
quantum discord with the conditional entropy minimized over rank-1
projective measurements on qubit B.  All logarithms are base 2, so
entanglement is reported in ebits and the entropic measures in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.special import xlogy

from .dynamics import steady_state_correlators, correlators
from .model import ModelParams
from .quadrature import IntegrationGrid
from .state import (IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z, TwoSiteState,
                    local_state, two_site_state)

_PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)
_YY = np.kron(SIGMA_Y, SIGMA_Y)
_LN2 = math.log(2.0)

# Coarse measurement-sphere grid: theta in [0, pi/2] x phi in [0, 2pi],
# antipodal directions being equivalent for projective measurements.
_COARSE_GRID = (61, 121)


@dataclass(frozen=True)
class QCorrResult:
    """Quantum correlations of one state, plus the discord optimizer trail."""

    concurrence: float
    discord: float
    mutual_info: float
    classical_corr: float
    argmin_angles: tuple[float, float]
    opt_certificate: float  # coarse-grid minimum minus refined minimum


def _rho_of(state) -> np.ndarray:
    return state.rho if isinstance(state, TwoSiteState) else np.asarray(state, dtype=complex)


def von_neumann_entropy(rho) -> float:
    """S(rho) = -Tr rho log2 rho, with 0 log 0 = 0."""
    w = np.linalg.eigvalsh(_rho_of(rho))
    w = np.clip(w.real, 0.0, 1.0)
    return float(-np.sum(xlogy(w, w)) / _LN2)


def concurrence(state) -> float:
    """Wootters concurrence C = max(0, l1 - l2 - l3 - l4).

    The l_i are the square roots of the eigenvalues of
    rho (YY) rho* (YY), computed from the Hermitian-symmetrized product
    sqrt(rho) rho~ sqrt(rho) so no complex dust enters.
    """
    rho = _rho_of(state)
    w, v = np.linalg.eigh(rho)
    sqrt_rho = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    rho_tilde = _YY @ rho.conj() @ _YY
    m = sqrt_rho @ rho_tilde @ sqrt_rho
    skew = np.max(np.abs(m - m.conj().T))
    if skew > 1e-10:
        raise ValueError(f"spin-flip product deviates from Hermitian by {skew:.3e}")
    lam = np.sqrt(np.clip(np.linalg.eigvalsh(0.5 * (m + m.conj().T)), 0.0, None))
    lam = np.sort(lam)[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def mutual_information(state) -> float:
    """I = S(A) + S(B) - S(AB)."""
    rho = _rho_of(state)
    return (von_neumann_entropy(local_state(rho, "A"))
            + von_neumann_entropy(local_state(rho, "B"))
            - von_neumann_entropy(rho))


def bloch_decomposition(state):
    """Local Bloch vectors a, b and correlation matrix T of a two-qubit state."""
    rho = _rho_of(state)
    a = np.array([np.trace(rho @ np.kron(s, IDENTITY_2)).real for s in _PAULI])
    b = np.array([np.trace(rho @ np.kron(IDENTITY_2, s)).real for s in _PAULI])
    t = np.array([[np.trace(rho @ np.kron(si, sj)).real for sj in _PAULI]
                  for si in _PAULI])
    return a, b, t


def _binary_entropy(x):
    x = np.clip(x, 0.0, 1.0)
    return -(xlogy(x, x) + xlogy(1.0 - x, 1.0 - x)) / _LN2


def conditional_entropy(state, directions) -> np.ndarray:
    """sum_i p_i S(rho_{A|i}) for measurement axes n on B, batched.

    ``directions`` has shape (m, 3) of unit vectors; returns shape (m,).
    Uses the closed form for the post-measurement qubit: conditioning on
    outcome +/- leaves A in a state with Bloch vector
    (a +/- T n) / (1 +/- b.n).
    """
    a, b, t = bloch_decomposition(state)
    n = np.atleast_2d(np.asarray(directions, dtype=float))
    bn = n @ b
    tn = n @ t.T  # rows (T n)
    out = np.zeros(len(n))
    for sign in (+1.0, -1.0):
        p = 0.5 * (1.0 + sign * bn)
        v = a[None, :] + sign * tn
        norm = np.linalg.norm(v, axis=1)
        ok = p > 1e-15
        lam = np.zeros_like(p)
        lam[ok] = 0.5 * (1.0 + np.minimum(norm[ok] / (2.0 * p[ok]), 1.0))
        out += np.where(ok, p * _binary_entropy(lam), 0.0)
    return out


def _direction(theta, phi):
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return np.stack([np.sin(theta) * np.cos(phi),
                     np.sin(theta) * np.sin(phi),
                     np.cos(theta)], axis=-1)


def minimize_conditional_entropy(state, coarse_grid=_COARSE_GRID,
                                 refine_tol: float = 1e-9, n_starts: int = 5):
    """Coarse measurement-sphere scan followed by Nelder-Mead refinement.

    Returns (min value, (theta, phi), certificate) where the certificate
    is the coarse-grid minimum minus the refined minimum (>= 0; infinite
    when every refinement fails to converge).
    """
    n_theta, n_phi = coarse_grid
    thetas = np.linspace(0.0, 0.5 * np.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * np.pi, n_phi)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    angles = np.column_stack([tt.ravel(), pp.ravel()])
    values = conditional_entropy(state, _direction(angles[:, 0], angles[:, 1]))

    order = np.argsort(values, kind="stable")
    grid_min = float(values[order[0]])

    objective = lambda x: float(conditional_entropy(state, _direction(x[0], x[1])[None, :])[0])
    best_val, best_angles, converged = grid_min, tuple(angles[order[0]]), False
    for idx in order[:n_starts]:
        res = minimize(objective, angles[idx], method="Nelder-Mead",
                       options={"fatol": refine_tol, "xatol": 1e-7, "maxiter": 400})
        if res.fun < best_val:
            best_val, best_angles = float(res.fun), tuple(res.x)
        converged = converged or bool(res.success)

    if not converged:
        return grid_min, _canonical_angles(*tuple(angles[order[0]])), math.inf
    best_val = min(best_val, grid_min)
    return best_val, _canonical_angles(*best_angles), grid_min - best_val


def _canonical_angles(theta, phi):
    """Map a direction to theta in [0, pi/2], phi in [0, 2 pi)."""
    n = _direction(theta, phi)
    if n[2] < 0:
        n = -n
    return (float(np.arccos(np.clip(n[2], -1.0, 1.0))),
            float(np.arctan2(n[1], n[0]) % (2.0 * np.pi)))


def quantum_discord(state, coarse_grid=_COARSE_GRID,
                    refine_tol: float = 1e-9) -> QCorrResult:
    """D = S(B) - S(AB) + min_{n} sum_i p_i S(rho_{A|i}), plus companions."""
    rho = _rho_of(state)
    s_a = von_neumann_entropy(local_state(rho, "A"))
    s_b = von_neumann_entropy(local_state(rho, "B"))
    s_ab = von_neumann_entropy(rho)
    s_min, angles, certificate = minimize_conditional_entropy(
        rho, coarse_grid=coarse_grid, refine_tol=refine_tol)
    info = s_a + s_b - s_ab
    classical = max(0.0, s_a - s_min)
    discord = max(0.0, info - classical)
    return QCorrResult(
        concurrence=concurrence(rho),
        discord=discord,
        mutual_info=info,
        classical_corr=classical,
        argmin_angles=angles,
        opt_certificate=certificate,
    )


@dataclass(frozen=True)
class DeltaQCorr:
    """Steady-state-minus-initial correlation changes for one quench."""

    delta_concurrence: float
    delta_discord: float
    initial: QCorrResult
    final: QCorrResult


def delta_qcorr(params: ModelParams, grid: IntegrationGrid) -> DeltaQCorr:
    """dC = C(t -> inf) - C(t = 0) and the analogous dD for one quench."""
    initial = quantum_discord(two_site_state(correlators(params, 0.0, grid)))
    final = quantum_discord(two_site_state(steady_state_correlators(params, grid)))
    return DeltaQCorr(
        delta_concurrence=final.concurrence - initial.concurrence,
        delta_discord=final.discord - initial.discord,
        initial=initial,
        final=final,
    )
