"""Two-site reduced density matrices from correlator sets.

Basis convention, fixed once and shared by every oracle in this package:
product basis |uu>, |ud>, |du>, |dd> with sigma_z |u> = +|u>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import CorrelatorSet

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

# Eigenvalues below -PSD_TOL signal an upstream bug, not quadrature dust.
PSD_TOL = 1e-9


class UnphysicalStateError(ValueError):
    """Correlators produced a matrix with a genuinely negative eigenvalue."""

    def __init__(self, min_eigenvalue: float, corr: CorrelatorSet | None):
        super().__init__(
            f"unphysical correlators: smallest eigenvalue {min_eigenvalue:.3e} "
            f"below -{PSD_TOL:.0e}")
        self.min_eigenvalue = min_eigenvalue
        self.corr = corr


@dataclass(frozen=True)
class TwoSiteState:
    """A certified 4x4 two-qubit density matrix.

    ``eig_floor`` records the smallest eigenvalue before the PSD
    projection (negative only by quadrature dust, within PSD_TOL).
    """

    rho: np.ndarray
    provenance: CorrelatorSet | None
    eig_floor: float


def two_site_state(corr: CorrelatorSet) -> TwoSiteState:
    """Assemble rho from {m_z, t_xx, t_yy, t_zz, t_xy} (Pauli normalization).

    rho = 1/4 [ I + m_z (Z1 + Z2) + t_xx XX + t_yy YY + t_zz ZZ
                + t_xy (XY + YX) ],
    with m_x = m_y = 0 and t_xz = t_yz = 0, t_yx = t_xy by the symmetries
    of the chain.  Eigenvalues in [-PSD_TOL, 0) are clipped to zero and
    the trace renormalized; anything lower raises UnphysicalStateError.
    """
    kron = np.kron
    rho = 0.25 * (
        kron(IDENTITY_2, IDENTITY_2)
        + corr.mz * (kron(SIGMA_Z, IDENTITY_2) + kron(IDENTITY_2, SIGMA_Z))
        + corr.txx * kron(SIGMA_X, SIGMA_X)
        + corr.tyy * kron(SIGMA_Y, SIGMA_Y)
        + corr.tzz * kron(SIGMA_Z, SIGMA_Z)
        + corr.txy * (kron(SIGMA_X, SIGMA_Y) + kron(SIGMA_Y, SIGMA_X))
    )
    return certify(rho, provenance=corr)


def certify(rho: np.ndarray, provenance: CorrelatorSet | None = None) -> TwoSiteState:
    """Validate Hermiticity and positivity; project away eigenvalue dust."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
        raise ValueError("two-site matrix is not Hermitian")
    eig_floor = float(np.linalg.eigvalsh(rho)[0])
    if eig_floor < -PSD_TOL:
        raise UnphysicalStateError(eig_floor, provenance)
    if eig_floor < 0.0:
        w, v = np.linalg.eigh(rho)
        w = np.clip(w, 0.0, None)
        rho = (v * w) @ v.conj().T
        rho /= np.trace(rho).real
    return TwoSiteState(rho=rho, provenance=provenance, eig_floor=eig_floor)


def local_state(state: TwoSiteState | np.ndarray, site: str = "A") -> np.ndarray:
    """Partial trace onto one site; both marginals equal (I + m_z Z)/2 here."""
    rho = state.rho if isinstance(state, TwoSiteState) else np.asarray(state)
    r = rho.reshape(2, 2, 2, 2)
    if site == "A":
        return np.einsum("ikjk->ij", r)
    if site == "B":
        return np.einsum("kikj->ij", r)
    raise ValueError(f"site must be 'A' or 'B', got {site!r}")


def extract_correlators(state: TwoSiteState | np.ndarray) -> dict:
    """Read {m_z, t_xx, t_yy, t_zz, t_xy} back off a two-site matrix."""
    rho = state.rho if isinstance(state, TwoSiteState) else np.asarray(state)
    kron = np.kron
    ev = lambda op: float(np.trace(rho @ op).real)
    return {
        "mz": ev(kron(SIGMA_Z, IDENTITY_2)),
        "txx": ev(kron(SIGMA_X, SIGMA_X)),
        "tyy": ev(kron(SIGMA_Y, SIGMA_Y)),
        "tzz": ev(kron(SIGMA_Z, SIGMA_Z)),
        "txy": ev(kron(SIGMA_X, SIGMA_Y)),
    }
