"""Dense Hamiltonian assembly over the product sine basis.

Terms: four-band kinetic part (P, Q, R, S structure), static electric
potential -e E0 y, Zeeman coupling 2 kappa mu_B B.J, paramagnetic coupling
(terms linear in the vector potential A = (B x r)/2, gauge origin at the
box center), and biaxial Bir-Pikus strain.

Conventions fixed here and inherited everywhere:
- spin order (+3/2, +1/2, -1/2, -3/2), flat index j_z fastest;
- positive (electron-like) hole dispersion, energies in meV;
- DOT_110 has x || [110], y || [-110], z || [001]; DOT_100 has x || [100],
  y || [010]; the two differ only by exchanging gamma2 and gamma3 inside
  the R term;
- b_hat = (sin t cos p, sin t sin p, cos t) for polar angle t, azimuth p.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import cos, pi, sin, sqrt

import numpy as np

from .basis import (BasisCutoff, derivative_matrix, ksquared_matrix,
                    posderiv_matrix, position_matrix)
from .constants import CONST
from .materials import MaterialParams

MAX_DIMENSION = 16384


class AssemblyError(ValueError):
    """Invalid assembly request (dimension overflow, missing parameters)."""


class Orientation(enum.Enum):
    DOT_110 = "110"
    DOT_100 = "100"


@dataclass(frozen=True)
class BoxGeometry:
    L_x: float  # nm
    L_y: float  # nm
    L_z: float  # nm

    def __post_init__(self):
        for axis, L in (("L_x", self.L_x), ("L_y", self.L_y), ("L_z", self.L_z)):
            if not L > 0:
                raise ValueError(f"{axis} must be positive, got {L}")


@dataclass(frozen=True)
class FieldConfig:
    B: float = 0.0      # T
    theta: float = 0.0  # rad, polar angle of b_hat
    phi: float = 0.0    # rad, azimuth of b_hat
    E0: float = 0.0     # mV/nm, static field along +y
    E_ac: float = 0.0   # mV/nm, drive amplitude along +y

    def __post_init__(self):
        if self.B < 0:
            raise ValueError(f"B must be >= 0, got {self.B}")

    @property
    def bhat(self) -> np.ndarray:
        return bhat_from_angles(self.theta, self.phi)


@dataclass(frozen=True)
class StrainConfig:
    eps_parallel: float  # dimensionless, eps_xx = eps_yy

    def eps_perp(self, material: MaterialParams) -> float:
        material.require_strain()
        return -material.nu * self.eps_parallel


@dataclass(frozen=True)
class HamiltonianMatrix:
    matrix: np.ndarray
    cutoff: BasisCutoff | None
    terms: tuple[str, ...]

    def __post_init__(self):
        m = self.matrix
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"matrix must be square, got shape {m.shape}")
        if self.cutoff is not None and m.shape[0] != self.cutoff.dimension:
            raise ValueError(
                f"matrix dimension {m.shape[0]} != cutoff dimension {self.cutoff.dimension}")

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def hermiticity_residual(self) -> float:
        """max |H - H^dagger| / max |H|, 0 for an all-zero matrix."""
        scale = np.max(np.abs(self.matrix))
        if scale == 0.0:
            return 0.0
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)) / scale)

    def __add__(self, other: "HamiltonianMatrix") -> "HamiltonianMatrix":
        if self.matrix.shape != other.matrix.shape:
            raise AssemblyError("cannot add Hamiltonians of different dimension")
        if self.cutoff is not None and other.cutoff is not None \
                and self.cutoff != other.cutoff:
            raise AssemblyError("cannot add Hamiltonians over different cutoffs")
        return HamiltonianMatrix(
            matrix=self.matrix + other.matrix,
            cutoff=self.cutoff or other.cutoff,
            terms=self.terms + other.terms,
        )


def bhat_from_angles(theta: float, phi: float) -> np.ndarray:
    return np.array([sin(theta) * cos(phi), sin(theta) * sin(phi), cos(theta)])


# ---------------------------------------------------------------------------
# spin-space building blocks, order (+3/2, +1/2, -1/2, -3/2)

_SQ3 = sqrt(3.0)
_I4 = np.eye(4)
_DQ = np.diag([1.0, -1.0, -1.0, 1.0])

# R occupies (3/2, -1/2) and (1/2, -3/2); S occupies (3/2, 1/2) with a minus
# sign and (-1/2, -3/2) with a plus sign.
_R_RE = np.zeros((4, 4)); _R_RE[0, 2] = _R_RE[2, 0] = _R_RE[1, 3] = _R_RE[3, 1] = 1.0
_R_IM = np.zeros((4, 4), dtype=complex)
_R_IM[0, 2] = _R_IM[1, 3] = 1j; _R_IM[2, 0] = _R_IM[3, 1] = -1j
_S_RE = np.zeros((4, 4)); _S_RE[0, 1] = _S_RE[1, 0] = -1.0; _S_RE[2, 3] = _S_RE[3, 2] = 1.0
_S_IM = np.zeros((4, 4), dtype=complex)
_S_IM[0, 1] = 1j; _S_IM[1, 0] = -1j; _S_IM[2, 3] = -1j; _S_IM[3, 2] = 1j


def _r_gammas(material: MaterialParams, orientation: Orientation) -> tuple[float, float]:
    """(coefficient of kx^2 - ky^2, coefficient of kx ky) inside R."""
    if orientation is Orientation.DOT_110:
        return material.gamma3, material.gamma2
    return material.gamma2, material.gamma3


def _spin_weights(material: MaterialParams, orientation: Orientation) -> dict[str, np.ndarray]:
    """Dimensionless spin matrices multiplying each k-bilinear channel."""
    g1, g2, g3 = material.gamma1, material.gamma2, material.gamma3
    gr1, gr2 = _r_gammas(material, orientation)
    return {
        "xx": g1 * _I4 + g2 * _DQ - _SQ3 * gr1 * _R_RE,
        "yy": g1 * _I4 + g2 * _DQ + _SQ3 * gr1 * _R_RE,
        "zz": g1 * _I4 - 2.0 * g2 * _DQ,
        "xy": 2.0 * _SQ3 * gr2 * _R_IM,
        "xz": 2.0 * _SQ3 * g3 * _S_RE,
        "yz": 2.0 * _SQ3 * g3 * _S_IM,
    }


def _kron3(ax: np.ndarray, ay: np.ndarray, az: np.ndarray) -> np.ndarray:
    """Orbital kron with n_x fastest (to match the flat-index ordering)."""
    return np.kron(az, np.kron(ay, ax))


def _embed(orbital: np.ndarray, spin: np.ndarray) -> np.ndarray:
    return np.kron(orbital, spin)


def _check_dimension(cutoff: BasisCutoff, max_dimension: int) -> None:
    if cutoff.dimension > max_dimension:
        raise AssemblyError(
            f"cutoff {cutoff} gives dimension {cutoff.dimension} "
            f"> max_dimension {max_dimension}")


def assemble_lk(material: MaterialParams, geometry: BoxGeometry,
                orientation: Orientation, cutoff: BasisCutoff,
                max_dimension: int = MAX_DIMENSION) -> HamiltonianMatrix:
    """Kinetic four-band Hamiltonian at zero fields.

    Cross products k_i k_j on different axes factorize exactly in the
    product basis, so the symmetrization (k_i k_j + k_j k_i)/2 is the
    identity here; k_i^2 uses the exact diagonal element, not the squared
    truncated derivative matrix.
    """
    _check_dimension(cutoff, max_dimension)
    Nx, Ny, Nz = cutoff.N_x, cutoff.N_y, cutoff.N_z
    Ix, Iy, Iz = np.eye(Nx), np.eye(Ny), np.eye(Nz)
    Kx = ksquared_matrix(Nx, geometry.L_x)
    Ky = ksquared_matrix(Ny, geometry.L_y)
    Kz = ksquared_matrix(Nz, geometry.L_z)
    Dx = derivative_matrix(Nx, geometry.L_x)
    Dy = derivative_matrix(Ny, geometry.L_y)
    Dz = derivative_matrix(Nz, geometry.L_z)

    orbital = {
        "xx": _kron3(Kx, Iy, Iz),
        "yy": _kron3(Ix, Ky, Iz),
        "zz": _kron3(Ix, Iy, Kz),
        # k_a k_b = (-i d_a)(-i d_b) = -d_a d_b
        "xy": -_kron3(Dx, Dy, Iz),
        "xz": -_kron3(Dx, Iy, Dz),
        "yz": -_kron3(Ix, Dy, Dz),
    }
    spin = _spin_weights(material, orientation)
    dim = cutoff.dimension
    H = np.zeros((dim, dim), dtype=complex)
    for ch, orb in orbital.items():
        H += CONST.hbar2_over_2m0 * _embed(orb, spin[ch])
    return HamiltonianMatrix(matrix=H, cutoff=cutoff, terms=("lk",))


def dipole_y(geometry: BoxGeometry, cutoff: BasisCutoff) -> HamiltonianMatrix:
    """The y position operator (nm), spin-diagonal."""
    Nx, Ny, Nz = cutoff.N_x, cutoff.N_y, cutoff.N_z
    Y = position_matrix(Ny, geometry.L_y)
    orb = _kron3(np.eye(Nx), Y, np.eye(Nz))
    return HamiltonianMatrix(matrix=_embed(orb, _I4).astype(complex),
                             cutoff=cutoff, terms=("dipole_y",))


def assemble_electric(E0: float, geometry: BoxGeometry,
                      cutoff: BasisCutoff) -> HamiltonianMatrix:
    """Static potential -e E0 y; couples n_y of opposite parity only."""
    y = dipole_y(geometry, cutoff)
    return HamiltonianMatrix(matrix=-CONST.e_scale * E0 * y.matrix,
                             cutoff=cutoff, terms=("electric",))


def zeeman_spin_block(kappa: float, B: float, bhat: np.ndarray) -> np.ndarray:
    """The 4x4 block of 2 kappa mu_B B.J in the (+3/2..-3/2) order."""
    bx, by, bz = bhat
    bp, bm = bx + 1j * by, bx - 1j * by
    k = kappa * CONST.mu_B * B
    return k * np.array([
        [3 * bz, _SQ3 * bm, 0, 0],
        [_SQ3 * bp, bz, 2 * bm, 0],
        [0, 2 * bp, -bz, _SQ3 * bm],
        [0, 0, _SQ3 * bp, -3 * bz],
    ], dtype=complex)


def assemble_zeeman(material: MaterialParams, B: float, theta: float, phi: float,
                    cutoff: BasisCutoff) -> HamiltonianMatrix:
    block = zeeman_spin_block(material.kappa, B, bhat_from_angles(theta, phi))
    H = _embed(np.eye(cutoff.n_orbital), block)
    return HamiltonianMatrix(matrix=H, cutoff=cutoff, terms=("zeeman",))


def assemble_paramagnetic(material: MaterialParams, geometry: BoxGeometry,
                          B: float, theta: float, phi: float,
                          cutoff: BasisCutoff, *,
                          orientation: Orientation = Orientation.DOT_110,
                          ) -> HamiltonianMatrix:
    """Terms linear in A = (B x r)/2 after k -> -i grad + (e/hbar) A.

    Every channel factorizes into per-axis 1D operators drawn from
    {identity, position, derivative, position*derivative}; the composite
    same-axis element keeps the projection exact in the truncated basis.
    Each orbital factor below is real antisymmetric, so -i times it is
    Hermitian and the assembled matrix is Hermitian by construction.
    """
    Nx, Ny, Nz = cutoff.N_x, cutoff.N_y, cutoff.N_z
    Ix, Iy, Iz = np.eye(Nx), np.eye(Ny), np.eye(Nz)
    Xx = position_matrix(Nx, geometry.L_x)
    Xy = position_matrix(Ny, geometry.L_y)
    Xz = position_matrix(Nz, geometry.L_z)
    Dx = derivative_matrix(Nx, geometry.L_x)
    Dy = derivative_matrix(Ny, geometry.L_y)
    Dz = derivative_matrix(Nz, geometry.L_z)
    Qx, Qy, Qz = posderiv_matrix(Nx), posderiv_matrix(Ny), posderiv_matrix(Nz)

    bx, by, bz = bhat_from_angles(theta, phi)
    # (b x r) . grad pieces per k-bilinear channel; q_a = r_a d/dr_a
    ops = {
        "xx": by * _kron3(Dx, Iy, Xz) - bz * _kron3(Dx, Xy, Iz),
        "yy": bz * _kron3(Xx, Dy, Iz) - bx * _kron3(Ix, Dy, Xz),
        "zz": bx * _kron3(Ix, Xy, Dz) - by * _kron3(Xx, Iy, Dz),
        "xy": bz * (_kron3(Qx, Iy, Iz) - _kron3(Ix, Qy, Iz))
        - bx * _kron3(Dx, Iy, Xz) + by * _kron3(Ix, Dy, Xz),
        "xz": bx * _kron3(Dx, Xy, Iz)
        - by * (_kron3(Qx, Iy, Iz) - _kron3(Ix, Iy, Qz)) - bz * _kron3(Ix, Xy, Dz),
        "yz": bx * (_kron3(Ix, Qy, Iz) - _kron3(Ix, Iy, Qz))
        - by * _kron3(Xx, Dy, Iz) + bz * _kron3(Xx, Iy, Dz),
    }
    spin = _spin_weights(material, orientation)
    dim = cutoff.dimension
    H = np.zeros((dim, dim), dtype=complex)
    for ch, orb in ops.items():
        factor = -1j if ch in ("xx", "yy", "zz") else -0.5j
        H += CONST.mu_B * B * factor * _embed(orb, spin[ch])
    return HamiltonianMatrix(matrix=H, cutoff=cutoff, terms=("paramagnetic",))


def assemble_strain(material: MaterialParams, strain: StrainConfig,
                    cutoff: BasisCutoff) -> HamiltonianMatrix:
    """Biaxial Bir-Pikus shifts: rigid HH and LH diagonal offsets in meV."""
    material.require_strain()
    eps = strain.eps_parallel
    a_v_meV = material.a_v * 1e3
    b_v_meV = material.b_v * 1e3
    nu = material.nu
    d_hh = ((nu - 2) * a_v_meV - (nu + 1) * b_v_meV) * eps
    d_lh = ((nu - 2) * a_v_meV + (nu + 1) * b_v_meV) * eps
    block = np.diag([d_hh, d_lh, d_lh, d_hh]).astype(complex)
    H = _embed(np.eye(cutoff.n_orbital), block)
    return HamiltonianMatrix(matrix=H, cutoff=cutoff, terms=("strain",))


def assemble_static(material: MaterialParams, geometry: BoxGeometry,
                    orientation: Orientation, cutoff: BasisCutoff,
                    E0: float = 0.0, strain: StrainConfig | None = None,
                    max_dimension: int = MAX_DIMENSION) -> HamiltonianMatrix:
    """LK + electric (+ strain): the B-independent part of the Hamiltonian."""
    H = assemble_lk(material, geometry, orientation, cutoff, max_dimension)
    if E0 != 0.0:
        H = H + assemble_electric(E0, geometry, cutoff)
    if strain is not None and strain.eps_parallel != 0.0:
        H = H + assemble_strain(material, strain, cutoff)
    return H
