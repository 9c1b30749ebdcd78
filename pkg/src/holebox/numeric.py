"""Converged-basis qubit pipeline.

The static Hamiltonian (kinetic + electric + strain) is diagonalized at
B = 0, where every level is a Kramers doublet. The magnetic part, linear
in B, is then treated at first order: its 2x2 projection on the ground
doublet gives the Larmor frequency, and the drive matrix element between
the split qubit states comes from a sum over excited doublets.

All physical outputs are invariant under the pseudo-spin gauge (unitary
rotations within each doublet); eigenvector phases are nevertheless fixed
deterministically so that intermediate dumps are reproducible.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .basis import BasisCutoff
from .constants import CONST
from .hamiltonian import (BoxGeometry, FieldConfig, HamiltonianMatrix,
                          Orientation, StrainConfig, assemble_paramagnetic,
                          assemble_static, assemble_zeeman, bhat_from_angles,
                          dipole_y)
from .materials import MaterialParams
from .minimal import DegenerateQubitError

DENSE_LIMIT = 4096
PAIRING_TOL = 1e-8      # meV
RESIDUAL_TOL = 1e-9     # relative to the matrix norm
DEFAULT_N_EXCITED = 40

TIER_LABELS = ("analytic2", "analytic4", "linearized", "renormalized",
               "minimal_exact", "converged_zeeman", "converged_full")


class SolverError(RuntimeError):
    """Eigensolver failed to converge or produced unusable residuals."""


class PairingError(ValueError):
    """The spectrum cannot be split into well-separated Kramers doublets."""


@dataclass(frozen=True)
class SpinorSpectrum:
    energies: np.ndarray           # ascending, meV
    vectors: np.ndarray            # orthonormal columns, matching order
    cutoff: BasisCutoff | None
    included_terms: tuple[str, ...]

    @property
    def n_states(self) -> int:
        return self.energies.shape[0]


@dataclass(frozen=True)
class KramersDoublet:
    E: float
    v_up: np.ndarray
    v_down: np.ndarray
    index: int


@dataclass(frozen=True)
class RabiResult:
    f_L: float                                     # GHz
    f_R: float                                     # GHz
    g_principal: tuple[float, float, float] | None
    tier: str
    tail_fraction: float | None = None

    def __post_init__(self):
        if self.tier not in TIER_LABELS:
            raise ValueError(f"unknown tier {self.tier!r}")
        if self.f_L < 0 or self.f_R < 0:
            raise ValueError("frequencies must be non-negative")


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive."""
    out = vectors.copy()
    lead = np.argmax(np.abs(out), axis=0)
    for j, i in enumerate(lead):
        c = out[i, j]
        a = abs(c)
        if a > 0:
            out[:, j] *= c.conjugate() / a
    return out


def solve_spectrum(H: HamiltonianMatrix, n_states: int) -> SpinorSpectrum:
    """Lowest n_states eigenpairs, ascending and deterministically phased.

    Dense decomposition up to DENSE_LIMIT; above that an iterative extremal
    solver with a fixed-seed starting vector keeps runs reproducible.
    """
    dim = H.dimension
    n = min(n_states, dim)
    if n < 1:
        raise ValueError(f"n_states must be >= 1, got {n_states}")
    A = H.matrix
    if dim <= DENSE_LIMIT or n >= dim - 1:
        energies, vectors = scipy.linalg.eigh(A, subset_by_index=[0, n - 1])
    else:
        rng = np.random.default_rng(1234)
        v0 = rng.standard_normal(dim)
        try:
            energies, vectors = scipy.sparse.linalg.eigsh(
                A, k=n, which="SA", v0=v0)
        except scipy.sparse.linalg.ArpackNoConvergence as err:
            raise SolverError(
                f"iterative eigensolver stalled: {len(err.eigenvalues)} of "
                f"{n} pairs converged") from err
        order = np.argsort(energies)
        energies, vectors = energies[order], vectors[:, order]
    scale = np.linalg.norm(A, np.inf)
    residual = np.max(np.linalg.norm(A @ vectors - vectors * energies, axis=0))
    if scale > 0 and residual > RESIDUAL_TOL * scale:
        raise SolverError(
            f"eigenpair residual {residual:.3e} exceeds "
            f"{RESIDUAL_TOL:.0e} * |H| = {RESIDUAL_TOL * scale:.3e}")
    return SpinorSpectrum(energies=energies, vectors=_fix_phases(vectors),
                          cutoff=H.cutoff, included_terms=H.terms)


def pair_doublets(spectrum: SpinorSpectrum,
                  tol: float = PAIRING_TOL) -> list[KramersDoublet]:
    """Greedy adjacent pairing of a time-reversal-degenerate spectrum."""
    e = spectrum.energies
    n = e.shape[0]
    if n % 2 == 1:
        warnings.warn("odd number of states; dropping the unpaired top state",
                      stacklevel=2)
        n -= 1
    doublets = []
    for i in range(0, n, 2):
        gap = e[i + 1] - e[i]
        if gap > tol:
            raise PairingError(
                f"states {i} and {i + 1} differ by {gap:.3e} meV > tol {tol:.0e}"
                f" (energies {e[i]:.9f}, {e[i + 1]:.9f})")
        if i + 2 < n and e[i + 2] - e[i + 1] <= tol:
            raise PairingError(
                f"ambiguous pairing: states {i + 1} and {i + 2} nearly "
                f"degenerate (energies {e[i + 1]:.9f}, {e[i + 2]:.9f})")
        doublets.append(KramersDoublet(
            E=0.5 * (e[i] + e[i + 1]),
            v_up=spectrum.vectors[:, i],
            v_down=spectrum.vectors[:, i + 1],
            index=i // 2))
    return doublets


def qubit_h1(ground: KramersDoublet, Hm_prime: HamiltonianMatrix) -> np.ndarray:
    """2x2 projection of the magnetic Hamiltonian on the ground doublet."""
    u, d = ground.v_up, ground.v_down
    A = Hm_prime.matrix
    Au, Ad = A @ u, A @ d
    return np.array([[u.conj() @ Au, u.conj() @ Ad],
                     [d.conj() @ Au, d.conj() @ Ad]])


def rabi_sum_over_states(doublets: list[KramersDoublet],
                         Hm_prime: HamiltonianMatrix,
                         dipole_y: HamiltonianMatrix, E_ac: float,
                         n_excited: int = DEFAULT_N_EXCITED, *,
                         tier: str = "converged_full",
                         g_principal: tuple[float, float, float] | None = None,
                         ) -> RabiResult:
    """First-order-in-B Larmor and Rabi frequencies of the ground doublet.

    The drive matrix element is accumulated doublet by doublet; the
    reported tail fraction is the relative weight of the last 10% of the
    excited doublets, a cheap convergence diagnostic.
    """
    if len(doublets) < 2:
        raise ValueError("need the ground doublet plus at least one excited")
    ground = doublets[0]
    excited = doublets[1:1 + n_excited]
    H1 = qubit_h1(ground, Hm_prime)
    w, U = np.linalg.eigh(H1)
    split = w[1] - w[0]
    if split < 1e-12:
        raise DegenerateQubitError(
            f"qubit splitting {split:.3e} meV too small; Rabi frequency "
            "ill-defined for this field direction")
    f_L = split / CONST.h_planck
    s0 = U[0, 0] * ground.v_up + U[1, 0] * ground.v_down
    s1 = U[0, 1] * ground.v_up + U[1, 1] * ground.v_down
    y_s0, y_s1 = dipole_y.matrix @ s0, dipole_y.matrix @ s1
    m_s0, m_s1 = Hm_prime.matrix @ s0, Hm_prime.matrix @ s1
    contribs = []
    for d in excited:
        gap = ground.E - d.E
        if abs(gap) <= PAIRING_TOL:
            raise DegenerateQubitError(
                f"excited doublet {d.index} at E = {d.E:.9f} meV degenerate "
                "with the ground doublet; first-order sum invalid")
        c = 0.0 + 0.0j
        for v in (d.v_up, d.v_down):
            # Y and Hm are Hermitian, so <s1|Y|v> = <v|Y|s1>* etc.; the
            # four factors then need no further matvecs
            c += (np.vdot(y_s1, v) * np.vdot(v, m_s0)
                  + np.vdot(m_s1, v) * np.vdot(v, y_s0)) / gap
        contribs.append(c)
    total = sum(contribs)
    f_R = CONST.e_scale * E_ac * abs(total) / CONST.h_planck
    tail_n = max(1, len(contribs) // 10)
    tail = abs(sum(contribs[-tail_n:])) / abs(total) if abs(total) > 0 else 0.0
    return RabiResult(f_L=f_L, f_R=f_R, g_principal=g_principal, tier=tier,
                      tail_fraction=tail)


# ---------------------------------------------------------------------------
# high-level pipeline

def _magnetic_hamiltonian(material: MaterialParams, geometry: BoxGeometry,
                          orientation: Orientation, fields: FieldConfig,
                          cutoff: BasisCutoff,
                          include_paramagnetic: bool) -> HamiltonianMatrix:
    H = assemble_zeeman(material, fields.B, fields.theta, fields.phi, cutoff)
    if include_paramagnetic:
        H = H + assemble_paramagnetic(material, geometry, fields.B,
                                      fields.theta, fields.phi, cutoff,
                                      orientation=orientation)
    return H


def _principal_g(ground: KramersDoublet, axis_generators) -> tuple[float, float, float]:
    """|g| along the three axes from unit-B magnetic generators."""
    out = []
    for G in axis_generators:
        w = np.linalg.eigvalsh(qubit_h1(ground, G))
        out.append((w[1] - w[0]) / CONST.mu_B)
    return tuple(out)


def converged_rabi(material: MaterialParams, geometry: BoxGeometry,
                   orientation: Orientation, fields: FieldConfig,
                   cutoff: BasisCutoff, *,
                   include_paramagnetic: bool = True,
                   strain: StrainConfig | None = None,
                   n_excited: int = DEFAULT_N_EXCITED,
                   with_g: bool = False) -> RabiResult:
    """One-shot pipeline: assemble, solve, pair, project, sum."""
    H0 = assemble_static(material, geometry, orientation, cutoff,
                         E0=fields.E0, strain=strain)
    n_states = min(2 * (n_excited + 1), H0.dimension)
    spectrum = solve_spectrum(H0, n_states)
    doublets = pair_doublets(spectrum)
    Hm = _magnetic_hamiltonian(material, geometry, orientation, fields,
                               cutoff, include_paramagnetic)
    Y = dipole_y(geometry, cutoff)
    g = None
    if with_g:
        gens = [_magnetic_hamiltonian(
            material, geometry, orientation,
            FieldConfig(B=1.0, theta=th, phi=ph), cutoff, include_paramagnetic)
            for th, ph in ((np.pi / 2, 0.0), (np.pi / 2, np.pi / 2), (0.0, 0.0))]
        g = _principal_g(doublets[0], gens)
    tier = "converged_full" if include_paramagnetic else "converged_zeeman"
    return rabi_sum_over_states(doublets, Hm, Y, fields.E_ac, n_excited,
                                tier=tier, g_principal=g)


# ---------------------------------------------------------------------------
# reduced model for dense angle grids

@dataclass(frozen=True)
class ReducedModel:
    """Static eigenbasis projection of the field generators.

    The B = 0 problem is solved once; the Zeeman and paramagnetic parts are
    linear in B b_hat, so their projections on the kept eigenvectors let an
    angle grid be swept with small-matrix algebra only.
    """
    energies: np.ndarray
    zeeman: tuple[np.ndarray, np.ndarray, np.ndarray]        # unit-B, axes x,y,z
    paramagnetic: tuple[np.ndarray, np.ndarray, np.ndarray]
    dipole: np.ndarray
    cutoff: BasisCutoff

    def doublets(self) -> list[KramersDoublet]:
        n = self.energies.shape[0]
        eye = np.eye(n, dtype=complex)
        spectrum = SpinorSpectrum(energies=self.energies, vectors=eye,
                                  cutoff=None, included_terms=("reduced",))
        return pair_doublets(spectrum)

    def rabi(self, B: float, theta: float, phi: float, E_ac: float, *,
             include_paramagnetic: bool = True,
             n_excited: int = DEFAULT_N_EXCITED) -> RabiResult:
        bx, by, bz = bhat_from_angles(theta, phi)
        M = B * (bx * self.zeeman[0] + by * self.zeeman[1] + bz * self.zeeman[2])
        if include_paramagnetic:
            M = M + B * (bx * self.paramagnetic[0] + by * self.paramagnetic[1]
                         + bz * self.paramagnetic[2])
        tier = "converged_full" if include_paramagnetic else "converged_zeeman"
        Hm = HamiltonianMatrix(matrix=M, cutoff=None, terms=("reduced",))
        Y = HamiltonianMatrix(matrix=self.dipole, cutoff=None, terms=("reduced",))
        return rabi_sum_over_states(self.doublets(), Hm, Y, E_ac, n_excited,
                                    tier=tier)


def reduce_model(material: MaterialParams, geometry: BoxGeometry,
                 orientation: Orientation, cutoff: BasisCutoff, E0: float, *,
                 strain: StrainConfig | None = None,
                 n_excited: int = DEFAULT_N_EXCITED) -> ReducedModel:
    H0 = assemble_static(material, geometry, orientation, cutoff,
                         E0=E0, strain=strain)
    n_states = min(2 * (n_excited + 1), H0.dimension)
    spectrum = solve_spectrum(H0, n_states)
    V = spectrum.vectors
    n = V.shape[1] - (V.shape[1] % 2)
    V = V[:, :n]

    def project(H: HamiltonianMatrix) -> np.ndarray:
        return V.conj().T @ (H.matrix @ V)

    axes = ((np.pi / 2, 0.0), (np.pi / 2, np.pi / 2), (0.0, 0.0))
    zee = tuple(project(assemble_zeeman(material, 1.0, th, ph, cutoff))
                for th, ph in axes)
    par = tuple(project(assemble_paramagnetic(material, geometry, 1.0, th, ph,
                                              cutoff, orientation=orientation))
                for th, ph in axes)
    return ReducedModel(energies=spectrum.energies[:n], zeeman=zee,
                        paramagnetic=par,
                        dipole=project(dipole_y(geometry, cutoff)),
                        cutoff=cutoff)
