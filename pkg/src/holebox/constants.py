"""Physical constants in the working unit system.

Units used throughout: energies in meV, lengths in nm, magnetic fields in T,
electric fields in mV/nm, frequencies in GHz (1/ns).  In these units
e * E[mV/nm] * L[nm] is already an energy in meV, so the elementary charge
reduces to a conversion factor of exactly 1.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    hbar2_over_2m0: float  # meV nm^2
    mu_B: float            # meV / T
    e_scale: float         # meV / (mV/nm * nm)
    h_planck: float        # meV ns

    def __post_init__(self):
        if not 38.0 <= self.hbar2_over_2m0 <= 38.2:
            raise ValueError(f"hbar2_over_2m0 out of range: {self.hbar2_over_2m0}")
        if not 0.0578 <= self.mu_B <= 0.0580:
            raise ValueError(f"mu_B out of range: {self.mu_B}")


# CODATA 2018: hbar = 1.054571817e-34 J s, m0 = 9.1093837015e-31 kg,
# e = 1.602176634e-19 C (exact), h = 6.62607015e-34 J s (exact).
CONST = PhysicalConstants(
    hbar2_over_2m0=38.099_821_109_686,   # hbar^2/(2 m0) in meV nm^2
    mu_B=0.057_883_817_982,              # Bohr magneton in meV/T
    e_scale=1.0,
    h_planck=0.004_135_667_696_923_86,   # Planck constant in meV ns
)
