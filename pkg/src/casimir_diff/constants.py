"""Physical constants (CODATA 2018, SI units) and unit helpers."""

HBAR = 1.054571817e-34  # J s
KB = 1.380649e-23  # J/K
C = 299792458.0  # m/s
EV = 1.602176634e-19  # J
ZETA3 = 1.2020569031595942


def ev_to_rad_s(energy_ev: float) -> float:
    """Angular frequency (rad/s) corresponding to an energy quantum in eV."""
    return energy_ev * EV / HBAR
