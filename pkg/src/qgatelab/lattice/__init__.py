"""Bose-Hubbard lattice engine."""

from .couplings import CRITICAL_RATIO, PotentialParams, collisional_U, critical_depth, tunneling_J
from .dynamics import (AdiabaticPhases, PulseProfile, adiabatic_phases, balanced_params, effective_shift_deviation,
                       gate_time_estimate, simulate_gate)
from .eigen import ConvergenceError, dense_ground_state, lanczos_ground_state
from .hubbard import (BHParams, SparseHamiltonian, TwoSpeciesParams, build_bh_hamiltonian, effective_Hab2,
                      effective_Hab4, effective_Hbb, two_site_two_species)
from .observables import (condensate_fraction, ground_state, one_body_density, open_chain_orbital, site_statistics,
                          transition_scan)
