from .parameters import BasisState, ChannelBasis, PaParameters, channel_basis
from .hamiltonian import (EXCHANGE_NORM, build_hamiltonian, block_half,
                          block_threehalf, exchange_couplings,
                          retardation_factors)
from .potentials import ModelPotential, PotentialCurve, adiabatic_potentials, \
    model_potential
from .numerov import BoundState, NumerovGrid, solve_bound_states
from .spectrum import pa_spectrum, potentials_to_csv, spectrum_to_csv
from .density import lb_density_ratio, lb_level_density

__all__ = [
    "BasisState", "ChannelBasis", "PaParameters", "channel_basis",
    "EXCHANGE_NORM", "build_hamiltonian", "block_half", "block_threehalf",
    "exchange_couplings", "retardation_factors",
    "ModelPotential", "PotentialCurve", "adiabatic_potentials",
    "model_potential",
    "BoundState", "NumerovGrid", "solve_bound_states",
    "pa_spectrum", "potentials_to_csv", "spectrum_to_csv",
    "lb_density_ratio", "lb_level_density",
]
