"""Spin-1 mutually unbiased bases: construction, squeezing analysis and a
generation/measurement protocol built from rotation and twisting pulses."""

from .mub import (
    Basis,
    MubSet,
    UnbiasednessReport,
    fourier_matrix,
    mub_set_valid,
    null_basis,
    null_state,
    standard_mubs3,
    two_axis_operator,
    unbiasedness,
    weyl_pair,
)
from .protocol import (
    Circuit,
    Counts,
    Pulse,
    born_sample,
    generated_mub_set,
    measure,
    measurement_circuit,
    prepare,
    qkd_sift,
    tomography,
    twisting_hadamard,
)
from .spin import (
    Direction,
    equal_up_to_phase,
    exp_i_hermitian,
    quadratic_evolution,
    rotation,
    spin_along,
    spin_operators,
)
from .squeezing import (
    alpha_state,
    fourier_state_stats,
    mean_spin,
    null_direction,
    squeezing_report,
    uncertainty_check,
    variance_along,
)

__version__ = "0.1.0"
