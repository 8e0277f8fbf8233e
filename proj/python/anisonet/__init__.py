"""Connectivity of 3D ad hoc networks with anisotropic antennas."""

from ._anisonet import (  # noqa: F401
    NumericalError,
    GainPattern,
    __version__,
    corner_gain_integral,
    corner_mass,
    coulomb_energy,
    gamma_fn,
    homogeneous_mass,
    lower_incomplete_gamma,
    min_multisector_corner_mass,
    multisector_corner_mass_3d,
    pfc_homogeneous,
    ray_exit_distance,
    run_ensemble,
    s_functional,
    sweep_eta,
    thomson_points,
)
