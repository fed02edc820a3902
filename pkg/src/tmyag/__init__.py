"""Quadratic Zeeman shifts, site-selective spectra, and nuclear
spin-lattice relaxation of Tm3+:YAG at high magnetic fields."""

__version__ = "0.1.0"

from .constants import MaterialConstants, load_constants, write_constants
from .geometry import (SiteFrame, FieldConfig, site_frame, site_frames,
                       field_vector, local_field, dipole_projection,
                       equivalence_classes)
from .zeeman import (ZeemanResult, hyperfine_splitting, quadratic_displacement,
                     optical_shift, zeeman_result, shift_coefficient,
                     shift_curve, broadening, crystal_field_splitting,
                     linestrength)
from .spectra import (LineShape, Spectrum, synthesize_lines,
                      synthesize_spectrum, fit_lorentzian)
from .relaxation import (RelaxParams, RateDataset, HoleDecay,
                         REFERENCE_RELAX_PARAMS, rate, rate_terms,
                         bleaney_alpha_d, dominance_map, simulate_hole_decay,
                         extract_T1)
from .fitting import (FitProblem, FitOptions, FitResult, least_squares,
                      numerical_jacobian, joint_relax_fit)

__all__ = [
    "MaterialConstants", "load_constants", "write_constants",
    "SiteFrame", "FieldConfig", "site_frame", "site_frames", "field_vector",
    "local_field", "dipole_projection", "equivalence_classes",
    "ZeemanResult", "hyperfine_splitting", "quadratic_displacement",
    "optical_shift", "zeeman_result", "shift_coefficient", "shift_curve",
    "broadening", "crystal_field_splitting", "linestrength",
    "LineShape", "Spectrum", "synthesize_lines", "synthesize_spectrum",
    "fit_lorentzian",
    "RelaxParams", "RateDataset", "HoleDecay", "REFERENCE_RELAX_PARAMS",
    "rate", "rate_terms", "bleaney_alpha_d", "dominance_map",
    "simulate_hole_decay", "extract_T1",
    "FitProblem", "FitOptions", "FitResult", "least_squares",
    "numerical_jacobian", "joint_relax_fit",
]
