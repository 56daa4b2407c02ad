"""Numerical potential theory on the unit disk and Blaschke-type condition checks."""
from .circle import (CantorSpec, CompactBoundarySet, complement_neighborhood, dist_to_set,
                     lebesgue_measure, neighborhood, neighborhood_measure, parse_set_spec)
from .domains import LevelDomain, Membership, ProductLevelDomain, contains
from .errors import AccuracyError, DomainError, IndeterminateError, InvalidScenario
from .green import (GreenEstimate, WosConfig, disk_green_wos, green_at_origin, green_disk,
                    verify_green_lower_bound)
from .layer_cake import WeightedSample, lcr_1d_check, lcr_2d_check
from .norms import delta_exponent, i_characteristic, integrability_norm
from .poisson import (GrowthClassSpec, SingularBoundaryDensity, arc_harmonic_measure,
                      check_harmonic_measure_upper, harmonic_majorant, poisson_kernel,
                      set_harmonic_measure, v_ab)
from .quadrature import QuadratureConfig
from .report import VerificationRecord, VerificationReport
from .riesz import (BlaschkeSystem, DiscreteMeasure, GridMeasure, annular_riesz_measure,
                    blaschke_zero_generator, grid_riesz_measure, growth_constant_estimate,
                    log_blaschke_modulus, regularize_origin, riesz_representation_check,
                    truncated_mass, weighted_mass_integral)
from .scenarios import Scenario, run_scenario

__version__ = "0.1.0"
