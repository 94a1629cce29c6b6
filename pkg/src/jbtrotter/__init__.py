"""Jordan-algebra product formulas with empirical error-bound checks."""

from .algebras import (
    AlgebraDescriptor,
    Element,
    Spectrum,
    DescriptorMismatchError,
    parse_descriptor,
    sym_element,
    herm_element,
    spin_element,
    albert_element,
    unit,
    zero,
    jordan_mul,
    triple_product,
    quad_map,
    jordan_power,
    jb_norm,
    spectrum,
    exp_spectral,
    exp_series,
    random_element,
)
from .trotter import (
    SweepRecord,
    CapacityError,
    SchemeError,
    DegenerateDecayError,
    approx_g,
    approx_f,
    approx_h,
    exp_sum,
    measured_error,
    bound_thm31,
    bound_thm33i,
    bound_thm33ii,
    bound_special,
    tightest_bound,
    plan_min_n,
    sweep,
    empirical_order,
)
from .jets import (
    Jet,
    jet_exp,
    jet_unit,
    jet_zero,
    jet_jordan_mul,
    jet_triple,
    product_step_jet,
    symmetrized_step_jet,
    inverse_sandwich_defect_jet,
    evaluate_jet,
    residual,
)
from .instances import ProblemInstance, InstanceFormatError, load_instance, save_instance

__version__ = "0.1.0"
