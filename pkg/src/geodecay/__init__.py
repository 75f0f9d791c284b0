"""Decay of the geometric measure of entanglement under dephasing noise.

Subpackages and modules:

``states``       state families, projectors, fidelity and overlaps
``decoherence``  rate-equation noise and global dephasing
``geomeasure``   pure-state optimizer, lower bounds, decomposition upper bounds
``analytic``     closed-form decay curves
``analysis``     logarithmic derivative and half-life scaling
``cli``          command-line front end
"""

from ._kernels import BACKEND
from .analysis import GammaModel, half_life, log_derivative, scaling_table
from .analytic import CurveFamily, DecayCurve, branch_point, decay_curve, eg_exact
from .decoherence import RateModel, dephase_global, evolve_master
from .errors import DomainError, NumericalError
from .geomeasure import (
    BoundResult,
    Decomposition,
    OptimizerOptions,
    bracket,
    convex_hull_envelope,
    geometric_measure_pure,
    legendre_value,
    lower_bound_fidelity,
    lower_bound_two_observables,
    upper_bound_decomposition,
)
from .states import (
    DensityMatrix,
    Observable,
    ProductState,
    PureState,
    StateFamily,
    assemble_product,
    excitation_projector,
    fidelity,
    make_state,
    overlap,
)

__version__ = "0.1.0"
