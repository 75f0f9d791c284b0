"""Geometric measure: pure-state optimizer, lower bounds, decomposition upper bounds."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..analytic import CurveFamily, check_size
from ..states import excitation_projector, fidelity
from .hull import HullEnvelope, Segment, convex_hull_envelope
from .lower import legendre_value, lower_bound_fidelity, lower_bound_two_observables
from .pure import DEFAULT_OPTIONS, OptimizerOptions, PureMeasure, geometric_measure_pure
from .upper import (
    Decomposition,
    dephased_target,
    mixing_angle,
    target_state,
    trial_measure,
    trial_states,
    trial_upper_value,
    upper_bound_decomposition,
    upper_bound_envelope,
    upper_bound_hulled,
)


@dataclass(frozen=True)
class BoundResult:
    lower: float
    upper: float
    certificate: Decomposition | None = None
    lower_method: str = ""
    upper_method: str = ""

    @property
    def gap(self):
        return self.upper - self.lower


@lru_cache(maxsize=32)
def pure_state_measure(family, n_qubits, opts=DEFAULT_OPTIONS):
    return geometric_measure_pure(target_state(family, n_qubits), opts).value


_EXCITATIONS = {CurveFamily.W4: 1, CurveFamily.D4: 2}


def bracket(family, n_qubits, x, opts=None, two_observable=False):
    """Numerical lower and upper bound on the dephased state's geometric measure.

    The lower bound uses the fidelity with the undephased state; for W4 and D4
    with ``two_observable=True`` it also uses the excitation-number projector.
    The upper bound is the hull-improved trial decomposition.
    """
    family = check_size(family, n_qubits)
    opts = opts or DEFAULT_OPTIONS
    psi = target_state(family, n_qubits)
    rho = dephased_target(family, n_qubits, x)
    F = fidelity(rho, psi)
    if two_observable and family in _EXCITATIONS:
        P = excitation_projector(n_qubits, _EXCITATIONS[family])
        lower = lower_bound_two_observables(F, P.expectation(rho), psi, P, opts)
        lower_method = "two-observable"
    else:
        lower = lower_bound_fidelity(F, pure_state_measure(family, n_qubits, opts))
        lower_method = "fidelity"
    if family in _EXCITATIONS:
        upper, cert = upper_bound_hulled(family, n_qubits, x)
        upper_method = "decomposition+hull"
    else:
        upper, cert = upper_bound_decomposition(family, n_qubits, x, opts)
        upper_method = "decomposition"
    return BoundResult(lower, upper, cert, lower_method, upper_method)


__all__ = [
    "BoundResult",
    "Decomposition",
    "DEFAULT_OPTIONS",
    "HullEnvelope",
    "OptimizerOptions",
    "PureMeasure",
    "Segment",
    "bracket",
    "convex_hull_envelope",
    "dephased_target",
    "geometric_measure_pure",
    "legendre_value",
    "lower_bound_fidelity",
    "lower_bound_two_observables",
    "mixing_angle",
    "pure_state_measure",
    "target_state",
    "trial_measure",
    "trial_states",
    "trial_upper_value",
    "upper_bound_decomposition",
    "upper_bound_envelope",
    "upper_bound_hulled",
]
