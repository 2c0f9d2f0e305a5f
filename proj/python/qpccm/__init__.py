# SPDX-License-Identifier: Apache-2.0
"""Two-qubit phase-covariant cloning simulator.

Thin wrapper around the compiled extension: the cloning network U(theta),
its gate decomposition and NMR pulse-level compilation with T1/T2
relaxation, synthetic multiplet spectra, and a BB84 eavesdropping harness.
"""

from ._core import (
    RNG_ID,
    BasisCounts,
    CloneResult,
    CompiledSequence,
    CurveRow,
    Gate,
    ProtocolReport,
    SpinSystem,
    __version__,
    analytic_signals,
    bloch,
    build_unitary,
    clone,
    compile_sequence,
    coupling_propagator,
    curves,
    decompose,
    default_theta_grid,
    equatorial_state,
    eve_intercept,
    expectation,
    fidelity,
    fidelity_closed_form,
    mutual_information,
    partial_trace,
    prepare_state,
    propagator_distance,
    qber_of_theta,
    relaxed_clone,
    run_protocol,
    sequence_propagator,
    synthesize_spectrum,
    theta_of_qber,
)

__all__ = [
    "RNG_ID",
    "BasisCounts",
    "CloneResult",
    "CompiledSequence",
    "CurveRow",
    "Gate",
    "ProtocolReport",
    "SpinSystem",
    "__version__",
    "analytic_signals",
    "bloch",
    "build_unitary",
    "clone",
    "compile_sequence",
    "coupling_propagator",
    "curves",
    "decompose",
    "default_theta_grid",
    "equatorial_state",
    "eve_intercept",
    "expectation",
    "fidelity",
    "fidelity_closed_form",
    "mutual_information",
    "partial_trace",
    "prepare_state",
    "propagator_distance",
    "qber_of_theta",
    "relaxed_clone",
    "run_protocol",
    "sequence_propagator",
    "synthesize_spectrum",
    "theta_of_qber",
]
