"""Fault-propagation simulator for measurement-free error correction on the
Steane 7-qubit code.

The heavy lifting lives in the compiled extension; this package re-exports
its surface. Typical use:

    import cecsim
    fig2 = cecsim.build_circuit("fig2")
    census = cecsim.fault_census(fig2, ancilla="full")
    assert census.A == 0.0
"""

from cecsim._core import (
    Circuit,
    FaultCensus,
    FaultLocation,
    FitResult,
    PauliString,
    QuadraticCoeff,
    RateEstimate,
    build_circuit,
    estimate_rate,
    fault_census,
    fit_and_threshold,
    locations,
    quadratic_coeff,
    run_round,
    trace_round,
)

__all__ = [
    "Circuit",
    "FaultCensus",
    "FaultLocation",
    "FitResult",
    "PauliString",
    "QuadraticCoeff",
    "RateEstimate",
    "build_circuit",
    "estimate_rate",
    "fault_census",
    "fit_and_threshold",
    "locations",
    "quadratic_coeff",
    "run_round",
    "trace_round",
]
