#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cecsim/engine.hpp"
#include "cecsim/noise.hpp"

namespace cecsim {

struct RateEstimate {
  double p = 0.0;
  uint64_t shots = 0;
  uint64_t failures = 0;
  double p_log = 0.0;
  double ci_low = 0.0;   // 95% Wilson interval
  double ci_high = 0.0;
};

RateEstimate wilson_estimate(double p, uint64_t shots, uint64_t failures);

/// Monte Carlo logical error rate over independent per-shot fault samples.
/// Identical (seed, shots) give identical failure counts for any worker count.
RateEstimate estimate_rate(const Circuit& c, const ErrorModel& m, double p,
                           uint64_t shots, uint64_t seed, int workers = 1);

struct LocationCensus {
  int location = -1;
  int malignant = 0;   // admissible Paulis whose single fault is malignant
  int admissible = 0;

  double fraction() const {
    return admissible ? static_cast<double>(malignant) / admissible : 0.0;
  }
};

struct FaultCensus {
  double linear_coeff = 0.0;  // A = sum of malignant fractions, exact
  // N_m * 2/3 + N_windows * 8/15. With faults placed after gates, the eight
  // fatal two-qubit errors of an extraction window split 4+4 over its two
  // adjacent CNOTs, so the count-based form uses windows, not gate locations.
  double linear_coeff_counts = 0.0;
  int n_malignant_memory = 0;        // N_m: malignant 1-qubit locations
  int n_malignant_cnot = 0;          // malignant CNOT locations
  int n_malignant_cnot_windows = 0;  // (ancilla, quarter) groups of the above
  int n_malignant_multi = 0;         // malignant 5-qubit gate locations
  std::vector<LocationCensus> per_location;
  std::vector<FaultEvent> malignant_events;
};

/// Exhaustively runs every single fault event and aggregates malignancy.
FaultCensus fault_census(const Circuit& c, const ErrorModel& m);

struct QuadraticCoeff {
  double b = 0.0;  // coefficient of p^2 in p_log
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool exact = false;  // full pair enumeration (CI collapses to the point)
  uint64_t pairs_total = 0;
  uint64_t pairs_evaluated = 0;
};

/// B from exact or subsampled pairs of faults at distinct locations, each
/// pair weighted by the probability of its two Pauli draws.
QuadraticCoeff quadratic_coeff(const Circuit& c, const ErrorModel& m,
                               PairBudget budget, uint64_t seed,
                               int workers = 1);

struct FitResult {
  double a = 0.0;
  double b = 0.0;
  // Positive solution of A p + B p^2 = p; empty when A >= 1 or B <= 0.
  std::optional<double> threshold;
};

/// Weighted least squares of p_log on (p, p^2) with A, B clamped to be
/// nonnegative. Throws std::invalid_argument on fewer than 3 points or a
/// degenerate design matrix.
FitResult fit_and_threshold(std::span<const RateEstimate> points);

}  // namespace cecsim
