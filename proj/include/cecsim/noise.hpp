#pragma once

#include <functional>
#include <vector>

#include "cecsim/circuit.hpp"
#include "cecsim/pauli.hpp"
#include "cecsim/rng.hpp"

namespace cecsim {

enum class AncillaChannel { Full, BitflipOnly };

/// Fault set for the 5-qubit gates (CPSTRING, CKX_CLASSICAL). Pairwise keeps
/// faults on the distinguished qubit (the CPSTRING control / CKX target) and
/// at most one other support qubit, matching the joint data-ancilla errors the
/// extraction step physically produces. FullDepolarizing is the uniform
/// 4^5 - 1 alternative for sensitivity checks.
enum class MultiQubitNoise { Pairwise, FullDepolarizing };

struct ErrorModel {
  double p = 0.0;
  AncillaChannel ancilla = AncillaChannel::Full;
  MultiQubitNoise multiqubit = MultiQubitNoise::Pairwise;
};

struct FaultEvent {
  int location = -1;
  PauliString pauli{kRegisterSize};

  friend bool operator==(const FaultEvent& a, const FaultEvent& b) {
    return a.location == b.location && a.pauli == b.pauli;
  }
};

/// Per-location admissible fault Paulis for a circuit under a model, in a
/// stable enumeration order. Rate-independent, so one table serves a whole
/// p-grid.
class NoiseTable {
 public:
  NoiseTable(const Circuit& c, const ErrorModel& m);

  const Circuit& circuit() const { return *circuit_; }
  const std::vector<FaultLocation>& locations() const { return locations_; }
  const std::vector<PauliString>& options(int location) const {
    return options_[location];
  }
  uint64_t total_single_events() const { return total_events_; }
  uint64_t total_pair_events() const;

 private:
  const Circuit* circuit_;
  std::vector<FaultLocation> locations_;
  std::vector<std::vector<PauliString>> options_;
  uint64_t total_events_ = 0;
};

/// Independently per location, emit one fault with probability p, uniform over
/// the location's admissible Paulis.
std::vector<FaultEvent> sample_faults(const NoiseTable& table, double p,
                                      RngStream& rng);

/// Every (location, admissible Pauli) pair exactly once, location-major.
std::vector<FaultEvent> enumerate_single_faults(const NoiseTable& table);

struct PairBudget {
  bool all = true;
  uint64_t sample_size = 0;

  static PairBudget everything() { return {true, 0}; }
  static PairBudget sample(uint64_t n) { return {false, n}; }
};

/// Visits unordered pairs of fault events at distinct locations: all of them,
/// or a deterministic uniform subsample without duplicates.
void for_each_fault_pair(
    const NoiseTable& table, PairBudget budget, uint64_t seed,
    const std::function<void(const FaultEvent&, const FaultEvent&)>& visit);

}  // namespace cecsim
