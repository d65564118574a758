#pragma once

#include <span>
#include <utility>
#include <vector>

#include "cecsim/circuit.hpp"
#include "cecsim/noise.hpp"
#include "cecsim/steane.hpp"

namespace cecsim {

struct RoundOutcome {
  PauliString residual{kRegisterSize};  // end-of-round frame on data qubits
  LogicalClass cls = LogicalClass::I;   // class after ideal decoding
  bool failed = false;                  // cls != I
};

/// Deterministic Pauli-frame execution of one error-correction round.
///
/// The frame is the Pauli relating the actual state to the noiseless
/// reference trajectory, tracked modulo phase. Unitary gates transform it by
/// conjugation. The reference keeps every ancilla in a computational-basis
/// state (all syndromes zero), so a CKX_CLASSICAL resolves exactly: the
/// actual control values are the frame's x-bits on the controls, and the
/// target picks up X iff all four are 1. RESET/PREP0 clear the qubit's frame.
/// Faults attached to a timestep are multiplied in after its gates.
class Simulator {
 public:
  explicit Simulator(const Circuit& c);

  const Circuit& circuit() const { return circuit_; }
  const std::vector<FaultLocation>& locations() const { return locations_; }

  /// Runs the round under the given faults (location-ordered, as produced by
  /// the noise module) and an optional pre-round data error.
  RoundOutcome run(std::span<const FaultEvent> faults,
                   const PauliString* inject = nullptr) const;

  /// Frame snapshots: entry 0 is the initial frame, entry t+1 the frame after
  /// timestep t, giving depth+1 entries.
  std::vector<std::pair<int, PauliString>> trace(
      std::span<const FaultEvent> faults,
      const PauliString* inject = nullptr) const;

 private:
  struct Op {
    enum Code : uint8_t { kH, kCnot, kCpString, kCkx, kClear } code;
    uint8_t q0 = 0;
    uint8_t q1 = 0;
    uint32_t mask_x = 0;  // CPSTRING body x / CKX control mask
    uint32_t mask_z = 0;  // CPSTRING body z
  };

  struct Frame {
    uint32_t x = 0;
    uint32_t z = 0;
  };

  struct CompactFault {
    int timestep;
    uint32_t x;
    uint32_t z;
  };

  void apply_step(int t, Frame& f) const;
  RoundOutcome classify(Frame f) const;
  std::vector<CompactFault> compact(std::span<const FaultEvent> faults) const;

  Circuit circuit_;
  std::vector<FaultLocation> locations_;
  std::vector<Op> ops_;
  std::vector<int> step_offset_;  // ops_[step_offset_[t] .. step_offset_[t+1])
};

}  // namespace cecsim
