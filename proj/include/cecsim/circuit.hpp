#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cecsim/pauli.hpp"

namespace cecsim {

enum class GateKind { Prep0, H, Cnot, CpString, CkxClassical, Reset };

const char* to_string(GateKind kind);

struct GateOp {
  GateKind kind;
  // Ordered support, control(s) first. CNOT is {control, target}; CPSTRING is
  // {control} followed by the body support; CKX_CLASSICAL is the 4 ancilla
  // controls followed by the data target.
  std::vector<int> qubits;
  PauliString body{kRegisterSize};  // CPSTRING only
  int timestep = -1;
  int stage = 0;  // builder quarter, not part of the wire format

  uint32_t support_mask() const {
    uint32_t m = 0;
    for (int q : qubits) m |= 1u << q;
    return m;
  }

  friend bool operator==(const GateOp& a, const GateOp& b) {
    return a.kind == b.kind && a.qubits == b.qubits && a.body == b.body &&
           a.timestep == b.timestep;
  }
};

enum class CircuitLabel { Fig1, Fig2, Custom };

const char* to_string(CircuitLabel label);

struct Circuit {
  int n_data = kNumData;
  int n_ancilla = kNumAncilla;
  CircuitLabel label = CircuitLabel::Custom;
  std::vector<GateOp> gates;  // schedule order: ascending timestep
  int depth = 0;
  // First timestep after each builder quarter; empty for imported circuits.
  std::vector<int> stage_ends;

  int n() const { return n_data + n_ancilla; }

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.n_data == b.n_data && a.n_ancilla == b.n_ancilla &&
           a.label == b.label && a.depth == b.depth && a.gates == b.gates;
  }
};

/// Bit-flip-first round with CNOT extraction: each redundant Z stabilizer is
/// copied into a fresh ancilla by 4 data-controlled CNOTs, corrections fire on
/// an exact 4-ancilla match, and the phase half reuses the same machinery
/// inside a transversal-H sandwich.
Circuit build_fig1();

/// Single-time-step extraction: each ancilla is prepared in |+>, controls one
/// Pauli-string gate whose body is the stabilizer, and is read out through H.
/// Corrections and the phase half are as in build_fig1.
Circuit build_fig2();

enum class LocationKind { Gate, Idle };

struct FaultLocation {
  int id = -1;
  LocationKind kind = LocationKind::Idle;
  int timestep = -1;
  std::vector<int> qubits;
  GateKind gate_kind = GateKind::Prep0;  // valid when kind == Gate
  int gate_index = -1;                   // index into Circuit::gates

  uint32_t support_mask() const {
    uint32_t m = 0;
    for (int q : qubits) m |= 1u << q;
    return m;
  }
};

/// One GATE location per gate plus one IDLE location per uncovered
/// (qubit, timestep) pair; together they partition the register at every
/// timestep. Ordering (hence ids) is by timestep, gates first.
std::vector<FaultLocation> enumerate_locations(const Circuit& c);

/// One line per gate: `t=<step> <KIND> <qubits...> [body=<literal>]` with
/// 1-indexed qubits, preceded by a `# circuit=<label>` header.
std::string export_text(const Circuit& c);

/// Inverse of export_text. Throws std::runtime_error with the offending line
/// number and token on malformed input.
Circuit import_text(std::string_view text);

/// g P g^dagger modulo phase for the unitary gate kinds. CKX_CLASSICAL is
/// rejected: the engine resolves it from actual ancilla values instead.
PauliString conjugate_through(const PauliString& p, const GateOp& g);

/// Structural checks: arities, body supports, schedule booking. Throws.
void validate(const Circuit& c);

}  // namespace cecsim
