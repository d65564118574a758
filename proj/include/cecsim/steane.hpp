#pragma once

#include <array>

#include "cecsim/pauli.hpp"

namespace cecsim {

enum class LogicalClass { I, X, Z, Y };

const char* to_string(LogicalClass cls);

/// Z-sector stabilizers are Z-type and detect X components of an error;
/// X-sector stabilizers detect Z components.
enum class Sector { Z, X };

enum class StabilizerSet { Generators, Redundant };

struct Syndrome {
  uint8_t bits = 0;  // bit i = error anticommutes with stabilizer i
  int count = 0;     // 3 (generators) or 7 (redundant)
  Sector sector = Sector::Z;
};

/// Static data for the Steane [[7,1,3]] code: the 3+3 canonical generators,
/// the 7+7 redundant stabilizer sets (all nontrivial generator products), the
/// transversal logical operators, and the lookup decoder.
///
/// Generator supports follow the Hamming parity-check rows {4,5,6,7},
/// {2,3,6,7}, {1,3,5,7} (1-indexed data qubits). Redundant ordering is the
/// three generators followed by the products {1,2}, {1,3}, {2,3}, {1,2,3};
/// redundant stabilizer i is extracted into ancilla qubit 7+i.
struct CodeSpec {
  std::array<PauliString, 3> z_generators;
  std::array<PauliString, 3> x_generators;
  std::array<PauliString, 7> z_redundant;
  std::array<PauliString, 7> x_redundant;
  PauliString logical_x;
  PauliString logical_z;

  // Data-qubit support of redundant stabilizer i (same for both sectors).
  std::array<uint32_t, 7> redundant_support;
  // For data qubit q, the 4 redundant-stabilizer indices whose support holds q.
  std::array<std::array<int, 4>, 7> support_table;
  // Keyed by (x_syndrome << 3) | z_syndrome over the generator sets.
  std::array<PauliString, 64> decode_table;

  Syndrome syndrome_of(const PauliString& e, Sector sector,
                       StabilizerSet set) const;

  /// Minimum-weight correction C with syndrome_of(e * C) = 0 for both sectors.
  PauliString ideal_decode(const PauliString& e) const;

  /// Coset of e in N(S)/S. Requires zero generator syndrome in both sectors.
  LogicalClass logical_class(const PauliString& e) const;
};

CodeSpec build_code();

/// Shared immutable instance.
const CodeSpec& steane_code();

}  // namespace cecsim
