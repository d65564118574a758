#include "cecsim/steane.hpp"

namespace cecsim {

namespace {

// Hamming [7,4] parity-check rows as data-qubit bit masks: qubit q (1-indexed)
// belongs to row i iff bit i of the binary representation of q is set.
constexpr std::array<uint32_t, 3> kGeneratorSupport = {
    0b1111000,  // {4,5,6,7}
    0b1100110,  // {2,3,6,7}
    0b1010101,  // {1,3,5,7}
};

PauliString z_string(uint32_t mask) {
  return PauliString::from_bits(kRegisterSize, 0, mask);
}
PauliString x_string(uint32_t mask) {
  return PauliString::from_bits(kRegisterSize, mask, 0);
}

}  // namespace

const char* to_string(LogicalClass cls) {
  switch (cls) {
    case LogicalClass::I:
      return "I";
    case LogicalClass::X:
      return "X";
    case LogicalClass::Z:
      return "Z";
    case LogicalClass::Y:
      return "Y";
  }
  return "?";
}

CodeSpec build_code() {
  CodeSpec code;

  const auto& g = kGeneratorSupport;
  code.redundant_support = {g[0],        g[1],        g[2],       g[0] ^ g[1],
                            g[0] ^ g[2], g[1] ^ g[2], g[0] ^ g[1] ^ g[2]};

  for (int i = 0; i < 3; i++) {
    code.z_generators[i] = z_string(g[i]);
    code.x_generators[i] = x_string(g[i]);
  }
  for (int i = 0; i < 7; i++) {
    code.z_redundant[i] = z_string(code.redundant_support[i]);
    code.x_redundant[i] = x_string(code.redundant_support[i]);
  }
  code.logical_x = x_string(kDataMask);
  code.logical_z = z_string(kDataMask);

  for (int q = 0; q < kNumData; q++) {
    int k = 0;
    for (int i = 0; i < 7; i++)
      if ((code.redundant_support[i] >> q) & 1u) code.support_table[q][k++] = i;
  }

  // Generator syndromes of a single-qubit error read off the binary index of
  // the faulted qubit, so each 3-bit syndrome value points at its own qubit.
  for (int sx = 0; sx < 8; sx++) {
    for (int sz = 0; sz < 8; sz++) {
      uint32_t cx = sx ? 1u << (sx - 1) : 0;
      uint32_t cz = sz ? 1u << (sz - 1) : 0;
      code.decode_table[(sx << 3) | sz] =
          PauliString::from_bits(kRegisterSize, cx, cz);
    }
  }
  return code;
}

const CodeSpec& steane_code() {
  static const CodeSpec code = build_code();
  return code;
}

Syndrome CodeSpec::syndrome_of(const PauliString& e, Sector sector,
                               StabilizerSet set) const {
  if (e.support() & ~kDataMask)
    throw std::invalid_argument("syndrome_of: error must act on data qubits");
  Syndrome s;
  s.sector = sector;
  s.count = set == StabilizerSet::Generators ? 3 : 7;
  uint32_t bits = sector == Sector::Z ? e.x_bits() : e.z_bits();
  for (int i = 0; i < s.count; i++) {
    uint32_t mask = set == StabilizerSet::Generators ? kGeneratorSupport[i]
                                                     : redundant_support[i];
    s.bits |= static_cast<uint8_t>((std::popcount(bits & mask) & 1) << i);
  }
  return s;
}

PauliString CodeSpec::ideal_decode(const PauliString& e) const {
  if (e.support() & ~kDataMask)
    throw std::invalid_argument("ideal_decode: error must act on data qubits");
  int sx = 0, sz = 0;
  for (int i = 0; i < 3; i++) {
    // Syndrome bit of generator i is bit (2 - i) of the faulted qubit index.
    sx |= (std::popcount(e.x_bits() & kGeneratorSupport[i]) & 1) << (2 - i);
    sz |= (std::popcount(e.z_bits() & kGeneratorSupport[i]) & 1) << (2 - i);
  }
  return decode_table[(sx << 3) | sz];
}

LogicalClass CodeSpec::logical_class(const PauliString& e) const {
  if (syndrome_of(e, Sector::Z, StabilizerSet::Generators).bits ||
      syndrome_of(e, Sector::X, StabilizerSet::Generators).bits)
    throw std::invalid_argument(
        "logical_class: nonzero syndrome, decode the error first");
  bool x_part = symplectic_product(e, logical_z);
  bool z_part = symplectic_product(e, logical_x);
  if (x_part && z_part) return LogicalClass::Y;
  if (x_part) return LogicalClass::X;
  if (z_part) return LogicalClass::Z;
  return LogicalClass::I;
}

}  // namespace cecsim
