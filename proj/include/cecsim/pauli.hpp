#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cecsim {

constexpr int kNumData = 7;
constexpr int kNumAncilla = 7;
constexpr int kRegisterSize = kNumData + kNumAncilla;
constexpr uint32_t kDataMask = (1u << kNumData) - 1;
constexpr uint32_t kAncillaMask = ((1u << kRegisterSize) - 1) & ~kDataMask;

/// Pauli operator modulo global phase in binary symplectic form: qubit q
/// carries X iff x_bits() bit q is set, Z iff z_bits() bit q is set, Y iff
/// both. Qubits are 0-indexed internally; text labels ("Z1.Z2") are 1-indexed.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n) : n_(check_size(n)) {}

  static PauliString identity(int n) { return PauliString(n); }

  static PauliString from_bits(int n, uint32_t x, uint32_t z) {
    PauliString p(n);
    uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    if ((x & ~full) || (z & ~full))
      throw std::invalid_argument("PauliString: bits outside register");
    p.x_ = x;
    p.z_ = z;
    return p;
  }

  /// Single-qubit X/Y/Z on qubit q (0-indexed) of an n-qubit register.
  static PauliString single(int n, int q, char pauli);

  /// Parses a 1-indexed literal such as "Z1.Z2.Z3.Z4", "X1.Z3" or "I".
  static PauliString from_label(int n, std::string_view label);

  int size() const { return n_; }
  uint32_t x_bits() const { return x_; }
  uint32_t z_bits() const { return z_; }
  bool x(int q) const { return (x_ >> q) & 1u; }
  bool z(int q) const { return (z_ >> q) & 1u; }
  bool is_identity() const { return x_ == 0 && z_ == 0; }
  int weight() const { return std::popcount(x_ | z_); }
  uint32_t support() const { return x_ | z_; }

  /// Same operator with all components outside `mask` dropped.
  PauliString restricted(uint32_t mask) const {
    PauliString p(n_);
    p.x_ = x_ & mask;
    p.z_ = z_ & mask;
    return p;
  }

  std::string label() const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_;
  }
  friend bool operator!=(const PauliString& a, const PauliString& b) {
    return !(a == b);
  }

  /// Pauli product modulo phase: bitwise XOR of the symplectic vectors.
  friend PauliString operator*(const PauliString& a, const PauliString& b) {
    if (a.n_ != b.n_)
      throw std::invalid_argument("PauliString: size mismatch in product");
    PauliString p(a.n_);
    p.x_ = a.x_ ^ b.x_;
    p.z_ = a.z_ ^ b.z_;
    return p;
  }

 private:
  static int check_size(int n) {
    if (n < 1 || n > 32)
      throw std::invalid_argument("PauliString: size must be in [1, 32]");
    return n;
  }

  uint32_t x_ = 0;
  uint32_t z_ = 0;
  int n_ = kRegisterSize;
};

inline PauliString multiply(const PauliString& a, const PauliString& b) {
  return a * b;
}

/// Symplectic form sp(P,Q) = sum_q P.x[q]Q.z[q] + P.z[q]Q.x[q] mod 2.
inline int symplectic_product(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("PauliString: size mismatch in symplectic form");
  return std::popcount((a.x_bits() & b.z_bits()) ^ (a.z_bits() & b.x_bits())) & 1;
}

inline bool commutes(const PauliString& a, const PauliString& b) {
  return symplectic_product(a, b) == 0;
}

/// H on qubit q: X <-> Z.
inline PauliString conjugate_h(const PauliString& p, int q) {
  uint32_t bit = 1u << q;
  uint32_t xq = p.x_bits() & bit;
  uint32_t zq = p.z_bits() & bit;
  return PauliString::from_bits(p.size(), (p.x_bits() & ~bit) | zq,
                                (p.z_bits() & ~bit) | xq);
}

/// CNOT(c -> t): X_c -> X_c X_t and Z_t -> Z_c Z_t, extended multiplicatively.
inline PauliString conjugate_cnot(const PauliString& p, int c, int t) {
  uint32_t x = p.x_bits() ^ (((p.x_bits() >> c) & 1u) << t);
  uint32_t z = p.z_bits() ^ (((p.z_bits() >> t) & 1u) << c);
  return PauliString::from_bits(p.size(), x, z);
}

/// Controlled Pauli string with control `a` and self-inverse body S:
/// X_a -> X_a S, Z_a -> Z_a, and a body-register Pauli Q picks up Z_a iff it
/// anticommutes with S.
inline PauliString conjugate_cpstring(const PauliString& p, int a,
                                      const PauliString& body) {
  if (body.size() != p.size())
    throw std::invalid_argument("conjugate_cpstring: size mismatch");
  if ((body.support() >> a) & 1u)
    throw std::invalid_argument("conjugate_cpstring: body acts on the control");
  uint32_t x = p.x_bits();
  uint32_t z = p.z_bits();
  if ((p.x_bits() >> a) & 1u) {
    x ^= body.x_bits();
    z ^= body.z_bits();
  }
  if (symplectic_product(p, body)) z ^= 1u << a;
  return PauliString::from_bits(p.size(), x, z);
}

}  // namespace cecsim
