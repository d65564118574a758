#include "cecsim/pauli.hpp"

#include <cctype>

namespace cecsim {

PauliString PauliString::single(int n, int q, char pauli) {
  if (q < 0 || q >= n)
    throw std::invalid_argument("PauliString: qubit out of range");
  uint32_t bit = 1u << q;
  switch (pauli) {
    case 'X':
      return from_bits(n, bit, 0);
    case 'Z':
      return from_bits(n, 0, bit);
    case 'Y':
      return from_bits(n, bit, bit);
    default:
      throw std::invalid_argument(std::string("PauliString: bad letter '") +
                                  pauli + "'");
  }
}

PauliString PauliString::from_label(int n, std::string_view label) {
  if (label.empty())
    throw std::invalid_argument("PauliString: empty literal");
  if (label == "I") return identity(n);
  PauliString p(n);
  size_t pos = 0;
  while (pos < label.size()) {
    size_t dot = label.find('.', pos);
    std::string_view tok =
        label.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
    if (tok.size() < 2)
      throw std::invalid_argument("PauliString: bad token '" +
                                  std::string(tok) + "'");
    char letter = tok[0];
    int q = 0;
    for (size_t i = 1; i < tok.size(); i++) {
      if (!std::isdigit(static_cast<unsigned char>(tok[i])))
        throw std::invalid_argument("PauliString: bad token '" +
                                    std::string(tok) + "'");
      q = q * 10 + (tok[i] - '0');
    }
    if (q < 1 || q > n)
      throw std::invalid_argument("PauliString: qubit out of range in '" +
                                  std::string(tok) + "'");
    if ((p.support() >> (q - 1)) & 1u)
      throw std::invalid_argument("PauliString: duplicate qubit in '" +
                                  std::string(label) + "'");
    p = p * single(n, q - 1, letter);
    pos = dot == std::string_view::npos ? label.size() : dot + 1;
  }
  return p;
}

std::string PauliString::label() const {
  if (is_identity()) return "I";
  std::string out;
  for (int q = 0; q < n_; q++) {
    bool xb = x(q), zb = z(q);
    if (!xb && !zb) continue;
    if (!out.empty()) out += '.';
    out += xb && zb ? 'Y' : (xb ? 'X' : 'Z');
    out += std::to_string(q + 1);
  }
  return out;
}

}  // namespace cecsim
