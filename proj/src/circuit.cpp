#include "cecsim/circuit.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

#include "cecsim/steane.hpp"

namespace cecsim {

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Prep0:
      return "PREP0";
    case GateKind::H:
      return "H";
    case GateKind::Cnot:
      return "CNOT";
    case GateKind::CpString:
      return "CPSTRING";
    case GateKind::CkxClassical:
      return "CKX_CLASSICAL";
    case GateKind::Reset:
      return "RESET";
  }
  return "?";
}

const char* to_string(CircuitLabel label) {
  switch (label) {
    case CircuitLabel::Fig1:
      return "FIG1";
    case CircuitLabel::Fig2:
      return "FIG2";
    case CircuitLabel::Custom:
      return "CUSTOM";
  }
  return "?";
}

namespace {

constexpr int ancilla_of(int stab) { return kNumData + stab; }

// Greedy ASAP list scheduler: each gate lands on the earliest timestep where
// all its qubits are free, processing gates in emission order. barrier()
// synchronizes all qubits, so every quarter starts on a common timestep.
class ScheduleBuilder {
 public:
  void add(GateKind kind, std::vector<int> qubits,
           PauliString body = PauliString(kRegisterSize)) {
    GateOp op{kind, std::move(qubits), std::move(body), 0, stage_};
    int t = 0;
    for (int q : op.qubits) t = std::max(t, next_free_[q]);
    for (int q : op.qubits) next_free_[q] = t + 1;
    op.timestep = t;
    gates_.push_back(std::move(op));
  }

  void barrier() {
    int t = depth();
    next_free_.fill(t);
    stage_ends_.push_back(t);
    stage_++;
  }

  int depth() const {
    return *std::max_element(next_free_.begin(), next_free_.end());
  }

  Circuit finish(CircuitLabel label) {
    Circuit c;
    c.label = label;
    c.depth = depth();
    if (stage_ends_.empty() || stage_ends_.back() != c.depth)
      stage_ends_.push_back(c.depth);
    c.stage_ends = std::move(stage_ends_);
    std::stable_sort(gates_.begin(), gates_.end(),
                     [](const GateOp& a, const GateOp& b) {
                       return a.timestep < b.timestep;
                     });
    c.gates = std::move(gates_);
    return c;
  }

 private:
  std::array<int, kRegisterSize> next_free_{};
  std::vector<GateOp> gates_;
  std::vector<int> stage_ends_;
  int stage_ = 0;
};

std::vector<int> support_qubits(uint32_t mask) {
  std::vector<int> qs;
  for (int q = 0; q < kRegisterSize; q++)
    if ((mask >> q) & 1u) qs.push_back(q);
  return qs;
}

// Exact-match correction: flip data qubit q iff all 4 ancillas holding a
// stabilizer that contains q are set. Any two data qubits share exactly two
// stabilizers, so one stray ancilla flip can never complete a foreign pattern.
void emit_corrections(ScheduleBuilder& b, const CodeSpec& code) {
  for (int q = 0; q < kNumData; q++) {
    std::vector<int> qubits;
    for (int i : code.support_table[q]) qubits.push_back(ancilla_of(i));
    qubits.push_back(q);
    b.add(GateKind::CkxClassical, std::move(qubits));
  }
}

void emit_resets(ScheduleBuilder& b) {
  for (int i = 0; i < kNumAncilla; i++)
    b.add(GateKind::Reset, {ancilla_of(i)});
}

void emit_transversal_h(ScheduleBuilder& b) {
  for (int q = 0; q < kNumData; q++) b.add(GateKind::H, {q});
}

// One extraction quarter of the CNOT circuit: per stabilizer, a fresh ancilla
// targeted by one CNOT from each support qubit.
void emit_cnot_extraction(ScheduleBuilder& b, const CodeSpec& code) {
  for (int i = 0; i < 7; i++) {
    int a = ancilla_of(i);
    b.add(GateKind::Prep0, {a});
    for (int q : support_qubits(code.redundant_support[i]))
      b.add(GateKind::Cnot, {q, a});
  }
}

// One extraction quarter of the single-step circuit: PREP0, H, controlled
// stabilizer string, H per ancilla. The string is the only gate touching data.
void emit_kickback_extraction(ScheduleBuilder& b, const CodeSpec& code) {
  for (int i = 0; i < 7; i++) {
    int a = ancilla_of(i);
    b.add(GateKind::Prep0, {a});
    b.add(GateKind::H, {a});
    std::vector<int> qubits{a};
    for (int q : support_qubits(code.redundant_support[i])) qubits.push_back(q);
    b.add(GateKind::CpString, std::move(qubits), code.z_redundant[i]);
    b.add(GateKind::H, {a});
  }
}

template <typename ExtractFn>
Circuit build_round(CircuitLabel label, ExtractFn extract) {
  const CodeSpec& code = steane_code();
  ScheduleBuilder b;
  // Quarter 1: extract bit-flip syndromes. Quarter 2: correct them.
  extract(b, code);
  b.barrier();
  emit_corrections(b, code);
  emit_resets(b);
  b.barrier();
  // Quarters 3-4: rotate phase errors into bit flips, repeat, rotate back.
  emit_transversal_h(b);
  extract(b, code);
  b.barrier();
  emit_corrections(b, code);
  emit_transversal_h(b);
  emit_resets(b);
  b.barrier();
  Circuit c = b.finish(label);
  validate(c);
  return c;
}

}  // namespace

Circuit build_fig1() {
  return build_round(CircuitLabel::Fig1, emit_cnot_extraction);
}

Circuit build_fig2() {
  return build_round(CircuitLabel::Fig2, emit_kickback_extraction);
}

void validate(const Circuit& c) {
  std::vector<uint32_t> booked(c.depth, 0);
  for (const GateOp& g : c.gates) {
    size_t arity = g.qubits.size();
    bool ok = true;
    switch (g.kind) {
      case GateKind::Prep0:
      case GateKind::H:
      case GateKind::Reset:
        ok = arity == 1;
        break;
      case GateKind::Cnot:
        ok = arity == 2 && g.qubits[0] != g.qubits[1];
        break;
      case GateKind::CpString:
        ok = arity >= 2 && !g.body.is_identity() &&
             g.support_mask() == ((1u << g.qubits[0]) | g.body.support());
        break;
      case GateKind::CkxClassical:
        ok = arity == 5;
        break;
    }
    if (g.kind != GateKind::CpString && !g.body.is_identity()) ok = false;
    if (!ok)
      throw std::invalid_argument(std::string("validate: malformed ") +
                                  to_string(g.kind) + " gate");
    for (int q : g.qubits)
      if (q < 0 || q >= c.n())
        throw std::invalid_argument("validate: qubit out of range");
    if (g.timestep < 0 || g.timestep >= c.depth)
      throw std::invalid_argument("validate: timestep out of range");
    uint32_t m = g.support_mask();
    if (booked[g.timestep] & m)
      throw std::invalid_argument("validate: qubit double-booked at t=" +
                                  std::to_string(g.timestep));
    booked[g.timestep] |= m;
  }
}

std::vector<FaultLocation> enumerate_locations(const Circuit& c) {
  std::vector<FaultLocation> locs;
  std::vector<std::vector<int>> by_step(c.depth);
  for (size_t i = 0; i < c.gates.size(); i++)
    by_step[c.gates[i].timestep].push_back(static_cast<int>(i));
  for (int t = 0; t < c.depth; t++) {
    uint32_t covered = 0;
    for (int gi : by_step[t]) {
      const GateOp& g = c.gates[gi];
      FaultLocation loc;
      loc.id = static_cast<int>(locs.size());
      loc.kind = LocationKind::Gate;
      loc.timestep = t;
      loc.qubits = g.qubits;
      loc.gate_kind = g.kind;
      loc.gate_index = gi;
      covered |= g.support_mask();
      locs.push_back(std::move(loc));
    }
    for (int q = 0; q < c.n(); q++) {
      if ((covered >> q) & 1u) continue;
      FaultLocation loc;
      loc.id = static_cast<int>(locs.size());
      loc.kind = LocationKind::Idle;
      loc.timestep = t;
      loc.qubits = {q};
      locs.push_back(std::move(loc));
    }
  }
  return locs;
}

std::string export_text(const Circuit& c) {
  std::string out = "# circuit=";
  out += to_string(c.label);
  out += '\n';
  for (const GateOp& g : c.gates) {
    out += "t=" + std::to_string(g.timestep) + " " + to_string(g.kind);
    for (int q : g.qubits) out += " " + std::to_string(q + 1);
    if (g.kind == GateKind::CpString) out += " body=" + g.body.label();
    out += '\n';
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& tok,
                             const std::string& why) {
  throw std::runtime_error("circuit text line " + std::to_string(line) + ": " +
                           why + " at '" + tok + "'");
}

}  // namespace

Circuit import_text(std::string_view text) {
  Circuit c;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto pos = line.find("circuit=");
      if (pos != std::string::npos) {
        std::string name = line.substr(pos + 8);
        if (name == "FIG1") c.label = CircuitLabel::Fig1;
        else if (name == "FIG2") c.label = CircuitLabel::Fig2;
        else c.label = CircuitLabel::Custom;
      }
      continue;
    }
    std::istringstream ls(line);
    std::string tok;
    GateOp g;
    if (!(ls >> tok) || tok.rfind("t=", 0) != 0)
      parse_fail(lineno, tok, "expected t=<step>");
    try {
      g.timestep = std::stoi(tok.substr(2));
    } catch (const std::exception&) {
      parse_fail(lineno, tok, "bad timestep");
    }
    if (g.timestep < 0) parse_fail(lineno, tok, "bad timestep");
    if (!(ls >> tok)) parse_fail(lineno, tok, "missing gate kind");
    if (tok == "PREP0") g.kind = GateKind::Prep0;
    else if (tok == "H") g.kind = GateKind::H;
    else if (tok == "CNOT") g.kind = GateKind::Cnot;
    else if (tok == "CPSTRING") g.kind = GateKind::CpString;
    else if (tok == "CKX_CLASSICAL") g.kind = GateKind::CkxClassical;
    else if (tok == "RESET") g.kind = GateKind::Reset;
    else parse_fail(lineno, tok, "unknown gate kind");
    std::string body_literal;
    while (ls >> tok) {
      if (tok.rfind("body=", 0) == 0) {
        body_literal = tok.substr(5);
        continue;
      }
      int q;
      try {
        q = std::stoi(tok);
      } catch (const std::exception&) {
        parse_fail(lineno, tok, "bad qubit index");
      }
      if (q < 1 || q > kRegisterSize) parse_fail(lineno, tok, "qubit out of range");
      g.qubits.push_back(q - 1);
    }
    if (g.kind == GateKind::CpString) {
      if (body_literal.empty()) parse_fail(lineno, line, "CPSTRING needs body=");
      try {
        g.body = PauliString::from_label(kRegisterSize, body_literal);
      } catch (const std::exception& e) {
        parse_fail(lineno, body_literal, e.what());
      }
    } else if (!body_literal.empty()) {
      parse_fail(lineno, body_literal, "body= only valid for CPSTRING");
    }
    c.depth = std::max(c.depth, g.timestep + 1);
    c.gates.push_back(std::move(g));
  }
  std::stable_sort(c.gates.begin(), c.gates.end(),
                   [](const GateOp& a, const GateOp& b) {
                     return a.timestep < b.timestep;
                   });
  validate(c);
  return c;
}

PauliString conjugate_through(const PauliString& p, const GateOp& g) {
  switch (g.kind) {
    case GateKind::H:
      return conjugate_h(p, g.qubits[0]);
    case GateKind::Cnot:
      return conjugate_cnot(p, g.qubits[0], g.qubits[1]);
    case GateKind::CpString:
      return conjugate_cpstring(p, g.qubits[0], g.body);
    default:
      throw std::invalid_argument(
          std::string("conjugate_through: unsupported gate ") +
          to_string(g.kind));
  }
}

}  // namespace cecsim
