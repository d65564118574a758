#include "cecsim/engine.hpp"

#include <algorithm>

namespace cecsim {

Simulator::Simulator(const Circuit& c) : circuit_(c) {
  validate(circuit_);
  locations_ = enumerate_locations(circuit_);

  std::vector<std::vector<Op>> by_step(circuit_.depth);
  for (const GateOp& g : circuit_.gates) {
    Op op{};
    switch (g.kind) {
      case GateKind::H:
        op.code = Op::kH;
        op.q0 = static_cast<uint8_t>(g.qubits[0]);
        break;
      case GateKind::Cnot:
        op.code = Op::kCnot;
        op.q0 = static_cast<uint8_t>(g.qubits[0]);
        op.q1 = static_cast<uint8_t>(g.qubits[1]);
        break;
      case GateKind::CpString:
        op.code = Op::kCpString;
        op.q0 = static_cast<uint8_t>(g.qubits[0]);
        op.mask_x = g.body.x_bits();
        op.mask_z = g.body.z_bits();
        break;
      case GateKind::CkxClassical:
        op.code = Op::kCkx;
        op.q0 = static_cast<uint8_t>(g.qubits.back());
        for (size_t i = 0; i + 1 < g.qubits.size(); i++)
          op.mask_x |= 1u << g.qubits[i];
        break;
      case GateKind::Prep0:
      case GateKind::Reset:
        op.code = Op::kClear;
        op.q0 = static_cast<uint8_t>(g.qubits[0]);
        break;
    }
    by_step[g.timestep].push_back(op);
  }
  step_offset_.assign(circuit_.depth + 1, 0);
  for (int t = 0; t < circuit_.depth; t++) {
    step_offset_[t + 1] = step_offset_[t] + static_cast<int>(by_step[t].size());
    ops_.insert(ops_.end(), by_step[t].begin(), by_step[t].end());
  }
}

void Simulator::apply_step(int t, Frame& f) const {
  for (int i = step_offset_[t]; i < step_offset_[t + 1]; i++) {
    const Op& op = ops_[i];
    switch (op.code) {
      case Op::kH: {
        uint32_t bit = 1u << op.q0;
        uint32_t xb = f.x & bit, zb = f.z & bit;
        f.x = (f.x & ~bit) | zb;
        f.z = (f.z & ~bit) | xb;
        break;
      }
      case Op::kCnot:
        f.x ^= ((f.x >> op.q0) & 1u) << op.q1;
        f.z ^= ((f.z >> op.q1) & 1u) << op.q0;
        break;
      case Op::kCpString: {
        // Hook: X or Y on the control applies the body to the data register.
        // A frame component anticommuting with the body kicks Z onto the
        // control. Both tests read the pre-gate frame.
        uint32_t sp = std::popcount((f.x & op.mask_z) ^ (f.z & op.mask_x)) & 1u;
        if ((f.x >> op.q0) & 1u) {
          f.x ^= op.mask_x;
          f.z ^= op.mask_z;
        }
        f.z ^= sp << op.q0;
        break;
      }
      case Op::kCkx:
        if ((f.x & op.mask_x) == op.mask_x) f.x ^= 1u << op.q0;
        break;
      case Op::kClear: {
        uint32_t keep = ~(1u << op.q0);
        f.x &= keep;
        f.z &= keep;
        break;
      }
    }
  }
}

RoundOutcome Simulator::classify(Frame f) const {
  const CodeSpec& code = steane_code();
  RoundOutcome out;
  out.residual =
      PauliString::from_bits(kRegisterSize, f.x & kDataMask, f.z & kDataMask);
  PauliString corrected = out.residual * code.ideal_decode(out.residual);
  out.cls = code.logical_class(corrected);
  out.failed = out.cls != LogicalClass::I;
  return out;
}

std::vector<Simulator::CompactFault> Simulator::compact(
    std::span<const FaultEvent> faults) const {
  std::vector<CompactFault> cf;
  cf.reserve(faults.size());
  for (const FaultEvent& e : faults) {
    if (e.location < 0 || e.location >= static_cast<int>(locations_.size()))
      throw std::invalid_argument("run_round: unknown fault location id");
    const FaultLocation& loc = locations_[e.location];
    if (e.pauli.support() & ~loc.support_mask())
      throw std::invalid_argument(
          "run_round: fault acts outside its location support");
    cf.push_back({loc.timestep, e.pauli.x_bits(), e.pauli.z_bits()});
  }
  std::sort(cf.begin(), cf.end(),
            [](const CompactFault& a, const CompactFault& b) {
              return a.timestep < b.timestep;
            });
  return cf;
}

RoundOutcome Simulator::run(std::span<const FaultEvent> faults,
                            const PauliString* inject) const {
  Frame f;
  int start = 0;
  if (inject) {
    if (inject->support() & ~kDataMask)
      throw std::invalid_argument("run_round: inject must act on data qubits");
    f.x = inject->x_bits();
    f.z = inject->z_bits();
  }
  std::vector<CompactFault> cf = compact(faults);
  if (!inject) {
    // The frame stays identity until the first fault lands.
    if (cf.empty()) return classify(f);
    start = cf.front().timestep;
  }
  size_t next = 0;
  for (int t = start; t < circuit_.depth; t++) {
    apply_step(t, f);
    for (; next < cf.size() && cf[next].timestep == t; next++) {
      f.x ^= cf[next].x;
      f.z ^= cf[next].z;
    }
  }
  return classify(f);
}

std::vector<std::pair<int, PauliString>> Simulator::trace(
    std::span<const FaultEvent> faults, const PauliString* inject) const {
  Frame f;
  if (inject) {
    if (inject->support() & ~kDataMask)
      throw std::invalid_argument("trace_round: inject must act on data qubits");
    f.x = inject->x_bits();
    f.z = inject->z_bits();
  }
  std::vector<CompactFault> cf = compact(faults);
  std::vector<std::pair<int, PauliString>> snaps;
  snaps.reserve(circuit_.depth + 1);
  auto snapshot = [&](int t) {
    snaps.emplace_back(t, PauliString::from_bits(kRegisterSize, f.x, f.z));
  };
  snapshot(0);
  size_t next = 0;
  for (int t = 0; t < circuit_.depth; t++) {
    apply_step(t, f);
    for (; next < cf.size() && cf[next].timestep == t; next++) {
      f.x ^= cf[next].x;
      f.z ^= cf[next].z;
    }
    snapshot(t + 1);
  }
  return snaps;
}

}  // namespace cecsim
