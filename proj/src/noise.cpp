#include "cecsim/noise.hpp"

#include <cmath>
#include <unordered_set>

namespace cecsim {

namespace {

// Component codes used for stable option ordering: 1 = X, 2 = Z, 3 = Y.
PauliString component(int n, int qubit, int code) {
  uint32_t bit = 1u << qubit;
  return PauliString::from_bits(n, (code & 1) ? bit : 0, (code & 2) ? bit : 0);
}

bool admissible(const PauliString& p, AncillaChannel ancilla) {
  if (ancilla == AncillaChannel::BitflipOnly && (p.z_bits() & kAncillaMask))
    return false;
  return true;
}

void push_if(std::vector<PauliString>& out, const PauliString& p,
             AncillaChannel ancilla) {
  if (!p.is_identity() && admissible(p, ancilla)) out.push_back(p);
}

// All 4^k - 1 nontrivial Paulis over the location's qubits, counter order.
void full_depolarizing(std::vector<PauliString>& out,
                       const std::vector<int>& qubits, AncillaChannel ancilla) {
  uint64_t n_opts = 1;
  for (size_t i = 0; i < qubits.size(); i++) n_opts *= 4;
  for (uint64_t k = 1; k < n_opts; k++) {
    PauliString p(kRegisterSize);
    uint64_t v = k;
    for (int q : qubits) {
      p = p * component(kRegisterSize, q, static_cast<int>(v & 3));
      v >>= 2;
    }
    push_if(out, p, ancilla);
  }
}

// Faults on the distinguished qubit, one other qubit, or a joint pair:
// 3 + 4*3 + 4*9 = 51 options before the ancilla filter.
void pairwise(std::vector<PauliString>& out, int special,
              const std::vector<int>& others, AncillaChannel ancilla) {
  for (int cs = 1; cs < 4; cs++)
    push_if(out, component(kRegisterSize, special, cs), ancilla);
  for (int other : others) {
    for (int co = 1; co < 4; co++) {
      for (int cs = 0; cs < 4; cs++) {
        PauliString p = component(kRegisterSize, other, co) *
                        component(kRegisterSize, special, cs);
        push_if(out, p, ancilla);
      }
    }
  }
}

std::vector<PauliString> location_options(const FaultLocation& loc,
                                          const ErrorModel& m) {
  std::vector<PauliString> out;
  if (loc.qubits.size() == 1) {
    for (int c = 1; c < 4; c++)
      push_if(out, component(kRegisterSize, loc.qubits[0], c), m.ancilla);
    return out;
  }
  if (loc.kind == LocationKind::Gate && loc.gate_kind == GateKind::Cnot) {
    full_depolarizing(out, loc.qubits, m.ancilla);
    return out;
  }
  if (m.multiqubit == MultiQubitNoise::FullDepolarizing) {
    full_depolarizing(out, loc.qubits, m.ancilla);
    return out;
  }
  // CPSTRING: distinguished qubit is the control; CKX: the data target.
  if (loc.gate_kind == GateKind::CpString) {
    pairwise(out, loc.qubits[0],
             {loc.qubits.begin() + 1, loc.qubits.end()}, m.ancilla);
  } else {
    pairwise(out, loc.qubits.back(),
             {loc.qubits.begin(), loc.qubits.end() - 1}, m.ancilla);
  }
  return out;
}

}  // namespace

NoiseTable::NoiseTable(const Circuit& c, const ErrorModel& m) : circuit_(&c) {
  locations_ = enumerate_locations(c);
  options_.reserve(locations_.size());
  for (const FaultLocation& loc : locations_) {
    options_.push_back(location_options(loc, m));
    total_events_ += options_.back().size();
  }
}

uint64_t NoiseTable::total_pair_events() const {
  uint64_t sum_sq = 0;
  for (const auto& opts : options_) sum_sq += opts.size() * opts.size();
  return (total_events_ * total_events_ - sum_sq) / 2;
}

std::vector<FaultEvent> sample_faults(const NoiseTable& table, double p,
                                      RngStream& rng) {
  std::vector<FaultEvent> faults;
  if (p <= 0.0) return faults;
  size_t n = table.locations().size();
  if (p >= 1.0) {
    for (size_t i = 0; i < n; i++) {
      const auto& opts = table.options(static_cast<int>(i));
      if (opts.empty()) continue;
      faults.push_back({static_cast<int>(i),
                        opts[rng.next_below(static_cast<uint32_t>(opts.size()))]});
    }
    return faults;
  }
  // Geometric skipping: the gap to the next faulty location is exact for a
  // Bernoulli(p) process and costs one draw per fault instead of one per site.
  double log1mp = std::log1p(-p);
  size_t i = 0;
  while (true) {
    double u = 1.0 - rng.next_double();  // (0, 1]
    i += static_cast<size_t>(std::log(u) / log1mp);
    if (i >= n) break;
    const auto& opts = table.options(static_cast<int>(i));
    if (!opts.empty())
      faults.push_back({static_cast<int>(i),
                        opts[rng.next_below(static_cast<uint32_t>(opts.size()))]});
    i++;
  }
  return faults;
}

std::vector<FaultEvent> enumerate_single_faults(const NoiseTable& table) {
  std::vector<FaultEvent> events;
  events.reserve(table.total_single_events());
  for (size_t i = 0; i < table.locations().size(); i++)
    for (const PauliString& p : table.options(static_cast<int>(i)))
      events.push_back({static_cast<int>(i), p});
  return events;
}

void for_each_fault_pair(
    const NoiseTable& table, PairBudget budget, uint64_t seed,
    const std::function<void(const FaultEvent&, const FaultEvent&)>& visit) {
  size_t n_loc = table.locations().size();
  if (budget.all) {
    for (size_t i = 0; i < n_loc; i++) {
      const auto& oi = table.options(static_cast<int>(i));
      if (oi.empty()) continue;
      for (size_t j = i + 1; j < n_loc; j++) {
        const auto& oj = table.options(static_cast<int>(j));
        for (const PauliString& pi : oi)
          for (const PauliString& pj : oj)
            visit({static_cast<int>(i), pi}, {static_cast<int>(j), pj});
      }
    }
    return;
  }

  // Uniform subsample without duplicates over the flattened event-pair space.
  // Events are indexed by location-major offset; a pair is keyed by the two
  // event indices.
  uint64_t total_events = table.total_single_events();
  std::vector<uint64_t> offset(n_loc + 1, 0);
  for (size_t i = 0; i < n_loc; i++)
    offset[i + 1] = offset[i] + table.options(static_cast<int>(i)).size();
  auto event_at = [&](uint64_t idx) -> FaultEvent {
    size_t lo = 0, hi = n_loc;
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      if (offset[mid] <= idx) lo = mid;
      else hi = mid;
    }
    return {static_cast<int>(lo),
            table.options(static_cast<int>(lo))[idx - offset[lo]]};
  };

  uint64_t want = std::min<uint64_t>(budget.sample_size,
                                     table.total_pair_events());
  RngStream rng = shot_stream(seed, 0x70616972);  // independent pair stream
  std::unordered_set<uint64_t> seen;
  uint64_t emitted = 0;
  while (emitted < want) {
    uint64_t a = rng.next() % total_events;
    uint64_t b = rng.next() % total_events;
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    FaultEvent ea = event_at(a), eb = event_at(b);
    if (ea.location == eb.location) continue;
    uint64_t key = a * total_events + b;
    if (!seen.insert(key).second) continue;
    visit(ea, eb);
    emitted++;
  }
}

}  // namespace cecsim
