#include "cecsim/analysis.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <set>
#include <thread>

namespace cecsim {

namespace {

constexpr double kZ95 = 1.959963984540054;

int clamp_workers(int workers) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (workers < 1) workers = hw;
  return std::min(workers, 256);
}

}  // namespace

RateEstimate wilson_estimate(double p, uint64_t shots, uint64_t failures) {
  if (shots == 0) throw std::invalid_argument("wilson_estimate: zero shots");
  RateEstimate est;
  est.p = p;
  est.shots = shots;
  est.failures = failures;
  double n = static_cast<double>(shots);
  double phat = static_cast<double>(failures) / n;
  est.p_log = phat;
  double z2 = kZ95 * kZ95;
  double denom = 1.0 + z2 / n;
  double center = (phat + z2 / (2.0 * n)) / denom;
  double half =
      kZ95 / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  est.ci_low = std::max(0.0, center - half);
  est.ci_high = std::min(1.0, center + half);
  return est;
}

RateEstimate estimate_rate(const Circuit& c, const ErrorModel& m, double p,
                           uint64_t shots, uint64_t seed, int workers) {
  if (shots < 1) throw std::invalid_argument("estimate_rate: need shots >= 1");
  if (p <= 0.0) return wilson_estimate(p, shots, 0);

  NoiseTable table(c, m);
  Simulator sim(c);
  int n_workers = clamp_workers(workers);

  std::vector<uint64_t> fails(n_workers, 0);
  auto body = [&](int w) {
    uint64_t lo = shots * w / n_workers;
    uint64_t hi = shots * (w + 1) / n_workers;
    uint64_t count = 0;
    for (uint64_t shot = lo; shot < hi; shot++) {
      RngStream rng = shot_stream(seed, shot);
      std::vector<FaultEvent> faults = sample_faults(table, p, rng);
      // A faultless shot cannot fail: the noiseless round is the reference.
      if (faults.empty()) continue;
      if (sim.run(faults).failed) count++;
    }
    fails[w] = count;
  };
  if (n_workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; w++) pool.emplace_back(body, w);
    for (auto& th : pool) th.join();
  }
  uint64_t failures = 0;
  for (uint64_t f : fails) failures += f;
  return wilson_estimate(p, shots, failures);
}

FaultCensus fault_census(const Circuit& c, const ErrorModel& m) {
  NoiseTable table(c, m);
  Simulator sim(c);
  FaultCensus census;
  census.per_location.reserve(table.locations().size());
  auto quarter_of = [&](int timestep) {
    for (size_t q = 0; q < c.stage_ends.size(); q++)
      if (timestep < c.stage_ends[q]) return static_cast<int>(q);
    return 0;
  };
  std::set<std::pair<int, int>> cnot_windows;  // (target qubit, quarter)
  for (size_t i = 0; i < table.locations().size(); i++) {
    const FaultLocation& loc = table.locations()[i];
    const auto& opts = table.options(static_cast<int>(i));
    LocationCensus lc;
    lc.location = static_cast<int>(i);
    lc.admissible = static_cast<int>(opts.size());
    for (const PauliString& pauli : opts) {
      FaultEvent event{static_cast<int>(i), pauli};
      if (sim.run({&event, 1}).failed) {
        lc.malignant++;
        census.malignant_events.push_back(event);
      }
    }
    if (lc.malignant > 0) {
      bool one_qubit = loc.qubits.size() == 1;
      bool cnot =
          loc.kind == LocationKind::Gate && loc.gate_kind == GateKind::Cnot;
      if (one_qubit) {
        census.n_malignant_memory++;
      } else if (cnot) {
        census.n_malignant_cnot++;
        cnot_windows.insert({loc.qubits[1], quarter_of(loc.timestep)});
      } else {
        census.n_malignant_multi++;
      }
    }
    census.linear_coeff += lc.fraction();
    census.per_location.push_back(lc);
  }
  census.n_malignant_cnot_windows = static_cast<int>(cnot_windows.size());
  census.linear_coeff_counts =
      census.n_malignant_memory * (2.0 / 3.0) +
      census.n_malignant_cnot_windows * (8.0 / 15.0);
  return census;
}

QuadraticCoeff quadratic_coeff(const Circuit& c, const ErrorModel& m,
                               PairBudget budget, uint64_t seed, int workers) {
  NoiseTable table(c, m);
  Simulator sim(c);
  QuadraticCoeff out;
  out.pairs_total = table.total_pair_events();

  size_t n_loc = table.locations().size();

  if (budget.all) {
    // Malignant pair counts bucketed by the option-count pair of the two
    // locations. Integer buckets merged in a canonical order keep the result
    // bitwise identical for any worker count.
    using Bucket = std::map<std::pair<int, int>, uint64_t>;
    int n_workers = clamp_workers(workers);
    std::vector<Bucket> buckets(n_workers);
    std::atomic<size_t> cursor{0};
    auto body = [&](int w) {
      std::array<FaultEvent, 2> pair;
      for (;;) {
        size_t i = cursor.fetch_add(1);
        if (i >= n_loc) break;
        const auto& oi = table.options(static_cast<int>(i));
        if (oi.empty()) continue;
        for (size_t j = i + 1; j < n_loc; j++) {
          const auto& oj = table.options(static_cast<int>(j));
          if (oj.empty()) continue;
          uint64_t malignant = 0;
          for (const PauliString& pi : oi) {
            pair[0] = {static_cast<int>(i), pi};
            for (const PauliString& pj : oj) {
              pair[1] = {static_cast<int>(j), pj};
              if (sim.run({pair.data(), 2}).failed) malignant++;
            }
          }
          if (malignant)
            buckets[w][{static_cast<int>(oi.size()),
                        static_cast<int>(oj.size())}] += malignant;
        }
      }
    };
    if (n_workers == 1) {
      body(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < n_workers; w++) pool.emplace_back(body, w);
      for (auto& th : pool) th.join();
    }
    Bucket merged;
    for (const Bucket& b : buckets)
      for (const auto& [key, count] : b) merged[key] += count;
    double b_coeff = 0.0;
    uint64_t evaluated = 0;
    for (const auto& [key, count] : merged) {
      b_coeff += static_cast<double>(count) /
                 (static_cast<double>(key.first) * key.second);
    }
    for (size_t i = 0; i < n_loc; i++) {
      uint64_t ni = table.options(static_cast<int>(i)).size();
      for (size_t j = i + 1; j < n_loc; j++)
        evaluated += ni * table.options(static_cast<int>(j)).size();
    }
    out.b = b_coeff;
    out.ci_low = b_coeff;
    out.ci_high = b_coeff;
    out.exact = true;
    out.pairs_evaluated = evaluated;
    return out;
  }

  // Uniform event-pair subsample: B = total_pairs * mean(weighted indicator).
  double sum = 0.0, sum_sq = 0.0;
  uint64_t count = 0;
  for_each_fault_pair(table, budget, seed,
                      [&](const FaultEvent& a, const FaultEvent& b) {
                        std::array<FaultEvent, 2> pair{a, b};
                        double y = 0.0;
                        if (sim.run({pair.data(), 2}).failed) {
                          double na = table.options(a.location).size();
                          double nb = table.options(b.location).size();
                          y = static_cast<double>(out.pairs_total) / (na * nb);
                        }
                        sum += y;
                        sum_sq += y * y;
                        count++;
                      });
  if (count == 0) throw std::invalid_argument("quadratic_coeff: empty budget");
  double mean = sum / count;
  double var = count > 1 ? (sum_sq - sum * mean) / (count - 1) : 0.0;
  double half = kZ95 * std::sqrt(std::max(0.0, var) / count);
  out.b = mean;
  out.ci_low = mean - half;
  out.ci_high = mean + half;
  out.exact = false;
  out.pairs_evaluated = count;
  return out;
}

FitResult fit_and_threshold(std::span<const RateEstimate> points) {
  if (points.size() < 3)
    throw std::invalid_argument("fit_and_threshold: need at least 3 points");
  double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
  for (const RateEstimate& pt : points) {
    double sigma = (pt.ci_high - pt.ci_low) / (2.0 * kZ95);
    double w = 1.0 / std::max(sigma * sigma, 1e-30);
    double x = pt.p;
    s11 += w * x * x;
    s12 += w * x * x * x;
    s22 += w * x * x * x * x;
    b1 += w * x * pt.p_log;
    b2 += w * x * x * pt.p_log;
  }
  double det = s11 * s22 - s12 * s12;
  if (!(std::abs(det) > 1e-12 * std::max(s11 * s22, s12 * s12)))
    throw std::invalid_argument("fit_and_threshold: degenerate design matrix");
  FitResult fit;
  fit.a = (b1 * s22 - b2 * s12) / det;
  fit.b = (s11 * b2 - s12 * b1) / det;
  if (fit.a < 0.0) {
    fit.a = 0.0;
    fit.b = s22 > 0 ? std::max(0.0, b2 / s22) : 0.0;
  } else if (fit.b < 0.0) {
    fit.b = 0.0;
    fit.a = s11 > 0 ? std::max(0.0, b1 / s11) : 0.0;
  }
  if (fit.a < 1.0 && fit.b > 0.0) fit.threshold = (1.0 - fit.a) / fit.b;
  return fit;
}

}  // namespace cecsim
