// Command-line front end: build and export circuits, trace fault propagation,
// and run census / Monte Carlo / threshold experiments to CSV or JSON.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cecsim/analysis.hpp"

using namespace cecsim;
using nlohmann::json;

namespace {

struct CommonOpts {
  std::string circuit = "fig1";
  std::string model = "full";
  std::string multiqubit = "pairwise";
  std::vector<double> grid;
  uint64_t shots = 1000000;
  uint64_t seed = 0;
  int workers = 0;
  std::string out;
  std::string format = "csv";
};

void add_circuit_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--circuit", o.circuit, "Circuit to run")
      ->check(CLI::IsMember({"fig1", "fig2"}));
}

void add_model_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--model", o.model, "Ancilla error channel")
      ->check(CLI::IsMember({"full", "bitflip-ancilla"}));
  cmd->add_option("--multiqubit", o.multiqubit,
                  "Noise on 5-qubit gates (pairwise matches the physical "
                  "joint data-ancilla errors; full-depolarizing is a "
                  "sensitivity check)")
      ->check(CLI::IsMember({"pairwise", "full-depolarizing"}));
}

void add_run_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--p", o.grid,
                  "Physical error rate; repeat for a grid (default "
                  "1e-4,2e-4,3e-4,5e-4,7e-4,1e-3)");
  cmd->add_option("--shots", o.shots, "Shots per grid point");
  cmd->add_option("--seed", o.seed, "Base RNG seed");
  cmd->add_option("--workers", o.workers,
                  "Worker threads (0 = $CECSIM_WORKERS or all cores)");
  cmd->add_option("--out", o.out, "Output path (default stdout)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

Circuit make_circuit(const CommonOpts& o) {
  return o.circuit == "fig2" ? build_fig2() : build_fig1();
}

ErrorModel make_model(const CommonOpts& o) {
  ErrorModel m;
  m.ancilla = o.model == "bitflip-ancilla" ? AncillaChannel::BitflipOnly
                                           : AncillaChannel::Full;
  m.multiqubit = o.multiqubit == "full-depolarizing"
                     ? MultiQubitNoise::FullDepolarizing
                     : MultiQubitNoise::Pairwise;
  return m;
}

int resolve_workers(const CommonOpts& o) {
  if (o.workers > 0) return o.workers;
  if (const char* env = std::getenv("CECSIM_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // analysis layer falls back to hardware concurrency
}

std::vector<double> resolve_grid(const CommonOpts& o, bool require_ascending) {
  std::vector<double> grid = o.grid;
  if (grid.empty()) grid = {1e-4, 2e-4, 3e-4, 5e-4, 7e-4, 1e-3};
  if (require_ascending) {
    for (size_t i = 0; i < grid.size(); i++) {
      if (grid[i] <= 0.0)
        throw CLI::ValidationError("--p", "grid values must be positive");
      if (i > 0 && grid[i] <= grid[i - 1])
        throw CLI::ValidationError("--p", "grid must be strictly ascending");
    }
  }
  return grid;
}

void write_output(const CommonOpts& o, const std::string& payload) {
  if (o.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + o.out);
  f << payload;
  if (!f.good()) throw std::runtime_error("failed writing output: " + o.out);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

json row_json(const CommonOpts& o, const RateEstimate& e) {
  return json{{"circuit", o.circuit}, {"model", o.model},
              {"p", e.p},             {"shots", e.shots},
              {"failures", e.failures}, {"p_log", e.p_log},
              {"ci_low", e.ci_low},   {"ci_high", e.ci_high},
              {"seed", o.seed}};
}

std::string rows_csv(const CommonOpts& o, const std::vector<RateEstimate>& rows) {
  std::string out = "circuit,model,p,shots,failures,p_log,ci_low,ci_high,seed\n";
  for (const RateEstimate& e : rows) {
    out += o.circuit + "," + o.model + "," + fmt_double(e.p) + "," +
           std::to_string(e.shots) + "," + std::to_string(e.failures) + "," +
           fmt_double(e.p_log) + "," + fmt_double(e.ci_low) + "," +
           fmt_double(e.ci_high) + "," + std::to_string(o.seed) + "\n";
  }
  return out;
}

std::vector<RateEstimate> run_points(const CommonOpts& o,
                                     const std::vector<double>& grid) {
  Circuit c = make_circuit(o);
  ErrorModel m = make_model(o);
  int workers = resolve_workers(o);
  std::vector<RateEstimate> rows;
  for (double p : grid)
    rows.push_back(estimate_rate(c, m, p, o.shots, o.seed, workers));
  return rows;
}

int cmd_simulate(const CommonOpts& o) {
  std::vector<double> grid = o.grid.empty()
                                 ? std::vector<double>{1e-4, 2e-4, 3e-4,
                                                       5e-4, 7e-4, 1e-3}
                                 : o.grid;
  for (double p : grid)
    if (p < 0.0) throw CLI::ValidationError("--p", "rates must be >= 0");
  std::vector<RateEstimate> rows = run_points(o, grid);
  if (o.format == "json") {
    json arr = json::array();
    for (const RateEstimate& e : rows) arr.push_back(row_json(o, e));
    write_output(o, arr.dump(2) + "\n");
  } else {
    write_output(o, rows_csv(o, rows));
  }
  return 0;
}

int cmd_census(const CommonOpts& o) {
  Circuit c = make_circuit(o);
  FaultCensus census = fault_census(c, make_model(o));
  auto locs = enumerate_locations(c);

  json malignant_locations = json::array();
  for (const LocationCensus& lc : census.per_location) {
    if (lc.malignant == 0) continue;
    const FaultLocation& loc = locs[lc.location];
    json j{{"id", lc.location},
           {"kind", loc.kind == LocationKind::Gate ? "GATE" : "IDLE"},
           {"timestep", loc.timestep},
           {"malignant", lc.malignant},
           {"admissible", lc.admissible},
           {"fraction", lc.fraction()}};
    json qubits = json::array();
    for (int q : loc.qubits) qubits.push_back(q + 1);
    j["qubits"] = qubits;
    if (loc.kind == LocationKind::Gate) j["gate"] = to_string(loc.gate_kind);
    malignant_locations.push_back(j);
  }
  json malignant_events = json::array();
  for (const FaultEvent& e : census.malignant_events)
    malignant_events.push_back(
        json{{"location", e.location}, {"pauli", e.pauli.label()}});

  json report{{"circuit", o.circuit},
              {"model", o.model},
              {"multiqubit", o.multiqubit},
              {"A", census.linear_coeff},
              {"A_from_counts", census.linear_coeff_counts},
              {"N_m", census.n_malignant_memory},
              {"N_g", census.n_malignant_cnot},
              {"N_g_windows", census.n_malignant_cnot_windows},
              {"N_multi", census.n_malignant_multi},
              {"malignant_locations", malignant_locations},
              {"malignant_events", malignant_events}};
  write_output(o, report.dump(2) + "\n");
  return 0;
}

int cmd_threshold(const CommonOpts& o) {
  std::vector<double> grid = resolve_grid(o, true);
  if (grid.size() < 3)
    throw CLI::ValidationError("--p", "threshold needs at least 3 grid points");
  std::vector<RateEstimate> rows = run_points(o, grid);
  FitResult fit = fit_and_threshold(rows);
  json points = json::array();
  for (const RateEstimate& e : rows) points.push_back(row_json(o, e));
  json report{{"circuit", o.circuit},
              {"model", o.model},
              {"A", fit.a},
              {"B", fit.b},
              {"threshold", fit.threshold ? json(*fit.threshold) : json()},
              {"points", points}};
  write_output(o, report.dump(2) + "\n");
  return 0;
}

struct TraceOpts {
  CommonOpts common;
  std::vector<std::string> faults;
  std::string inject;
};

int cmd_trace(const TraceOpts& t) {
  Circuit c = make_circuit(t.common);
  Simulator sim(c);
  std::vector<FaultEvent> events;
  for (const std::string& spec : t.faults) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--fault",
                                 "expected <location-id>:<pauli-literal>");
    int id = -1;
    try {
      id = std::stoi(spec.substr(0, colon));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--fault", "bad location id in '" + spec + "'");
    }
    if (id < 0 || id >= static_cast<int>(sim.locations().size())) {
      std::cerr << "unknown location id " << id << "; run `cecsim circuit "
                << "locations --circuit " << t.common.circuit
                << "` to list valid ids\n";
      return 2;
    }
    PauliString pauli =
        PauliString::from_label(kRegisterSize, spec.substr(colon + 1));
    if (pauli.support() & ~sim.locations()[id].support_mask())
      throw CLI::ValidationError("--fault", "pauli outside location support");
    events.push_back({id, pauli});
  }
  std::sort(events.begin(), events.end(),
            [](const FaultEvent& a, const FaultEvent& b) {
              return a.location < b.location;
            });
  std::optional<PauliString> inject;
  if (!t.inject.empty())
    inject = PauliString::from_label(kRegisterSize, t.inject);

  std::string out;
  auto snaps = sim.trace(events, inject ? &*inject : nullptr);
  for (auto& [step, frame] : snaps)
    out += "t=" + std::to_string(step) + " frame=" + frame.label() + "\n";
  RoundOutcome result = sim.run(events, inject ? &*inject : nullptr);
  out += "residual=" + result.residual.label() + "\n";
  out += std::string("class=") + to_string(result.cls) + "\n";
  write_output(t.common, out);
  return 0;
}

int cmd_circuit(const CommonOpts& o, const std::string& action) {
  Circuit c = make_circuit(o);
  if (action == "export") {
    write_output(o, export_text(c));
    return 0;
  }
  if (action == "locations") {
    auto locs = enumerate_locations(c);
    std::string out = "id kind timestep qubits gate\n";
    for (const FaultLocation& loc : locs) {
      out += std::to_string(loc.id) + " ";
      out += loc.kind == LocationKind::Gate ? "GATE" : "IDLE";
      out += " " + std::to_string(loc.timestep) + " ";
      for (size_t i = 0; i < loc.qubits.size(); i++)
        out += (i ? "," : "") + std::to_string(loc.qubits[i] + 1);
      out += " ";
      out += loc.kind == LocationKind::Gate ? to_string(loc.gate_kind) : "-";
      out += "\n";
    }
    write_output(o, out);
    return 0;
  }
  // stats
  int counts[6] = {0, 0, 0, 0, 0, 0};
  for (const GateOp& g : c.gates) counts[static_cast<int>(g.kind)]++;
  auto locs = enumerate_locations(c);
  int idle = 0;
  for (const FaultLocation& loc : locs)
    if (loc.kind == LocationKind::Idle) idle++;
  std::string out = "circuit=" + std::string(to_string(c.label)) +
                    " depth=" + std::to_string(c.depth) + "\n";
  out += "gates total=" + std::to_string(c.gates.size()) +
         " prep0=" + std::to_string(counts[static_cast<int>(GateKind::Prep0)]) +
         " h=" + std::to_string(counts[static_cast<int>(GateKind::H)]) +
         " cnot=" + std::to_string(counts[static_cast<int>(GateKind::Cnot)]) +
         " cpstring=" +
         std::to_string(counts[static_cast<int>(GateKind::CpString)]) +
         " ckx=" +
         std::to_string(counts[static_cast<int>(GateKind::CkxClassical)]) +
         " reset=" + std::to_string(counts[static_cast<int>(GateKind::Reset)]) +
         "\n";
  out += "locations total=" + std::to_string(locs.size()) +
         " gate=" + std::to_string(locs.size() - idle) +
         " idle=" + std::to_string(idle) + "\n";
  out += "quarter_ends=";
  for (size_t i = 0; i < c.stage_ends.size(); i++)
    out += (i ? "," : "") + std::to_string(c.stage_ends[i]);
  out += "\n";
  write_output(o, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fault-propagation simulator for measurement-free error "
               "correction on the Steane code"};
  app.require_subcommand(1);

  CommonOpts sim_opts;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo logical error rates over a p-grid");
  add_circuit_flags(simulate, sim_opts);
  add_model_flags(simulate, sim_opts);
  add_run_flags(simulate, sim_opts);

  CommonOpts census_opts;
  census_opts.format = "json";
  CLI::App* census = app.add_subcommand(
      "census", "Exhaustive single-fault census and linear coefficient");
  add_circuit_flags(census, census_opts);
  add_model_flags(census, census_opts);
  census->add_option("--out", census_opts.out, "Output path (default stdout)");

  CommonOpts thr_opts;
  thr_opts.format = "json";
  CLI::App* threshold = app.add_subcommand(
      "threshold", "Fit p_log = A p + B p^2 over a grid and invert");
  add_circuit_flags(threshold, thr_opts);
  add_model_flags(threshold, thr_opts);
  add_run_flags(threshold, thr_opts);

  TraceOpts trace_opts;
  CLI::App* trace = app.add_subcommand(
      "trace", "Propagate specific faults and print per-step frames");
  add_circuit_flags(trace, trace_opts.common);
  trace->add_option("--fault", trace_opts.faults,
                    "<location-id>:<pauli-literal>, repeatable");
  trace->add_option("--inject", trace_opts.inject,
                    "Pre-round data error literal, e.g. X3");
  trace->add_option("--out", trace_opts.common.out, "Output path");

  CommonOpts circ_opts;
  CLI::App* circuit = app.add_subcommand(
      "circuit", "Inspect a circuit: export, locations, stats");
  std::string action;
  circuit->add_option("action", action, "export | locations | stats")
      ->required()
      ->check(CLI::IsMember({"export", "locations", "stats"}));
  add_circuit_flags(circuit, circ_opts);
  circuit->add_option("--out", circ_opts.out, "Output path");

  try {
    app.parse(argc, argv);
    if (simulate->parsed()) return cmd_simulate(sim_opts);
    if (census->parsed()) return cmd_census(census_opts);
    if (threshold->parsed()) return cmd_threshold(thr_opts);
    if (trace->parsed()) return cmd_trace(trace_opts);
    if (circuit->parsed()) return cmd_circuit(circ_opts, action);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
