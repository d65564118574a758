#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "cecsim/analysis.hpp"

namespace py = pybind11;
using namespace cecsim;

namespace {

ErrorModel make_model(const std::string& ancilla, const std::string& multiqubit) {
  ErrorModel m;
  if (ancilla == "full") m.ancilla = AncillaChannel::Full;
  else if (ancilla == "bitflip-ancilla") m.ancilla = AncillaChannel::BitflipOnly;
  else throw py::value_error("ancilla must be 'full' or 'bitflip-ancilla'");
  if (multiqubit == "pairwise") m.multiqubit = MultiQubitNoise::Pairwise;
  else if (multiqubit == "full-depolarizing")
    m.multiqubit = MultiQubitNoise::FullDepolarizing;
  else throw py::value_error("multiqubit must be 'pairwise' or 'full-depolarizing'");
  return m;
}

Circuit make_circuit(const std::string& name) {
  if (name == "fig1") return build_fig1();
  if (name == "fig2") return build_fig2();
  return import_text(name);  // accept circuit text for custom circuits
}

std::vector<FaultEvent> make_events(
    const Simulator& sim, const std::vector<std::pair<int, std::string>>& faults) {
  std::vector<FaultEvent> events;
  for (auto& [id, label] : faults)
    events.push_back({id, PauliString::from_label(kRegisterSize, label)});
  std::sort(events.begin(), events.end(),
            [](const FaultEvent& a, const FaultEvent& b) {
              return a.location < b.location;
            });
  (void)sim;
  return events;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pauli-frame fault simulator for measurement-free error "
            "correction on the Steane code";

  py::class_<PauliString>(m, "PauliString")
      .def(py::init([](const std::string& label) {
             return PauliString::from_label(kRegisterSize, label);
           }),
           py::arg("label"))
      .def_property_readonly("weight", &PauliString::weight)
      .def("commutes_with",
           [](const PauliString& a, const PauliString& b) {
             return commutes(a, b);
           })
      .def("__mul__",
           [](const PauliString& a, const PauliString& b) { return a * b; })
      .def("__eq__", [](const PauliString& a,
                        const PauliString& b) { return a == b; })
      .def("__str__", &PauliString::label)
      .def("__repr__", [](const PauliString& p) {
        return "PauliString('" + p.label() + "')";
      });

  py::class_<Circuit>(m, "Circuit")
      .def_readonly("depth", &Circuit::depth)
      .def_readonly("stage_ends", &Circuit::stage_ends)
      .def_property_readonly(
          "num_gates", [](const Circuit& c) { return c.gates.size(); })
      .def("export_text", [](const Circuit& c) { return export_text(c); })
      .def("__repr__", [](const Circuit& c) {
        return std::string("Circuit(") + to_string(c.label) +
               ", depth=" + std::to_string(c.depth) + ")";
      });

  py::class_<FaultLocation>(m, "FaultLocation")
      .def_readonly("id", &FaultLocation::id)
      .def_readonly("timestep", &FaultLocation::timestep)
      .def_property_readonly(
          "kind",
          [](const FaultLocation& l) {
            return l.kind == LocationKind::Gate ? "GATE" : "IDLE";
          })
      .def_property_readonly("qubits",
                             [](const FaultLocation& l) {
                               std::vector<int> q;
                               for (int v : l.qubits) q.push_back(v + 1);
                               return q;
                             })
      .def_property_readonly("gate", [](const FaultLocation& l) {
        return l.kind == LocationKind::Gate ? to_string(l.gate_kind) : "-";
      });

  py::class_<RateEstimate>(m, "RateEstimate")
      .def_readonly("p", &RateEstimate::p)
      .def_readonly("shots", &RateEstimate::shots)
      .def_readonly("failures", &RateEstimate::failures)
      .def_readonly("p_log", &RateEstimate::p_log)
      .def_readonly("ci_low", &RateEstimate::ci_low)
      .def_readonly("ci_high", &RateEstimate::ci_high)
      .def("__repr__", [](const RateEstimate& e) {
        return "RateEstimate(p=" + std::to_string(e.p) +
               ", p_log=" + std::to_string(e.p_log) + ")";
      });

  py::class_<FaultCensus>(m, "FaultCensus")
      .def_property_readonly(
          "A", [](const FaultCensus& c) { return c.linear_coeff; })
      .def_property_readonly(
          "A_from_counts",
          [](const FaultCensus& c) { return c.linear_coeff_counts; })
      .def_readonly("n_malignant_memory", &FaultCensus::n_malignant_memory)
      .def_readonly("n_malignant_cnot", &FaultCensus::n_malignant_cnot)
      .def_readonly("n_malignant_cnot_windows",
                    &FaultCensus::n_malignant_cnot_windows)
      .def_property_readonly("malignant_events", [](const FaultCensus& c) {
        std::vector<std::pair<int, std::string>> out;
        for (const FaultEvent& e : c.malignant_events)
          out.emplace_back(e.location, e.pauli.label());
        return out;
      });

  py::class_<QuadraticCoeff>(m, "QuadraticCoeff")
      .def_readonly("b", &QuadraticCoeff::b)
      .def_readonly("ci_low", &QuadraticCoeff::ci_low)
      .def_readonly("ci_high", &QuadraticCoeff::ci_high)
      .def_readonly("exact", &QuadraticCoeff::exact)
      .def_readonly("pairs_total", &QuadraticCoeff::pairs_total)
      .def_readonly("pairs_evaluated", &QuadraticCoeff::pairs_evaluated);

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("a", &FitResult::a)
      .def_readonly("b", &FitResult::b)
      .def_property_readonly("threshold", [](const FitResult& f) {
        return f.threshold ? py::cast(*f.threshold) : py::none();
      });

  m.def("build_circuit", &make_circuit, py::arg("name"),
        "Build 'fig1' or 'fig2', or parse circuit text");
  m.def("locations", [](const Circuit& c) { return enumerate_locations(c); });

  m.def(
      "run_round",
      [](const Circuit& c, const std::vector<std::pair<int, std::string>>& faults,
         const std::optional<std::string>& inject) {
        Simulator sim(c);
        auto events = make_events(sim, faults);
        std::optional<PauliString> inj;
        if (inject) inj = PauliString::from_label(kRegisterSize, *inject);
        RoundOutcome out = sim.run(events, inj ? &*inj : nullptr);
        return py::make_tuple(to_string(out.cls), out.residual.label(),
                              out.failed);
      },
      py::arg("circuit"), py::arg("faults") = std::vector<std::pair<int, std::string>>{},
      py::arg("inject") = std::nullopt,
      "Returns (logical_class, residual_label, failed)");

  m.def(
      "trace_round",
      [](const Circuit& c, const std::vector<std::pair<int, std::string>>& faults,
         const std::optional<std::string>& inject) {
        Simulator sim(c);
        auto events = make_events(sim, faults);
        std::optional<PauliString> inj;
        if (inject) inj = PauliString::from_label(kRegisterSize, *inject);
        std::vector<std::pair<int, std::string>> out;
        for (auto& [t, frame] : sim.trace(events, inj ? &*inj : nullptr))
          out.emplace_back(t, frame.label());
        return out;
      },
      py::arg("circuit"), py::arg("faults") = std::vector<std::pair<int, std::string>>{},
      py::arg("inject") = std::nullopt);

  m.def(
      "fault_census",
      [](const Circuit& c, const std::string& ancilla,
         const std::string& multiqubit) {
        ErrorModel m2 = make_model(ancilla, multiqubit);
        return fault_census(c, m2);
      },
      py::arg("circuit"), py::arg("ancilla") = "full",
      py::arg("multiqubit") = "pairwise");

  m.def(
      "estimate_rate",
      [](const Circuit& c, double p, uint64_t shots, uint64_t seed,
         const std::string& ancilla, const std::string& multiqubit,
         int workers) {
        ErrorModel m2 = make_model(ancilla, multiqubit);
        m2.p = p;
        py::gil_scoped_release release;
        return estimate_rate(c, m2, p, shots, seed, workers);
      },
      py::arg("circuit"), py::arg("p"), py::arg("shots"), py::arg("seed") = 0,
      py::arg("ancilla") = "full", py::arg("multiqubit") = "pairwise",
      py::arg("workers") = 0);

  m.def(
      "quadratic_coeff",
      [](const Circuit& c, const std::string& ancilla,
         const std::string& multiqubit, uint64_t sample, uint64_t seed,
         int workers) {
        ErrorModel m2 = make_model(ancilla, multiqubit);
        PairBudget budget =
            sample == 0 ? PairBudget::everything() : PairBudget::sample(sample);
        py::gil_scoped_release release;
        return quadratic_coeff(c, m2, budget, seed, workers);
      },
      py::arg("circuit"), py::arg("ancilla") = "full",
      py::arg("multiqubit") = "pairwise", py::arg("sample") = 0,
      py::arg("seed") = 0, py::arg("workers") = 0);

  m.def(
      "fit_and_threshold",
      [](const std::vector<RateEstimate>& points) {
        return fit_and_threshold(points);
      },
      py::arg("points"));
}
