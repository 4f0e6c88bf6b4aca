#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "spin7/calabi.hpp"
#include "spin7/cli.hpp"
#include "spin7/flows.hpp"
#include "spin7/structures.hpp"

namespace py = pybind11;
using namespace spin7;

namespace {

std::vector<std::string> printed(const OdeSystem& sys, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(sys[i].to_string());
  return out;
}

OdeSystem system_named(const std::string& name) {
  if (name == "full") return OdeSystem::reference();
  if (name == "bc-equal") return OdeSystem::reference_bc_equal();
  throw Error(ErrorKind::InvalidSpec, "unknown system '" + name + "' (expected full or bc-equal)");
}

py::dict closure_dict(const ClosureReport& r) {
  py::dict d;
  d["phi"] = r.phi;
  d["omega1"] = r.omega1;
  d["omega2"] = r.omega2;
  d["omega3"] = r.omega3;
  return d;
}

py::dict trajectory_dict(const Trajectory& tr) {
  std::vector<double> t, a1, a2, a3, b, c;
  for (const State& s : tr.samples) {
    t.push_back(s.t);
    a1.push_back(s.A1);
    a2.push_back(s.A2);
    a3.push_back(s.A3);
    b.push_back(s.B);
    c.push_back(s.C);
  }
  py::dict d;
  d["t"] = t;
  d["A1"] = a1;
  d["A2"] = a2;
  d["A3"] = a3;
  d["B"] = b;
  d["C"] = c;
  d["stop"] = tr.stop == StopReason::event ? "event" : "reached_end";
  d["accepted_steps"] = tr.stats.accepted;
  d["rejected_steps"] = tr.stats.rejected;
  return d;
}

}  // namespace

PYBIND11_MODULE(_spin7, m) {
  m.doc() = "Cohomogeneity-one Spin(7) metrics on cones over 3-Sasakian 7-manifolds.";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = static_cast<const py::object&>(error)(py::str(e.what()));
      instance.attr("kind") = py::str(std::string(error_kind_name(e.kind())));
      PyErr_SetObject(error.ptr(), instance.ptr());
    }
  });

  m.def("derive_system", [] { return printed(derive_ode(), 5); },
        "Derive the five closure ODEs from d(Phi) = 0 and return the right-hand sides as strings.");
  m.def("reference_system", [](const std::string& name) { return printed(system_named(name), name == "full" ? 5 : 4); },
        py::arg("system") = "full");
  m.def("verify_closure_system", [] { return verify_lemma1(derive_ode()); },
        "True when substituting the derived system into d(Phi) gives zero.");
  m.def("verify_F_identity", &verify_F_identity);

  m.def("F", [](double alpha, double r) { return F_of_r(alpha, r); }, py::arg("alpha"), py::arg("r"));
  m.def("t_of_r", &t_of_r, py::arg("alpha"), py::arg("r"));
  m.def(
      "sample",
      [](double alpha, double r) {
        const MetricSample s = sample(alpha, r);
        py::dict d;
        d["alpha"] = s.alpha;
        d["r"] = s.r;
        d["t_deriv"] = s.t_of_r_derivative;
        d["A1"] = s.A1;
        d["A2"] = s.A2;
        d["A3"] = s.A3;
        d["B"] = s.B;
        d["C"] = s.C;
        d["coordinate_singularity"] = s.coordinate_singularity;
        return d;
      },
      py::arg("alpha"), py::arg("r"));
  m.def("residuals", [](double alpha, double r) { return residuals(alpha, r); }, py::arg("alpha"), py::arg("r"));
  m.def(
      "smoothness_limits",
      [](double alpha) {
        const SmoothnessLimits l = smoothness_limits(alpha);
        py::dict d;
        d["A1"] = l.A1;
        d["abs_dA1"] = l.abs_dA1;
        d["dB"] = l.dB;
        d["dC"] = l.dC;
        d["A2_plus_A3"] = l.A2_plus_A3;
        d["dA2_minus_dA3"] = l.dA2_minus_dA3;
        d["A2_at_1"] = l.A2_at_1;
        d["A3_at_1"] = l.A3_at_1;
        return d;
      },
      py::arg("alpha"));
  m.def(
      "holonomy_evidence",
      [](double alpha) {
        const HolonomyEvidence ev = holonomy_evidence(alpha);
        py::dict d;
        d["alpha"] = ev.alpha;
        d["label"] = ev.label;
        d["max"] = closure_dict(ev.max);
        py::list per;
        for (std::size_t i = 0; i < ev.radii.size(); ++i) {
          py::dict row = closure_dict(ev.per_radius[i]);
          row["r"] = ev.radii[i];
          per.append(row);
        }
        d["per_radius"] = per;
        return d;
      },
      py::arg("alpha"));

  m.def(
      "seed",
      [](const std::string& kind, double alpha, double a, double b, double epsilon) {
        SeedSpec spec;
        if (kind == "symmetric")
          spec = SeedSpec::symmetric(alpha, epsilon);
        else if (kind == "bc-equal")
          spec = SeedSpec::bc_equal(a, b, epsilon);
        else
          throw Error(ErrorKind::InvalidSpec, "unknown seed '" + kind + "' (expected symmetric or bc-equal)");
        const State s = seed(spec);
        return std::vector<double>{s.t, s.A1, s.A2, s.A3, s.B, s.C};
      },
      py::arg("kind") = "symmetric", py::kw_only(), py::arg("alpha") = 0.0, py::arg("a") = 0.5, py::arg("b") = 1.0,
      py::arg("epsilon") = 1e-4, "Initial state (t, A1, A2, A3, B, C) near the singular orbit.");
  m.def(
      "integrate",
      [](const std::vector<double>& state, double t_end, double rel_tol, const std::string& system,
         std::optional<double> stop_abs_a2) {
        if (state.size() != 6) throw Error(ErrorKind::InvalidSpec, "state must be (t, A1, A2, A3, B, C)");
        IntegrateOptions o;
        o.t_end = t_end;
        o.rel_tol = rel_tol;
        if (stop_abs_a2) o.event = [target = *stop_abs_a2](const State& s) { return std::abs(s.A2) - target; };
        const State initial{state[0], state[1], state[2], state[3], state[4], state[5]};
        Trajectory tr;
        {
          py::gil_scoped_release release;
          tr = integrate(initial, system_named(system), o);
        }
        py::dict d = trajectory_dict(tr);
        const DriftReport drift = monitor(tr);
        d["drift_b2_minus_c2"] = drift.b2_minus_c2;
        d["drift_ansatz"] = drift.ansatz_constraint;
        return d;
      },
      py::arg("state"), py::arg("t_end"), py::kw_only(), py::arg("rel_tol") = 1e-10, py::arg("system") = "full",
      py::arg("stop_abs_a2") = py::none());

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line interface in-process. Returns (exit_code, stdout, stderr).");
}
