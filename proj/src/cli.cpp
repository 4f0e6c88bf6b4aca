#include "spin7/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include "spin7/calabi.hpp"
#include "spin7/coframe.hpp"
#include "spin7/flows.hpp"
#include "spin7/format.hpp"
#include "spin7/parallel.hpp"
#include "spin7/structures.hpp"

namespace spin7::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr double kResidualTolerance = 1e-10;
const std::vector<double> kDefaultAlphaGrid{0, 0.3, 0.6, 0.9, 0.99, 1};
const std::array<const char*, 5> kRateNames{"dA1/dt", "dA2/dt", "dA3/dt", "dB/dt", "dC/dt"};

// Where primary data and the JSON report go for one invocation.
class Sinks {
 public:
  Sinks(const std::string& path, std::ostream& out, std::ostream& err) : out_(&out), err_(&err) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(ErrorKind::InvalidSpec, "cannot open output file " + path);
    }
  }
  std::ostream& data() { return file_ ? *file_ : *out_; }
  std::ostream& report() { return file_ ? *out_ : *err_; }
  std::ostream& diagnostics() { return *err_; }

 private:
  std::ostream* out_;
  std::ostream* err_;
  std::unique_ptr<std::ofstream> file_;
};

void error_trailer(std::ostream& data, const std::string& message) {
  data << "# error: " << message << '\n';
  data.flush();
}

json state_json(const State& s) {
  return {{"t", s.t}, {"A1", s.A1}, {"A2", s.A2}, {"A3", s.A3}, {"B", s.B}, {"C", s.C}};
}

json closure_json(const ClosureReport& r) {
  return {{"phi", r.phi}, {"omega1", r.omega1}, {"omega2", r.omega2}, {"omega3", r.omega3}};
}

void write_plot_script(const std::string& path, const std::string& csv, const std::string& x_label, int x_column,
                       int first_column) {
  std::ofstream script(path);
  if (!script) throw Error(ErrorKind::InvalidSpec, "cannot open plot script " + path);
  script << "set datafile separator ','\n"
         << "set datafile commentschars '#'\n"
         << "set key autotitle columnhead\n"
         << "set xlabel '" << x_label << "'\n"
         << "plot '" << csv << "' using " << x_column << ':' << first_column << " with lines";
  for (int c = first_column + 1; c < first_column + 5; ++c) script << ", '' using " << x_column << ':' << c << " with lines";
  script << '\n';
}

std::vector<double> radius_grid(double r_min, double r_max, std::size_t samples, const std::string& spacing) {
  if (samples < 2 || !(r_max > r_min)) throw Error(ErrorKind::InvalidSpec, "r range needs samples >= 2 and max > min");
  std::vector<double> r(samples);
  if (spacing == "log") {
    if (!(r_min > 0)) throw Error(ErrorKind::InvalidSpec, "log spacing needs r_min > 0");
    const double lo = std::log(r_min), step = (std::log(r_max) - lo) / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) r[i] = std::exp(lo + step * static_cast<double>(i));
  } else {
    const double step = (r_max - r_min) / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) r[i] = r_min + step * static_cast<double>(i);
  }
  r.front() = r_min;
  r.back() = r_max;
  return r;
}

// ---------------------------------------------------------------- derive

struct DeriveConfig {
  bool check = false;
  bool bc_equal = false;
  bool show_dphi = false;
  std::string format = "text";
};

int cmd_derive(const DeriveConfig& cfg, Sinks& io) {
  const std::size_t count = cfg.bc_equal ? 4 : 5;
  json doc = json::object();
  if (cfg.show_dphi) {
    json components = json::object();
    for (const auto& [e, c] : phi_differential().terms()) components[e.label()] = c.to_string();
    if (cfg.format == "json") {
      doc["dphi"] = components;
    } else {
      io.data() << "# nonzero components of d(Phi)\n";
      for (const auto& [label, c] : components.items()) io.data() << label << ": " << c.get<std::string>() << '\n';
    }
  }

  OdeSystem sys = derive_ode();
  if (cfg.bc_equal) sys = sys.with_bc_equal();
  const OdeSystem expected = cfg.bc_equal ? OdeSystem::reference_bc_equal() : OdeSystem::reference();

  json rhs = json::object();
  for (std::size_t i = 0; i < count; ++i) rhs[kRateNames[i]] = sys[i].to_string();
  std::vector<std::string> mismatches;
  if (cfg.check)
    for (std::size_t i = 0; i < count; ++i)
      if (!(sys[i] == expected[i])) mismatches.emplace_back(kRateNames[i]);

  if (cfg.format == "json") {
    doc["system"] = cfg.bc_equal ? "B=C" : "full";
    doc["rhs"] = rhs;
    if (cfg.check) {
      doc["check"] = {{"passed", mismatches.empty()}, {"mismatches", mismatches}};
    }
    io.data() << doc.dump(2) << '\n';
  } else {
    for (const auto& [name, r] : rhs.items()) io.data() << name << " = " << r.get<std::string>() << '\n';
    if (cfg.check) {
      if (mismatches.empty()) {
        io.data() << "check: matches the reference system exactly\n";
      } else {
        for (const auto& m : mismatches) io.data() << "check: mismatch in " << m << '\n';
      }
    }
  }
  return mismatches.empty() ? kSuccess : kVerificationFailure;
}

// ---------------------------------------------------------------- verify

struct VerifyConfig {
  std::vector<std::string> suites;
  std::string inject_fault;
};

const std::vector<std::string> kSuites{"lemma1", "ansatz", "f-identity", "d-squared", "horizontal-table"};

struct CheckResult {
  bool passed = false;
  std::string detail;
};

CheckResult check_lemma1() {
  const OdeSystem derived = derive_ode();
  if (!(derived == OdeSystem::reference())) return {false, "derived system differs from the reference system"};
  if (!verify_lemma1(derived)) return {false, "d(Phi) does not vanish under the derived system"};
  return {true, "derived system matches; d(Phi) vanishes identically"};
}

CheckResult check_ansatz() {
  try {
    const AnsatzReport report = reduce_ansatz(OdeSystem::reference());
    return {true, "A1' reduces to " + report.reduced_a1.to_string() + "; (A2^2)' = " +
                      report.reduced_a2_squared.to_string()};
  } catch (const Error& e) {
    return {false, e.what()};
  }
}

CheckResult check_f_identity() {
  const RatFunc residual = F_identity_residual(family_G_of_rho());
  if (!residual.is_zero()) return {false, "residual " + residual.to_string()};
  return {true, "dF/drho + F G - 4 = 0"};
}

CheckResult check_d_squared() {
  std::vector<std::pair<std::string, Form>> forms;
  for (int i = 1; i <= 3; ++i) {
    forms.emplace_back("eta" + std::to_string(i), eta(i));
    forms.emplace_back("omega" + std::to_string(i), omega(i));
  }
  forms.emplace_back("omega", omega_kahler());
  for (const auto& [name, f] : forms) {
    const Form dd = ext_d(ext_d(f));
    if (!dd.is_zero()) return {false, "d^2(" + name + ") = " + dd.to_string()};
  }
  return {true, "d^2 = 0 on eta_i, omega_i, omega"};
}

CheckResult check_horizontal_table(bool corrupt) {
  HorizontalTable table = horizontal_table();
  if (corrupt) table[1][1].coefficient = -table[1][1].coefficient + 1;
  const HorizontalTable oracle = horizontal_oracle();
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      if (table[i][j] == oracle[i][j]) continue;
      std::ostringstream msg;
      msg << "horizontal table entry (" << horizontal_name(kHorizontalSymbols[i]) << ", "
          << horizontal_name(kHorizontalSymbols[j]) << "): table " << table[i][j].coefficient << '*'
          << horizontal_name(table[i][j].result) << ", oracle " << oracle[i][j].coefficient << '*'
          << horizontal_name(oracle[i][j].result);
      return {false, msg.str()};
    }
  }
  return {true, "hardcoded table equals the brute-force oracle"};
}

int cmd_verify(const VerifyConfig& cfg, Sinks& io) {
  const std::vector<std::string>& suites = cfg.suites.empty() ? kSuites : cfg.suites;
  json checks = json::array();
  bool all = true;
  for (const auto& suite : suites) {
    CheckResult r;
    if (suite == "lemma1") r = check_lemma1();
    else if (suite == "ansatz") r = check_ansatz();
    else if (suite == "f-identity") r = check_f_identity();
    else if (suite == "d-squared") r = check_d_squared();
    else r = check_horizontal_table(cfg.inject_fault == "horizontal-table");
    checks.push_back({{"suite", suite}, {"passed", r.passed}, {"detail", r.detail}});
    if (!r.passed) {
      all = false;
      io.diagnostics() << "verification failed: " << suite << ": " << r.detail << '\n';
    }
  }
  io.data() << json{{"passed", all}, {"checks", checks}}.dump(2) << '\n';
  return all ? kSuccess : kVerificationFailure;
}

// ---------------------------------------------------------------- family

struct FamilyConfig {
  std::vector<double> alphas;
  double r_min = 1.001;
  double r_max = 50;
  std::size_t samples = 200;
  std::string spacing = "log";
  std::string format = "csv";
  std::string plot_script;
};

struct FamilyRow {
  MetricSample sample;
  std::array<double, 5> residual{};
};

int cmd_family(const FamilyConfig& cfg, const std::string& output, Sinks& io) {
  const std::vector<double>& alphas = cfg.alphas.empty() ? kDefaultAlphaGrid : cfg.alphas;
  const std::vector<double> radii = radius_grid(cfg.r_min, cfg.r_max, cfg.samples, cfg.spacing);

  using Cell = std::variant<FamilyRow, std::string>;
  const auto cells = parallel_map(alphas.size() * radii.size(), [&](std::size_t k) -> Cell {
    const double alpha = alphas[k / radii.size()], r = radii[k % radii.size()];
    try {
      FamilyRow row{sample(alpha, r), {}};
      row.residual = residuals(alpha, r);
      return row;
    } catch (const Error& e) {
      return std::string(e.what());
    }
  });

  const auto per_alpha = parallel_map(alphas.size(), [&](std::size_t i) {
    json entry{{"alpha", alphas[i]}};
    double worst = 0;
    bool complete = true;
    for (std::size_t j = 0; j < radii.size(); ++j) {
      const Cell& c = cells[i * radii.size() + j];
      if (const auto* row = std::get_if<FamilyRow>(&c)) {
        for (double x : row->residual) worst = std::max(worst, std::abs(x));
      } else {
        complete = false;
      }
    }
    entry["max_abs_residual"] = complete ? json(worst) : json(nullptr);
    try {
      if (alphas[i] < 1) {
        const SmoothnessLimits lim = smoothness_limits(alphas[i]);
        entry["smoothness_limits"] = {{"A1", lim.A1},         {"abs_dA1", lim.abs_dA1},
                                      {"dB", lim.dB},         {"dC", lim.dC},
                                      {"A2_plus_A3", lim.A2_plus_A3}, {"dA2_minus_dA3", lim.dA2_minus_dA3},
                                      {"A2_at_1", lim.A2_at_1}, {"A3_at_1", lim.A3_at_1}};
      } else {
        entry["smoothness_limits"] = nullptr;
      }
      const HolonomyEvidence ev = holonomy_evidence(alphas[i]);
      entry["holonomy"] = {{"label", ev.label}, {"max", closure_json(ev.max)}};
    } catch (const Error& e) {
      entry["error"] = e.what();
    }
    return entry;
  });

  std::optional<std::string> failure;
  double worst = 0;
  if (cfg.format == "csv") io.data() << "alpha,r,t_deriv,A1,A2,A3,B,C,res1,res2,res3,res4,res5\n";
  for (const Cell& c : cells) {
    if (const auto* msg = std::get_if<std::string>(&c)) {
      failure = *msg;
      break;
    }
    const FamilyRow& row = std::get<FamilyRow>(c);
    for (double x : row.residual) worst = std::max(worst, std::abs(x));
    if (cfg.format != "csv") continue;
    const MetricSample& s = row.sample;
    io.data() << format_double(s.alpha) << ',' << format_double(s.r) << ',' << format_double(s.t_of_r_derivative);
    for (double v : s.values()) io.data() << ',' << format_double(v);
    for (double v : row.residual) io.data() << ',' << format_double(v);
    io.data() << '\n';
  }

  json summary{{"alpha_grid", alphas},
               {"r_range", {{"min", cfg.r_min}, {"max", cfg.r_max}, {"samples", cfg.samples}, {"spacing", cfg.spacing}}},
               {"max_abs_residual", worst},
               {"tolerance", kResidualTolerance},
               {"passed", !failure && worst < kResidualTolerance},
               {"per_alpha", json(per_alpha)}};
  if (failure) summary["error"] = *failure;

  if (cfg.format == "csv") {
    if (failure) error_trailer(io.data(), *failure);
    io.report() << summary.dump(2) << '\n';
  } else {
    io.data() << summary.dump(2) << '\n';
  }
  if (!cfg.plot_script.empty()) write_plot_script(cfg.plot_script, output, "r", 2, 4);
  if (failure) return kRuntimeError;
  return worst < kResidualTolerance ? kSuccess : kVerificationFailure;
}

// ---------------------------------------------------------------- integrate

struct IntegrateConfig {
  std::string seed_kind;
  double alpha = 0;
  double a = 0.5;
  double b = 1;
  double epsilon = 1e-4;
  double family_r = 0;
  std::vector<double> state;
  std::string system = "full";
  double t_end = 10;
  double stop_abs_a2 = 0;
  double rel_tol = 1e-10;
  std::string plot_script;
};

State initial_state(const IntegrateConfig& cfg) {
  if (!cfg.state.empty()) {
    if (cfg.state.size() != 6) throw Error(ErrorKind::InvalidSpec, "--state needs t,A1,A2,A3,B,C");
    return {cfg.state[0], cfg.state[1], cfg.state[2], cfg.state[3], cfg.state[4], cfg.state[5]};
  }
  if (cfg.family_r > 0) return sample(cfg.alpha, cfg.family_r).state(t_of_r(cfg.alpha, cfg.family_r));
  if (cfg.seed_kind == "bc-equal") return seed(SeedSpec::bc_equal(cfg.a, cfg.b, cfg.epsilon));
  return seed(SeedSpec::symmetric(cfg.alpha, cfg.epsilon));
}

int cmd_integrate(const IntegrateConfig& cfg, const std::string& output, Sinks& io) {
  const State start = initial_state(cfg);
  const OdeSystem sys = cfg.system == "bc-equal" ? OdeSystem::reference_bc_equal() : OdeSystem::reference();
  IntegrateOptions options;
  options.t_end = cfg.t_end;
  options.rel_tol = cfg.rel_tol;
  if (cfg.stop_abs_a2 > 0) {
    const double target = cfg.stop_abs_a2;
    options.event = [target](const State& s) { return std::abs(s.A2) - target; };
  }
  if (!cfg.plot_script.empty()) write_plot_script(cfg.plot_script, output, "t", 1, 2);

  Trajectory traj;
  try {
    traj = integrate(start, sys, options);
  } catch (const IntegrationError& e) {
    write_csv(io.data(), e.partial());
    error_trailer(io.data(), e.what());
    io.diagnostics() << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  write_csv(io.data(), traj);
  const DriftReport drift = monitor(traj);
  json report{{"system", cfg.system},
              {"stop", traj.stop == StopReason::event ? "event" : "reached_end"},
              {"initial", state_json(traj.front())},
              {"final", state_json(traj.back())},
              {"steps", {{"accepted", traj.stats.accepted}, {"rejected", traj.stats.rejected}}},
              {"drift",
               {{"b2_minus_c2", drift.b2_minus_c2},
                {"ansatz_constraint", drift.ansatz_tracked ? json(drift.ansatz_constraint) : json(nullptr)}}}};
  io.report() << report.dump(2) << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------- holonomy

int cmd_check_holonomy(const std::vector<double>& alphas_in, Sinks& io) {
  const std::vector<double>& alphas = alphas_in.empty() ? kDefaultAlphaGrid : alphas_in;
  const auto evidence = parallel_map(alphas.size(), [&](std::size_t i) { return holonomy_evidence(alphas[i]); });
  json out = json::array();
  for (const HolonomyEvidence& ev : evidence) {
    json per = json::array();
    for (std::size_t k = 0; k < ev.radii.size(); ++k)
      per.push_back({{"r", ev.radii[k]}, {"closure", closure_json(ev.per_radius[k])}});
    out.push_back({{"alpha", ev.alpha}, {"label", ev.label}, {"max", closure_json(ev.max)}, {"per_radius", per}});
  }
  io.data() << out.dump(2) << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------- explore-alc

struct AlcConfig {
  double a = 0.5;
  double b = 1;
  double epsilon = 1e-4;
  double t_end = 100;
  double rel_tol = 1e-10;
  std::string plot_script;
};

int cmd_explore_alc(const AlcConfig& cfg, const std::string& output, Sinks& io) {
  const OdeSystem sys = OdeSystem::reference_bc_equal();
  const State start = seed(SeedSpec::bc_equal(cfg.a, cfg.b, cfg.epsilon));
  const double t_mid = 0.5 * cfg.t_end;
  if (!(t_mid > start.t)) throw Error(ErrorKind::InvalidSpec, "t_end must exceed twice the seed offset");
  if (!cfg.plot_script.empty()) write_plot_script(cfg.plot_script, output, "t", 1, 2);

  Trajectory traj;
  try {
    traj = integrate(start, sys, t_mid, cfg.rel_tol);
    const Trajectory second = integrate(traj.back(), sys, cfg.t_end, cfg.rel_tol);
    traj.samples.insert(traj.samples.end(), second.samples.begin() + 1, second.samples.end());
    traj.stats.accepted += second.stats.accepted;
    traj.stats.rejected += second.stats.rejected;
  } catch (const IntegrationError& e) {
    Trajectory partial = traj;
    partial.samples.insert(partial.samples.end(), e.partial().samples.begin() + (traj.samples.empty() ? 0 : 1),
                           e.partial().samples.end());
    write_csv(io.data(), partial);
    error_trailer(io.data(), e.what());
    io.diagnostics() << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  write_csv(io.data(), traj);

  const auto mid_it = std::find_if(traj.samples.begin(), traj.samples.end(), [&](const State& s) { return s.t == t_mid; });
  const State mid = *mid_it;
  const State& end = traj.back();
  double max_abs_a1 = 0;
  for (const State& s : traj.samples) max_abs_a1 = std::max(max_abs_a1, std::abs(s.A1));

  const std::array<const char*, 4> names{"A1", "A2", "A3", "B"};
  const std::array<double, 4> v_mid{mid.A1, mid.A2, mid.A3, mid.B}, v_end{end.A1, end.A2, end.A3, end.B};
  json change = json::object();
  std::size_t most_stable = 0;
  std::array<double, 4> rel{};
  for (std::size_t i = 0; i < 4; ++i) {
    rel[i] = std::abs(v_end[i] - v_mid[i]) / std::abs(v_end[i]);
    change[names[i]] = rel[i];
    if (rel[i] < rel[most_stable]) most_stable = i;
  }
  json report{{"seed", {{"a", cfg.a}, {"b", cfg.b}, {"epsilon", cfg.epsilon}}},
              {"t_mid", t_mid},
              {"t_end", end.t},
              {"state_mid", state_json(mid)},
              {"state_end", state_json(end)},
              {"relative_change", change},
              {"a1_relative_change", rel[0]},
              {"max_abs_A1", max_abs_a1},
              {"min_abs_A2_A3_B", std::min({std::abs(end.A2), end.A3, end.B})},
              {"most_stable_coefficient", names[most_stable]},
              {"steps", {{"accepted", traj.stats.accepted}, {"rejected", traj.stats.rejected}}}};
  io.report() << report.dump(2) << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin(7) cone metrics: derivation, verification and integration", "spin7"};
  app.set_config("--config", "", "INI-style file of key = value settings; command-line flags take precedence");
  app.require_subcommand(1, 1);

  std::string output;
  auto add_output = [&output](CLI::App* sub) {
    sub->add_option("-o,--output", output, "Write primary data to this file instead of stdout");
  };

  DeriveConfig derive_cfg;
  auto* derive = app.add_subcommand("derive", "Derive the cone ODE system from d(Phi) = 0");
  derive->add_flag("--check", derive_cfg.check, "Exit 1 unless the result equals the reference system");
  derive->add_flag("--bc-equal", derive_cfg.bc_equal, "Specialise to B = C");
  derive->add_flag("--show-dphi", derive_cfg.show_dphi, "Print the nonzero components of d(Phi) first");
  derive->add_option("--format", derive_cfg.format, "Output format")->capture_default_str()->check(CLI::IsMember({"text", "json"}));
  add_output(derive);

  VerifyConfig verify_cfg;
  auto* verify = app.add_subcommand("verify", "Run the exact verification suites");
  verify->add_option("--suite", verify_cfg.suites, "Restrict to these suites")->check(CLI::IsMember(kSuites));
  verify->add_option("--inject-fault", verify_cfg.inject_fault, "Test hook: corrupt a component before checking")
      ->check(CLI::IsMember({"horizontal-table"}));
  add_output(verify);

  FamilyConfig family_cfg;
  auto* family = app.add_subcommand("family", "Evaluate the explicit family and its residuals on an (alpha, r) grid");
  family->add_option("--alpha,--alpha-grid", family_cfg.alphas, "alpha values (default 0 0.3 0.6 0.9 0.99 1)")
      ->check(CLI::Range(0.0, 1.0));
  family->add_option("--r-min", family_cfg.r_min, "Smallest radius")->capture_default_str();
  family->add_option("--r-max", family_cfg.r_max, "Largest radius")->capture_default_str();
  family->add_option("--samples", family_cfg.samples, "Radii per alpha")->capture_default_str();
  family->add_option("--spacing", family_cfg.spacing, "Radius spacing")->capture_default_str()->check(CLI::IsMember({"linear", "log"}));
  family->add_option("--format", family_cfg.format, "Data format")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  family->add_option("--plot-script", family_cfg.plot_script, "Write a gnuplot script for the CSV");
  add_output(family);

  IntegrateConfig int_cfg;
  auto* integ = app.add_subcommand("integrate", "Integrate the cone ODE system");
  auto* seed_opt = integ->add_option("--seed", int_cfg.seed_kind, "Series seed near the collapsed orbit")
                       ->check(CLI::IsMember({"symmetric", "bc-equal"}));
  integ->add_option("--alpha", int_cfg.alpha, "alpha for the symmetric seed or family start");
  integ->add_option("--a", int_cfg.a, "bc-equal seed: A3(0)");
  integ->add_option("--b", int_cfg.b, "bc-equal seed: B(0) = C(0)");
  integ->add_option("--epsilon", int_cfg.epsilon, "Seed offset from t = 0");
  auto* family_opt = integ->add_option("--from-family", int_cfg.family_r, "Start on the explicit family at this r");
  auto* state_opt = integ->add_option("--state", int_cfg.state, "Explicit start t,A1,A2,A3,B,C")->delimiter(',');
  seed_opt->excludes(family_opt)->excludes(state_opt);
  family_opt->excludes(state_opt);
  integ->add_option("--system", int_cfg.system, "Five-equation system or the B = C reduction")->capture_default_str()->check(CLI::IsMember({"full", "bc-equal"}));
  integ->add_option("--t-end", int_cfg.t_end, "Final time")->capture_default_str();
  integ->add_option("--stop-abs-a2", int_cfg.stop_abs_a2, "Stop when |A2| reaches this value");
  integ->add_option("--rel-tol", int_cfg.rel_tol, "Relative tolerance (absolute is 1e-3 of it)")->capture_default_str();
  integ->add_option("--plot-script", int_cfg.plot_script, "Write a gnuplot script for the CSV");
  add_output(integ);

  std::vector<double> holonomy_alphas;
  auto* holonomy = app.add_subcommand("check-holonomy", "Closure evidence for the explicit family");
  holonomy->add_option("--alpha", holonomy_alphas, "alpha values (default 0 0.3 0.6 0.9 0.99 1)")
      ->check(CLI::Range(0.0, 1.0));
  add_output(holonomy);

  AlcConfig alc_cfg;
  auto* alc = app.add_subcommand("explore-alc", "Integrate the B = C system from a bc-equal seed");
  alc->add_option("--a", alc_cfg.a, "A3(0)")->capture_default_str();
  alc->add_option("--b", alc_cfg.b, "B(0) = C(0)")->capture_default_str();
  alc->add_option("--epsilon", alc_cfg.epsilon, "Seed offset from t = 0")->capture_default_str();
  alc->add_option("--t-end", alc_cfg.t_end, "Final time")->capture_default_str();
  alc->add_option("--rel-tol", alc_cfg.rel_tol, "Relative tolerance")->capture_default_str();
  alc->add_option("--plot-script", alc_cfg.plot_script, "Write a gnuplot script for the CSV");
  add_output(alc);

  for (auto* sub : {family, integ, alc})
    sub->get_option("--plot-script")->needs(sub->get_option("--output"));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kRuntimeError;
  }

  try {
    Sinks io(output, out, err);
    if (*derive) return cmd_derive(derive_cfg, io);
    if (*verify) return cmd_verify(verify_cfg, io);
    if (*family) return cmd_family(family_cfg, output, io);
    if (*integ) return cmd_integrate(int_cfg, output, io);
    if (*holonomy) return cmd_check_holonomy(holonomy_alphas, io);
    return cmd_explore_alc(alc_cfg, output, io);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace spin7::cli
