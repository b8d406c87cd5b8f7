// Command-line front end: evaluates periodic fractional (s,p)-Gagliardo
// energies and their variations on jump configurations, runs limit sweeps
// and descent experiments, and emits CSV/JSON tables.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gagliardo/energy.hpp"
#include "gagliardo/io.hpp"
#include "gagliardo/limits.hpp"
#include "gagliardo/mollifier.hpp"
#include "gagliardo/optimizer.hpp"
#include "gagliardo/variations.hpp"

namespace gg = gagliardo;
using nlohmann::json;

namespace {

struct Options {
  std::string command;
  double s = 0.5, p = 2.0;
  int T = 1, d = 1;
  double eps = 0.0;
  bool use_equispaced = false;
  bool use_random = false;
  std::uint64_t seed = 0;
  double min_gap = 0.1;
  std::vector<double> points;
  std::vector<double> schedule;
  double tol = 1e-8;
  std::string out;
  std::string format = "csv";
  std::string spec_path;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

// Single JSON object mirroring the flags; explicit flags override its values.
void load_spec_defaults(const std::string& path, Options& o) {
  std::ifstream f(path);
  if (!f) throw gg::IOError("cannot read spec file: " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw gg::InvalidConfiguration(std::string("malformed spec file: ") +
                                   e.what());
  }
  if (j.contains("command")) o.command = j["command"].get<std::string>();
  if (j.contains("s")) o.s = j["s"].get<double>();
  if (j.contains("p")) o.p = j["p"].get<double>();
  if (j.contains("T")) o.T = j["T"].get<int>();
  if (j.contains("d")) o.d = j["d"].get<int>();
  if (j.contains("eps")) o.eps = j["eps"].get<double>();
  if (j.contains("equispaced")) o.use_equispaced = j["equispaced"].get<bool>();
  if (j.contains("random")) o.use_random = j["random"].get<bool>();
  if (j.contains("seed")) o.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("min_gap")) o.min_gap = j["min_gap"].get<double>();
  if (j.contains("points")) o.points = j["points"].get<std::vector<double>>();
  if (j.contains("schedule"))
    o.schedule = j["schedule"].get<std::vector<double>>();
  if (j.contains("tol")) o.tol = j["tol"].get<double>();
  if (j.contains("out")) o.out = j["out"].get<std::string>();
  if (j.contains("format")) o.format = j["format"].get<std::string>();
}

gg::Configuration build_config(const Options& o) {
  const int sources = (o.use_equispaced ? 1 : 0) + (o.use_random ? 1 : 0) +
                      (o.points.empty() ? 0 : 1);
  if (sources > 1)
    throw gg::InvalidConfiguration(
        "choose exactly one of --equispaced, --points, --random");
  if (o.use_random) return gg::random_configuration(o.T, o.min_gap, o.seed);
  if (!o.points.empty()) return gg::make_configuration(o.points, o.T);
  return gg::equispaced(o.T);  // default
}

void deliver(const json& j, const Options& o) {
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!o.out.empty()) gg::write_text_file(o.out, text);
}

int run(const Options& o) {
  gg::FractionalParams prm{o.s, o.p, o.T, o.d};

  if (o.command == "energy") {
    prm.d = 1;
    const auto rep = gg::energy_config(build_config(o), prm, o.tol);
    deliver(gg::energy_report_json(rep), o);
  } else if (o.command == "energy0") {
    const double v = gg::energy_zero(build_config(o), o.p);
    deliver(json{{"value", v}}, o);
  } else if (o.command == "mollified") {
    if (!(o.eps > 0.0))
      throw gg::InvalidConfiguration("mollified requires --eps > 0");
    prm.d = 1;
    const auto rep = gg::mollified_energy(build_config(o), prm, o.eps, o.tol);
    deliver(gg::energy_report_json(rep), o);
  } else if (o.command == "gradient") {
    prm.d = 1;
    const auto cfg = build_config(o);
    gg::VariationReport rep;
    rep.gradient = o.eps > 0.0
                       ? gg::mollified_gradient(cfg, prm, o.eps)
                       : gg::rigid_gradient(cfg, prm);
    deliver(gg::variation_report_json(rep), o);
  } else if (o.command == "hessian") {
    prm.d = 1;
    const auto cfg = build_config(o);
    const auto rep = o.eps > 0.0 ? gg::mollified_hessian(cfg, prm, o.eps)
                                 : gg::hessian(cfg, prm);
    deliver(gg::variation_report_json(rep), o);
  } else if (o.command == "optimize") {
    prm.d = 1;
    gg::DescentOptions opts;
    opts.grad_tol = std::min(o.tol, 1e-6);
    if (o.eps > 0.0) {
      opts.mode = gg::DescentMode::Mollified;
      opts.eps = o.eps;
      opts.min_gap_floor = 4.0 * o.eps;
    }
    const auto trace = gg::gradient_descent(build_config(o), prm, opts);
    if (!o.out.empty()) gg::emit_trace(trace, o.out);
    json summary = gg::trace_summary_json(trace);
    const auto final_cfg =
        gg::make_configuration(trace.iterates.back(), o.T);
    std::string report;
    summary["equispaced"] = gg::verify_equispaced(final_cfg, 1e-6, &report);
    summary["equispaced_report"] = report;
    std::cout << summary.dump(2) << "\n";
  } else if (o.command == "sweep-s0" || o.command == "sweep-s1") {
    const bool to_zero = o.command == "sweep-s0";
    std::vector<double> sched = o.schedule;
    if (sched.empty())
      sched = to_zero ? std::vector<double>{0.2, 0.1, 0.05, 0.025}
                      : std::vector<double>{0.8, 0.9, 0.95, 0.975};
    const double Td = o.T;
    gg::SweepTable tab;
    if (o.eps > 0.0) {
      // sweep the mollified sawtooth of the selected configuration
      const auto cfg = build_config(o);
      gg::MollifierSpec moll(o.eps);
      auto u = [cfg, moll](double x) {
        return gg::evaluate_u_mollified(cfg, moll, x);
      };
      const auto hints = gg::mollified_hints(cfg, o.eps);
      tab = to_zero ? gg::sweep_s0(u, o.p, o.T, sched, hints)
                    : gg::sweep_s1(u, o.p, o.T, sched, std::nullopt, hints);
    } else {
      auto u = [Td](double x) { return std::sin(2.0 * M_PI * x / Td); };
      const double w = 2.0 * M_PI / Td;
      // int_0^T |w cos(wx)|^p dx, exact for the analytic sweep target
      auto dup = [&](double x) { return std::pow(std::fabs(w * std::cos(w * x)), o.p); };
      const double uplp = gg::integrate_adaptive(dup, 0.0, Td, 1e-12);
      tab = to_zero ? gg::sweep_s0(u, o.p, o.T, sched)
                    : gg::sweep_s1(u, o.p, o.T, sched, uplp);
    }
    std::cout << gg::sweep_json(tab).dump(2) << "\n";
    if (!o.out.empty()) gg::emit_table(tab, o.format, o.out);
  } else if (o.command == "critical-scan") {
    std::vector<double> sched = o.schedule;
    if (sched.empty()) sched = {0.1, 0.05, 0.025, 0.0125};
    const auto tab = gg::critical_scan(build_config(o), o.p, sched);
    std::cout << gg::sweep_json(tab).dump(2) << "\n";
    if (!o.out.empty()) gg::emit_table(tab, o.format, o.out);
  } else if (o.command == "cusp-scan") {
    // double jump: overlap the first two equispaced points, then displace one
    prm.d = 1;
    if (o.T < 2)
      throw gg::InvalidConfiguration("cusp-scan requires T >= 2");
    std::vector<double> pts(o.T);
    for (int i = 0; i < o.T; ++i) pts[i] = i;
    pts[1] = pts[0];
    const auto base = gg::make_configuration(pts, o.T);
    const double e0 = gg::energy_config(base, prm, o.tol).value;
    std::vector<double> hs = o.schedule;
    if (hs.empty())
      for (int k = 0; k < 9; ++k) hs.push_back(1e-4 * std::pow(10.0, k / 4.0));
    gg::SweepTable tab;
    tab.p = o.p;
    tab.T = o.T;
    tab.label = "cusp";
    const auto law = gg::cusp_expansion(2, prm);
    tab.target = law.exponent;
    for (size_t i = 0; i < hs.size(); ++i) {
      auto moved = pts;
      moved[1] += hs[i];
      const double e =
          gg::energy_config(gg::make_configuration(moved, o.T), prm, o.tol)
              .value;
      gg::SweepRow row;
      row.param = hs[i];
      row.raw = e - e0;
      row.scaled = std::log(std::fabs(row.raw));
      if (i >= 1)
        row.extrapolant = (row.scaled - tab.rows[i - 1].scaled) /
                          (std::log(hs[i]) - std::log(hs[i - 1]));
      tab.rows.push_back(row);
    }
    tab.fitted_slope = tab.rows.back().extrapolant;
    json j = gg::sweep_json(tab);
    j["law"] = {{"coefficient", law.coefficient}, {"exponent", law.exponent}};
    std::cout << j.dump(2) << "\n";
    if (!o.out.empty()) gg::emit_table(tab, o.format, o.out);
  } else if (o.command == "estimates") {
    prm.d = 1;
    const auto cfg = build_config(o);
    const auto full = gg::energy_config(cfg, prm, o.tol);
    const double F0 = gg::energy_zero(cfg, o.p);
    std::vector<double> radii = o.schedule;
    if (radii.empty()) radii = {3.0 * o.T, 5.0 * o.T, 10.0 * o.T};
    gg::SweepTable tab;
    tab.p = o.p;
    tab.T = o.T;
    tab.label = "estimates";
    tab.target = full.value;
    for (double R : radii) {
      const double core = gg::energy_config_core(cfg, prm, R, o.tol);
      const auto tails = gg::tail_sandwich(F0, R, prm);
      gg::SweepRow row;
      row.param = R;
      row.raw = core;
      row.scaled = core + tails.lower;       // certified lower bound
      row.extrapolant = core + tails.upper;  // certified upper bound
      tab.rows.push_back(row);
    }
    std::cout << gg::sweep_json(tab).dump(2) << "\n";
    if (!o.out.empty()) gg::emit_table(tab, o.format, o.out);
  } else {
    throw gg::InvalidConfiguration("unknown command: " + o.command);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;

  // pre-scan for --spec so flag values override the spec file
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--spec") o.spec_path = argv[i + 1];
  try {
    if (!o.spec_path.empty()) load_spec_defaults(o.spec_path, o);
  } catch (const gg::Error& e) {
    std::cerr << json{{"kind", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return e.error_class() == gg::ErrorClass::Io ? 4 : 2;
  }

  CLI::App app{
      "Periodic fractional (s,p)-Gagliardo energies of jump configurations: "
      "evaluation, variations, limit sweeps, and descent to the equispaced "
      "minimiser"};
  app.add_option("command", o.command,
                 "one of: energy energy0 mollified gradient hessian optimize "
                 "sweep-s0 sweep-s1 critical-scan cusp-scan estimates")
      ->required(o.command.empty());
  app.add_option("--spec", o.spec_path, "JSON spec file (flags override it)");
  app.add_option("--s", o.s, "fractional order s in (0,1)");
  app.add_option("--p", o.p, "integrability exponent p >= 1");
  app.add_option("--T", o.T, "integer period / number of jumps");
  app.add_option("--d", o.d, "dimension (constants only for d >= 2)");
  app.add_option("--eps", o.eps, "mollification radius");
  app.add_flag("--equispaced", o.use_equispaced, "use the equispaced configuration");
  std::string points_text;
  app.add_option("--points", points_text, "comma-separated jump positions");
  app.add_flag("--random", o.use_random, "use a seeded random configuration");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--min-gap", o.min_gap, "minimum circular gap for --random");
  std::string schedule_text;
  app.add_option("--schedule", schedule_text, "comma-separated schedule values");
  app.add_option("--tol", o.tol, "quadrature tolerance");
  app.add_option("--out", o.out, "output artifact path");
  app.add_option("--format", o.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!points_text.empty()) o.points = parse_list(points_text);
  if (!schedule_text.empty()) o.schedule = parse_list(schedule_text);

  try {
    return run(o);
  } catch (const gg::Error& e) {
    std::cerr << json{{"kind", e.kind()}, {"message", e.what()}}.dump() << "\n";
    switch (e.error_class()) {
      case gg::ErrorClass::Validation:
        return 2;
      case gg::ErrorClass::Numerical:
        return 3;
      case gg::ErrorClass::Io:
        return 4;
    }
    return 3;
  } catch (const std::exception& e) {
    std::cerr << json{{"kind", "InternalError"}, {"message", e.what()}}.dump()
              << "\n";
    return 3;
  }
}
