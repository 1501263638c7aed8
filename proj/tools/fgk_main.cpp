// Command-line scenario runner: criteria, green, kernel-check, iterate, solve.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fgk/config.hpp"
#include "fgk/criteria.hpp"
#include "fgk/discrete.hpp"
#include "fgk/green.hpp"
#include "fgk/iterate.hpp"
#include "fgk/version.hpp"

namespace {

using fgk::ScenarioConfig;
using nlohmann::json;

const char* status_name(fgk::IntegralStatus s) {
  switch (s) {
    case fgk::IntegralStatus::Finite: return "finite";
    case fgk::IntegralStatus::DivergentByExponent: return "divergent-by-exponent";
    case fgk::IntegralStatus::NumericDivergent: return "numeric-divergent";
    case fgk::IntegralStatus::FiniteNumeric: return "finite-numeric";
  }
  return "unknown";
}

const char* existence_name(fgk::Existence e) {
  switch (e) {
    case fgk::Existence::Exists: return "exists";
    case fgk::Existence::NotExists: return "not-exists";
    case fgk::Existence::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

// JSON has no infinity literal; keep the textual convention instead of null
json num(double v) {
  if (std::isfinite(v)) return v;
  return fgk::format_double(v);
}

json integral_json(const fgk::IntegralResult& r) {
  json out{{"status", status_name(r.status)},
           {"value", r.value},
           {"rel_error_estimate", r.rel_error_estimate}};
  if (r.tail_exponent) out["tail_exponent"] = *r.tail_exponent;
  return out;
}

int grid_dimension(const ScenarioConfig& cfg) {
  const double n = cfg.model.n;
  const double rounded = std::round(n);
  if (std::fabs(n - rounded) > 1e-9)
    throw fgk::DomainError("grid solver needs an integer dimension n");
  return static_cast<int>(rounded);
}

fgk::DiscreteKernelSpace make_space(const ScenarioConfig& cfg) {
  if (cfg.discrete.kernel == "riesz")
    return fgk::make_riesz_space(cfg.discrete.points, cfg.model.n,
                                 cfg.model.alpha, cfg.discrete.seed);
  return fgk::make_random_quasi_metric_space(cfg.discrete.points,
                                             cfg.discrete.seed);
}

// --- subcommand runners, each returning the results payload ---

json run_criteria(const ScenarioConfig& cfg) {
  const fgk::VolumeProfile vol = fgk::make_volume(cfg);
  const fgk::MeasureProfile meas = fgk::make_measure(cfg);
  const auto xs = cfg.x_grid.values();
  const auto rs = cfg.r_grid.values();
  const fgk::CriterionReport rep =
      fgk::evaluate_criteria(vol, meas, cfg.model, xs, rs);

  json out;
  out["transient"] = rep.transient == fgk::TransienceStatus::Transient;
  out["cond_int1"] = integral_json(rep.cond_int1);
  out["cond_int2"] = json{
      {"sup_estimate", rep.cond_int2.sup_estimate},
      {"verdict", rep.cond_int2.verdict == fgk::BoundednessVerdict::Bounded
                      ? "bounded"
                      : "unbounded-trend"},
      {"brackets_agree", rep.cond_int2.brackets_agree}};
  if (rep.cond_int1b) out["cond_int1b"] = integral_json(*rep.cond_int1b);
  if (rep.henon_threshold) out["henon_threshold"] = *rep.henon_threshold;
  out["existence_verdict"] = existence_name(rep.existence_verdict);
  return out;
}

json run_green(const ScenarioConfig& cfg) {
  cfg.model.validate(/*require_q_gt_1=*/false, /*require_transient_dim=*/true);
  const fgk::VolumeProfile vol = fgk::make_volume(cfg);
  const auto ds = cfg.r_grid.values();
  const auto [ratio_lo, ratio_hi] =
      fgk::comparison_ratio(vol, cfg.model.n, cfg.model.alpha, ds);

  json rows = json::array();
  for (double d : ds) {
    rows.push_back(json{
        {"d", d},
        {"g_riesz", fgk::green_riesz(cfg.model.n, cfg.model.alpha, d).value},
        {"g_subord",
         fgk::green_subordinated_euclidean(cfg.model.n, cfg.model.alpha, d)
             .value},
        {"g_volest",
         fgk::green_volume_estimate(vol, cfg.model.alpha, d).value},
        {"ratio_lo", ratio_lo},
        {"ratio_hi", ratio_hi}});
  }
  return json{{"rows", rows}};
}

json run_kernel_check(const ScenarioConfig& cfg) {
  fgk::DiscreteKernelSpace space = make_space(cfg);
  // concentrate the measure on the first half so the minimality bound has
  // non-trivial evaluation points
  for (size_t i = space.size() / 2 + 1; i < space.size(); ++i)
    space.weights[i] = 0.0;
  const fgk::QuasiMetricResult qm = fgk::quasi_metric_constant(space);
  json out;
  out["kappa"] = num(qm.kappa);
  out["kappa_witness"] = json{{"x", qm.witness.x},
                              {"y", qm.witness.y},
                              {"z", qm.witness.z},
                              {"ratio", qm.witness.ratio}};
  const fgk::PtolemyResult pt = fgk::ptolemy_check(space);
  out["ptolemy"] = json{{"holds", pt.holds},
                        {"minimal_constant", num(pt.minimal_constant)},
                        {"kappa_sq", num(pt.kappa_sq)}};
  const fgk::WmpReport wmp = fgk::wmp_constant(space);
  out["wmp"] = json{{"constant_b", wmp.constant_b},
                    {"lp_cells_solved", wmp.lp_cells_solved}};
  if (wmp.witness)
    out["wmp"]["witness"] =
        json{{"subset", wmp.witness->subset}, {"x", wmp.witness->x}};
  out["b_le_kappa"] = wmp.constant_b <= qm.kappa * (1.0 + 1e-9);
  const fgk::MinimalityResult min =
      fgk::minimality_bound(space, 0, cfg.model.a);
  out["minimality"] = json{{"min_ratio", num(min.min_ratio)},
                           {"proof_bound", num(min.proof_bound)},
                           {"holds", min.holds}};
  return out;
}

json run_iterate(const ScenarioConfig& cfg) {
  cfg.model.validate(/*require_q_gt_1=*/true, /*require_transient_dim=*/false);
  fgk::DiscreteKernelSpace space = make_space(cfg);
  double max_off = 0.0;
  for (size_t i = 0; i < space.size(); ++i)
    for (size_t j = i + 1; j < space.size(); ++j)
      max_off = std::max(max_off, space.kernel[i][j]);
  space = fgk::truncate_kernel(space, 10.0 * max_off);
  // scale the measure into the contractive regime so deep iterates stay finite
  double f0_max = 0.0;
  for (size_t x = 0; x < space.size(); ++x) {
    double s = 0.0;
    for (size_t j = 0; j < space.size(); ++j)
      s += space.kernel[x][j] * space.weights[j];
    f0_max = std::max(f0_max, s);
  }
  for (double& w : space.weights) w *= 0.5 / f0_max;

  const fgk::IterationTrace trace =
      fgk::run_iteration(space, cfg.model.q, cfg.discrete.depth);
  json rows = json::array();
  for (size_t k = 0; k < trace.bound_checks.size(); ++k) {
    size_t pass = 0;
    for (bool ok : trace.bound_checks[k]) pass += ok ? 1 : 0;
    rows.push_back(json{{"k", k + 1},
                        {"c_qk", num(trace.c_qk[k])},
                        {"points_checked", trace.bound_checks[k].size()},
                        {"points_passed", pass}});
  }
  return json{{"wmp_b", trace.wmp_b},
              {"truncated", trace.truncated},
              {"all_checks_pass", trace.all_checks_pass()},
              {"per_depth", rows}};
}

json run_solve(const ScenarioConfig& cfg, int threads) {
  cfg.model.validate(/*require_q_gt_1=*/true, /*require_transient_dim=*/true);
  const int dim = grid_dimension(cfg);
  bool dirac = false;
  double gamma = cfg.model.gamma;
  if (cfg.measure.kind == "dirac")
    dirac = true;
  else if (cfg.measure.kind == "same-as-volume")
    gamma = 0.0;
  else if (cfg.measure.kind != "power-density")
    throw fgk::DomainError("solve: measure kind not supported on grids");
  const fgk::EtaSpec eta{cfg.picard.eta_radius, cfg.picard.eta_strength};
  const auto sweep = fgk::picard_sweep(
      dim, cfg.model.alpha, cfg.model.q, gamma, cfg.picard.R_max,
      cfg.picard.h, eta, cfg.model.a, cfg.picard.max_iters, cfg.picard.tol,
      threads, dirac);

  json rows = json::array();
  for (const auto& e : sweep)
    rows.push_back(json{{"R_max", e.R_max},
                        {"converged", e.result.converged},
                        {"blew_up", e.result.blew_up},
                        {"iterations", e.result.iterations},
                        {"residual", e.result.residual},
                        {"eta_scale", e.result.eta_scale},
                        {"domination_c", e.result.domination_c}});

  const double largest =
      *std::max_element(cfg.picard.R_max.begin(), cfg.picard.R_max.end());
  const fgk::GridProblem prob =
      fgk::build_grid_problem(dim, cfg.model.alpha, cfg.model.q, gamma,
                              largest, cfg.picard.h, eta, dirac);
  const fgk::EquivalenceProbe probe =
      fgk::equivalence_probe(prob, cfg.model.a, threads);
  return json{{"sweep", rows},
              {"equivalence",
               {{"picard_exists", probe.picard_exists},
                {"pointwise_domination", probe.pointwise_domination},
                {"int_m_q_finite", probe.int_m_q_finite},
                {"sup_condition", probe.sup_condition},
                {"agree", probe.agree},
                {"picard_c_ratio", probe.picard_c_ratio},
                {"domination_c_ratio", probe.domination_c_ratio},
                {"mass_ratio", probe.mass_ratio},
                {"sup_ratio_spread", probe.sup_ratio_spread}}}};
}

// --- output plumbing ---

void csv_from_json(std::ostream& os, const std::string& command,
                   const json& results) {
  // flat commands emit key,value; tabular ones emit their natural columns
  const auto emit_scalar_rows = [&](const json& obj, const std::string& prefix) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
      if (it->is_object()) {
        for (auto jt = it->begin(); jt != it->end(); ++jt)
          if (!jt->is_structured())
            os << key << "." << jt.key() << "," << jt->dump() << "\n";
      } else if (!it->is_structured()) {
        os << key << "," << it->dump() << "\n";
      }
    }
  };

  if (command == "green") {
    os << "d,g_riesz,g_subord,g_volest,ratio_lo,ratio_hi\n";
    for (const auto& row : results.at("rows"))
      os << fgk::format_double(row.at("d").get<double>()) << ','
         << fgk::format_double(row.at("g_riesz").get<double>()) << ','
         << fgk::format_double(row.at("g_subord").get<double>()) << ','
         << fgk::format_double(row.at("g_volest").get<double>()) << ','
         << fgk::format_double(row.at("ratio_lo").get<double>()) << ','
         << fgk::format_double(row.at("ratio_hi").get<double>()) << '\n';
    return;
  }
  os << "key,value\n";
  emit_scalar_rows(results, "");
}

void emit(const ScenarioConfig& cfg, const std::string& command,
          const json& results, const std::string& out_path,
          const std::string& format) {
  std::ostringstream body;
  if (format == "json") {
    const json doc{{"schema_version", cfg.schema_version},
                   {"version", std::string(fgk::kToolName) + " " +
                                   fgk::kToolVersion},
                   {"command", command},
                   {"config", cfg.to_json()},
                   {"results", results}};
    body << doc.dump(2) << "\n";
  } else {
    body << "# schema_version=" << cfg.schema_version << "\n";
    body << "# version=" << fgk::kToolName << " " << fgk::kToolVersion << "\n";
    body << "# command=" << command << "\n";
    body << "# config=" << cfg.to_json().dump() << "\n";
    csv_from_json(body, command, results);
  }
  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw fgk::ConfigError("cannot open output path " + out_path);
    os << body.str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional Green kernel toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path, format;
  long long seed_override = -1;
  int threads = 1;
  app.add_option("--config", config_path, "scenario config file (JSON)")
      ->required();
  app.add_option("--out", out_path, "output path (default: config, else stdout)");
  app.add_option("--format", format, "csv or json (overrides config)");
  app.add_option("--seed", seed_override, "seed override for discrete specs");
  app.add_option("--threads", threads, "worker thread count");
  app.fallthrough();

  const char* names[] = {"criteria", "green", "kernel-check", "iterate",
                         "solve"};
  for (const char* n : names) app.add_subcommand(n);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ScenarioConfig cfg = fgk::load_config(config_path);
    if (seed_override >= 0)
      cfg.discrete.seed = static_cast<uint64_t>(seed_override);
    if (!format.empty()) {
      if (format != "json" && format != "csv")
        throw fgk::ConfigError("--format must be json or csv");
      cfg.output.format = format;
    }
    if (!out_path.empty()) cfg.output.path = out_path;
    if (threads < 1) throw fgk::ConfigError("--threads must be >= 1");

    std::string command;
    json results;
    if (app.got_subcommand("criteria")) {
      command = "criteria";
      results = run_criteria(cfg);
    } else if (app.got_subcommand("green")) {
      command = "green";
      results = run_green(cfg);
    } else if (app.got_subcommand("kernel-check")) {
      command = "kernel-check";
      results = run_kernel_check(cfg);
    } else if (app.got_subcommand("iterate")) {
      command = "iterate";
      results = run_iterate(cfg);
    } else {
      command = "solve";
      results = run_solve(cfg, threads);
    }
    emit(cfg, command, results, cfg.output.path, cfg.output.format);
    return 0;
  } catch (const fgk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const fgk::ResourceGuardError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 4;
  } catch (const fgk::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
