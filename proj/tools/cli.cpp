#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "rellich/constants.hpp"
#include "rellich/errors.hpp"
#include "rellich/minimizer.hpp"
#include "rellich/mountain_pass.hpp"
#include "rellich/parallel.hpp"
#include "rellich/report_io.hpp"
#include "rellich/test_functions.hpp"

namespace rellich::cli {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::vector<int> dims{8};
  std::vector<double> s_values{0.0};
  std::vector<double> gammas{0.0};
  std::vector<double> eps;
  double a = 1.0;
  double delta = 0.25;
  std::size_t grid_points = 4096;
  double t_min = -20.0;
  double t_max = 20.0;
  std::string out;
  int jobs = 1;
  std::uint64_t seed = 20240601;
  std::string task = "minimize";
  int starts = 1;
  std::optional<double> r1, r2, r3;
  std::optional<double> c0, c1, c2;
  std::string cutoff = "quintic";
  double cutoff_width = 1.0;
  double spacing = 0.004;
  int angular_nodes = 48;
  int trace_points = 0;
  std::uint64_t mc_samples = 200000;
};

// Each artifact is stem.json plus named CSV files written under --out.
struct Artifacts {
  Json report;
  std::vector<std::pair<std::string, std::string>> files;
};

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

template <class T>
T single(const std::vector<T>& values, const char* flag) {
  if (values.size() != 1) throw ConfigurationError(std::string(flag) + " takes a single value for this command");
  return values.front();
}

DimensionConfig single_config(const RunConfig& rc) {
  DimensionConfig cfg{single(rc.dims, "--dim"), single(rc.s_values, "--s"), single(rc.gammas, "--gamma")};
  validate_dimension(cfg);
  return cfg;
}

LogGrid grid_of(const RunConfig& rc) { return LogGrid(rc.t_min, rc.t_max, rc.grid_points); }

CutoffSpec cutoff_of(const RunConfig& rc) {
  CutoffSpec cut;
  if (rc.cutoff == "log") {
    cut.inner = {CutoffFamily::LogSmoothstep, rc.cutoff_width};
  } else if (rc.cutoff != "quintic") {
    throw ConfigurationError("--cutoff must be 'quintic' or 'log'");
  }
  cut.validate();
  return cut;
}

BubbleQuadrature quadrature_of(const RunConfig& rc) { return {rc.spacing, rc.angular_nodes}; }

Json config_json(const DimensionConfig& cfg) { return Json{{"N", cfg.N}, {"s", cfg.s}, {"gamma", cfg.gamma}}; }

Json roots_json(const IndicialRoots& r) {
  return Json{{"alpha_minus", r.alpha_minus},
              {"alpha_plus", r.alpha_plus},
              {"beta_minus", r.beta_minus},
              {"beta_plus", r.beta_plus},
              {"residuals", Json{{"alpha_minus", r.residuals[0]},
                                 {"alpha_plus", r.residuals[1]},
                                 {"beta_minus", r.residuals[2]},
                                 {"beta_plus", r.residuals[3]}}},
              {"coefficient_scale", r.coefficient_scale}};
}

Json ray_json(const RayAnalysis& r) {
  return Json{{"R1", number(r.R1)},         {"R2", number(r.R2)},         {"R3", number(r.R3)},
              {"t_max", number(r.t_max)},   {"sup_f1", number(r.sup_f1)}, {"t_star", number(r.t_star)},
              {"e_sup", number(r.e_sup)},   {"strict_gap", number(r.strict_gap)}};
}

Artifacts cmd_constants(const RunConfig& rc) {
  const DimensionConfig cfg = single_config(rc);
  validate_subcritical(cfg);
  const HardyConstants hc = hardy_constants(cfg.N);
  const double qs = critical_exponent(cfg);
  const double q0 = critical_exponent(cfg.N, 0.0);
  Artifacts a;
  a.report = config_json(cfg);
  a.report["critical_exponent"] = qs;
  a.report["critical_exponent_0"] = q0;
  a.report["hardy"] = Json{{"interior", hc.interior}, {"half_space", hc.half_space},
                           {"cone_min_index", hc.cone_min_index}};
  a.report["indicial_roots"] = roots_json(indicial_roots(cfg));
  a.report["sphere_moments"] = Json{{"w2", sphere_moment(cfg.N, 2.0)},
                                    {"w_critical_s", sphere_moment(cfg.N, qs)},
                                    {"w_critical_0", sphere_moment(cfg.N, q0)},
                                    {"full_sphere_area", sphere_area(cfg.N)}};
  a.report["monte_carlo"] = Json{{"seed", rc.seed},
                                 {"samples", rc.mc_samples},
                                 {"w2", sphere_moment_monte_carlo(cfg.N, 2.0, rc.mc_samples, rc.seed)}};
  a.report["sobolev_constant"] = sobolev_constant_closed_form(cfg.N);
  return a;
}

Artifacts cmd_roots(const RunConfig& rc) {
  const DimensionConfig cfg = single_config(rc);
  const IndicialRoots r = indicial_roots(cfg);
  Artifacts a;
  a.report = config_json(cfg);
  a.report["indicial_roots"] = roots_json(r);
  Json p = Json::object();
  p["alpha_minus"] = indicial_polynomial(cfg.N, r.alpha_minus);
  p["alpha_plus"] = indicial_polynomial(cfg.N, r.alpha_plus);
  p["beta_minus"] = indicial_polynomial(cfg.N, r.beta_minus);
  p["beta_plus"] = indicial_polynomial(cfg.N, r.beta_plus);
  a.report["indicial_polynomial"] = p;
  const auto c = indicial_quartic_coefficients(cfg.N, cfg.gamma);
  a.report["quartic_coefficients"] = Json(std::vector<double>(c.begin(), c.end()));
  return a;
}

Artifacts cmd_hardy_seq(const RunConfig& rc) {
  const int N = single(rc.dims, "--dim");
  const std::vector<double> ladder = rc.eps.empty() ? std::vector<double>{1e-2, 1e-3, 1e-4, 1e-5} : rc.eps;
  const HardySequenceStudy study = hardy_sequence_study(N, ladder, cutoff_of(rc));
  CsvTable table({"epsilon", "bending", "hardy", "ratio"});
  Json rows = Json::array();
  for (const auto& row : study.rows) {
    table.add_row({row.epsilon, row.bending, row.hardy, row.ratio});
    rows.push_back(Json{{"epsilon", row.epsilon}, {"ratio", row.ratio}});
  }
  Artifacts a;
  a.report = Json{{"N", N},
                  {"cutoff", rc.cutoff},
                  {"target_ratio", study.target_ratio},
                  {"bending_slope", study.bending_slope},
                  {"expected_bending_slope", study.expected_bending_slope},
                  {"hardy_slope", study.hardy_slope},
                  {"expected_hardy_slope", study.expected_hardy_slope},
                  {"slope_ratio", study.slope_ratio},
                  {"ratio_trend_monotone", study.monotone},
                  {"rows", rows}};
  a.files.emplace_back("hardy_seq.csv", table.str());
  return a;
}

Json fit_json(const std::vector<EpsilonSample>& points, int N, double a) {
  Json j = Json::object();
  try {
    const AsymptoticFit fit = fit_asymptotics(points, N);
    j["model"] = fit.regime;
    j["coefficient"] = fit.coefficient;
    j["residual"] = fit.residual;
    j["regime"] = fit.regime;
    j["correction"] = fit.correction;
    const double a4 = std::pow(a, -4.0);
    if (N >= 9) {
      const double full = bubble_l2_mass(N) * a4;
      j["leading_constant"] = Json{{"candidate_one", full},
                                   {"candidate_half", 0.5 * full},
                                   {"ratio_to_one", fit.coefficient / full},
                                   {"resolved", std::abs(fit.coefficient / full - 1.0) <
                                                        std::abs(fit.coefficient / (0.5 * full) - 1.0)
                                                    ? "1"
                                                    : "1/2"}};
    } else if (N == 8) {
      const double w7 = sphere_area(8) * a4;
      j["leading_constant"] = Json{{"expected", w7}, {"relative_difference", fit.coefficient / w7 - 1.0}};
    }
  } catch (const FitRejectedError& e) {
    j["model"] = regime_tag(regime_for_dimension(N));
    j["rejected"] = true;
    j["residual"] = e.residual();
    j["point_residuals"] = e.point_residuals();
  }
  const RegimeClassification c = classify_regime(points, N);
  j["classification"] = Json{{"regime", c.regime},
                             {"residual_eps4", c.residuals[0]},
                             {"residual_eps4log", c.residuals[1]},
                             {"residual_epsN-4", c.residuals[2]}};
  return j;
}

Artifacts cmd_bubble(const RunConfig& rc) {
  const DimensionConfig cfg = single_config(rc);
  validate_subcritical(cfg);
  const std::vector<double> ladder = rc.eps.empty() ? default_epsilon_ladder() : rc.eps;
  const UpperBoundScan scan =
      strict_upper_bound_scan(cfg.N, rc.a, rc.delta, cfg.gamma, ladder, quadrature_of(rc), rc.jobs);
  CsvTable table({"epsilon", "bending", "hardy", "sobolev0", "quotient"});
  Json rows = Json::array();
  std::vector<EpsilonSample> points;
  for (const auto& row : scan.rows) {
    const auto& e = row.energies;
    table.add_row({row.epsilon, e.energies.bending, e.energies.hardy, e.energies.sobolev_0, e.quotient});
    Json r{{"epsilon", row.epsilon},
           {"deficit", e.deficit},
           {"deficit_error", e.deficit_error},
           {"hardy_error", e.hardy_error},
           {"hardy_shell_fraction", e.hardy_shell / e.energies.hardy}};
    if (!e.warning.empty()) r["warning"] = e.warning;
    rows.push_back(r);
    points.emplace_back(row.epsilon, e.energies.hardy);
  }
  Artifacts a;
  a.report = Json{{"N", cfg.N}, {"gamma", cfg.gamma}, {"a", rc.a}, {"delta", rc.delta}};
  Json fit = points.size() >= 4 ? fit_json(points, cfg.N, rc.a) : Json{{"skipped", "needs at least 4 epsilon values"}};
  for (auto& [key, value] : fit.items()) a.report[key] = value;
  const auto& best = scan.rows[scan.min_index];
  a.report["sobolev"] = Json{{"estimate", scan.s_n_estimate}, {"closed_form", scan.s_n_closed_form}};
  a.report["strict_inequality"] = Json{{"min_epsilon", best.epsilon},
                                       {"min_quotient", best.energies.quotient},
                                       {"min_deficit", best.energies.deficit},
                                       {"error_bar", best.energies.deficit_error},
                                       {"strictly_below", scan.strictly_below},
                                       {"all_above_tolerance", scan.above_from_below_tolerance}};
  a.report["rows"] = rows;
  a.files.emplace_back("bubble.csv", table.str());
  return a;
}

Json minimizer_json(const QuotientBound& b, const LogGrid& grid) {
  const auto& m = b.ansatz;
  Json j = config_json(b.cfg);
  j["q_estimate"] = b.bound;
  j["el_residual"] = m.el_residual;
  j["iterations"] = m.iterations;
  j["grid"] = Json{{"t_min", grid.t_min()}, {"t_max", grid.t_max()}, {"n_points", grid.size()}};
  j["channel"] = b.channel;
  j["label"] = b.channel == "bubble" ? "upper bound (cut-off bubble)" : "upper bound (symmetric ansatz)";
  j["ansatz_q"] = m.q_estimate;
  j["discrete_residual"] = m.discrete_residual;
  j["stop_reason"] = m.stop_reason;
  j["objective_initial"] = m.objective_history.front();
  j["start_values"] = b.start_values;
  if (b.bubble_bound) {
    j["bubble_q"] = *b.bubble_bound;
    j["sobolev_estimate"] = b.s_n_estimate;
    j["below_sobolev"] = b.below_sobolev;
  }
  return j;
}

Artifacts cmd_minimize(const RunConfig& rc) {
  const DimensionConfig cfg = single_config(rc);
  validate_subcritical(cfg);
  const LogGrid grid = grid_of(rc);
  const QuotientBound bound = q_upper_bound_report(cfg, grid, rc.starts, rc.jobs);
  Artifacts a;
  a.report = minimizer_json(bound, grid);
  std::ostringstream profile;
  write_profile_csv(profile, bound.ansatz.profile);
  a.files.emplace_back("profile.csv", profile.str());
  return a;
}

Artifacts cmd_mountain_pass(const RunConfig& rc) {
  const DimensionConfig cfg = single_config(rc);
  Artifacts a;
  a.report = config_json(cfg);
  RayAnalysis ray;
  if (rc.r1 || rc.r2 || rc.r3) {
    if (!(rc.r1 && rc.r2 && rc.r3)) throw ConfigurationError("--R1, --R2 and --R3 must be given together");
    ray = ray_analysis(*rc.r1, *rc.r2, *rc.r3, cfg);
    a.report["ray"] = ray_json(ray);
  } else {
    validate_subcritical(cfg);
    if (cfg.s >= 4.0) throw DomainError("mountain-pass levels require s < 4");
    const LogGrid grid = grid_of(rc);
    const DimensionConfig cfg0{cfg.N, 0.0, cfg.gamma};
    const QuotientBound q0 = q_upper_bound_report(cfg0, grid, rc.starts, rc.jobs);
    const QuotientBound qs = cfg.s == 0.0 ? q0 : q_upper_bound_report(cfg, grid, rc.starts, rc.jobs);
    ray = ray_scan(q0.ansatz.profile, cfg);
    const double beta = ray.e_sup;
    const LevelWindow window = level_window_check(beta, q0.bound, qs.bound, cfg);
    const auto [cap_hs, cap_s] = ps_level_bounds(beta, cfg);
    a.report["ray"] = ray_json(ray);
    a.report["q0"] = Json{{"value", q0.bound}, {"channel", q0.channel}};
    a.report["qs"] = Json{{"value", qs.bound}, {"channel", qs.channel}};
    a.report["beta"] = beta;
    a.report["level_window"] = Json{{"beta_star", window.beta_star}, {"margin", window.margin},
                                    {"admissible", window.admissible}};
    a.report["ps_caps"] = Json{{"hardy_sobolev", number(cap_hs)}, {"sobolev", cap_s}};
  }
  if (rc.c0 || rc.c1 || rc.c2) {
    if (!(rc.c0 && rc.c1 && rc.c2)) throw ConfigurationError("--c0, --c1 and --c2 must be given together");
    const MountainPassFloor floor = mountain_pass_floor(*rc.c0, *rc.c1, *rc.c2, cfg);
    a.report["floor"] = Json{{"r0", floor.r0}, {"lambda", floor.lambda}};
  }
  if (rc.trace_points > 0) {
    const double t_end = 2.0 * std::max(ray.t_star, std::isfinite(ray.t_max) ? ray.t_max : 0.0);
    CsvTable table({"t", "E"});
    for (const auto& [t, e] : ray_trace(ray, cfg, t_end, rc.trace_points)) table.add_row({t, e});
    a.files.emplace_back("ray.csv", table.str());
  }
  return a;
}

// Sweep: one row per point of the cartesian product, failures recorded per row.
struct SweepPoint {
  DimensionConfig cfg;
  std::optional<double> epsilon;
};

std::vector<std::string> sweep_columns(const std::string& task) {
  if (task == "constants") return {"critical_exponent", "interior", "half_space"};
  if (task == "roots") return {"alpha_minus", "alpha_plus", "beta_minus", "beta_plus", "max_residual"};
  if (task == "minimize") return {"q_estimate", "el_residual", "iterations"};
  if (task == "hardy-seq") return {"bending", "hardy", "ratio"};
  if (task == "bubble") return {"bending", "hardy", "sobolev0", "quotient", "deficit"};
  throw ConfigurationError("--task must be one of constants, roots, minimize, hardy-seq, bubble");
}

std::vector<CsvCell> sweep_values(const RunConfig& rc, const SweepPoint& p) {
  const DimensionConfig& cfg = p.cfg;
  validate_dimension(cfg);
  if (rc.task == "constants") {
    validate_subcritical(cfg);
    return {critical_exponent(cfg), hardy_interior(cfg.N), hardy_half_space(cfg.N)};
  }
  if (rc.task == "roots") {
    const IndicialRoots r = indicial_roots(cfg);
    double worst = 0.0;
    for (double x : r.residuals) worst = std::max(worst, x);
    return {r.alpha_minus, r.alpha_plus, r.beta_minus, r.beta_plus, worst};
  }
  if (rc.task == "minimize") {
    const MinimizerReport m = minimize_quotient(cfg, grid_of(rc));
    return {m.q_estimate, m.el_residual, static_cast<long long>(m.iterations)};
  }
  if (rc.task == "hardy-seq") {
    const EnergyBreakdown e = energies(hardy_sequence(cfg.N, *p.epsilon, cutoff_of(rc)), {cfg.N, 0.0, 0.0});
    return {e.bending, e.hardy, hardy_ratio(e)};
  }
  validate_subcritical(cfg);
  const BubbleEnergies b = bubble_energies({cfg.N, *p.epsilon, rc.a, rc.delta, true}, cfg.gamma, quadrature_of(rc));
  return {b.energies.bending, b.energies.hardy, b.energies.sobolev_0, b.quotient, b.deficit};
}

struct SweepOutcome {
  Artifacts artifacts;
  bool all_failed = false;
  bool all_validation = false;
};

SweepOutcome cmd_sweep(const RunConfig& rc) {
  const auto columns = sweep_columns(rc.task);
  const bool per_epsilon = rc.task == "hardy-seq" || rc.task == "bubble";
  std::vector<double> ladder = rc.eps;
  if (per_epsilon && ladder.empty()) ladder = default_epsilon_ladder();
  std::vector<SweepPoint> points;
  for (int N : rc.dims) {
    for (double s : rc.s_values) {
      for (double g : rc.gammas) {
        if (per_epsilon) {
          for (double e : ladder) points.push_back({{N, s, g}, e});
        } else {
          points.push_back({{N, s, g}, std::nullopt});
        }
      }
    }
  }
  std::vector<std::vector<CsvCell>> values(points.size());
  std::vector<std::string> errors(points.size());
  std::vector<bool> validation(points.size(), false);
  parallel_for(points.size(), rc.jobs, [&](std::size_t i) {
    try {
      values[i] = sweep_values(rc, points[i]);
    } catch (const NumericalError& e) {
      errors[i] = e.what();
    } catch (const Error& e) {
      errors[i] = e.what();
      validation[i] = true;
    }
  });
  std::vector<std::string> header = {"N", "s", "gamma"};
  if (per_epsilon) header.push_back("epsilon");
  header.insert(header.end(), columns.begin(), columns.end());
  header.push_back("errors");
  CsvTable table(header);
  std::size_t failures = 0;
  bool only_validation = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<CsvCell> row = {static_cast<long long>(points[i].cfg.N), points[i].cfg.s, points[i].cfg.gamma};
    if (per_epsilon) row.emplace_back(*points[i].epsilon);
    if (errors[i].empty()) {
      row.insert(row.end(), values[i].begin(), values[i].end());
    } else {
      ++failures;
      only_validation = only_validation && validation[i];
      for (std::size_t k = 0; k < columns.size(); ++k) row.emplace_back(std::string());
    }
    row.emplace_back(errors[i]);
    table.add_row(std::move(row));
  }
  SweepOutcome outcome;
  outcome.artifacts.report = Json{{"task", rc.task}, {"points", points.size()}, {"failures", failures}};
  outcome.artifacts.files.emplace_back("sweep.csv", table.str());
  outcome.all_failed = !points.empty() && failures == points.size();
  outcome.all_validation = only_validation;
  return outcome;
}

void emit(const RunConfig& rc, const std::string& stem, const Artifacts& a, std::ostream& out) {
  const std::string json = a.report.dump(2) + "\n";
  out << json;
  if (rc.out.empty()) return;
  const std::filesystem::path dir(rc.out);
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw ConfigurationError("cannot write " + (dir / name).string());
    f << content;
  };
  write(stem + ".json", json);
  for (const auto& [name, content] : a.files) write(name, content);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for the fourth-order Hardy-Rellich problem on the half-space", "rellich-lab"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "flat 'key = value' file; command-line flags take precedence");
  RunConfig rc;
  app.add_option("--dim", rc.dims, "dimension N (comma list for sweep)")->delimiter(',');
  app.add_option("--s", rc.s_values, "Hardy-Sobolev exponent s (comma list for sweep)")->delimiter(',');
  app.add_option("--gamma", rc.gammas, "Hardy parameter gamma (comma list for sweep)")->delimiter(',');
  app.add_option("--eps", rc.eps, "epsilon ladder, comma separated")->delimiter(',');
  app.add_option("--a", rc.a, "bubble centre distance, x0 = a e1");
  app.add_option("--delta", rc.delta, "bubble cutoff radius");
  app.add_option("--grid-points", rc.grid_points, "log-grid points for profiles");
  app.add_option("--t-min", rc.t_min, "log-grid lower end (t = ln r)");
  app.add_option("--t-max", rc.t_max, "log-grid upper end");
  app.add_option("--out", rc.out, "directory for CSV and JSON artifacts");
  app.add_option("--jobs", rc.jobs, "worker threads")->envname("RELLICH_LAB_JOBS")->check(CLI::PositiveNumber);
  app.add_option("--seed", rc.seed, "seed for Monte-Carlo checks");
  app.add_option("--task", rc.task, "sweep task: constants, roots, minimize, hardy-seq, bubble");
  app.add_option("--starts", rc.starts, "deterministic minimizer starts")->check(CLI::PositiveNumber);
  app.add_option("--R1", rc.r1, "ray quadratic coefficient");
  app.add_option("--R2", rc.r2, "ray Hardy-Sobolev mass");
  app.add_option("--R3", rc.r3, "ray Sobolev mass");
  app.add_option("--c0", rc.c0, "floor constant c0");
  app.add_option("--c1", rc.c1, "floor constant c1");
  app.add_option("--c2", rc.c2, "floor constant c2");
  app.add_option("--cutoff", rc.cutoff, "inner cutoff of the Hardy sequence: quintic or log");
  app.add_option("--cutoff-width", rc.cutoff_width, "log cutoff transition width in ln r");
  app.add_option("--radial-spacing", rc.spacing, "bubble quadrature spacing in ln rho");
  app.add_option("--angular-nodes", rc.angular_nodes, "bubble quadrature angular nodes");
  app.add_option("--trace-points", rc.trace_points, "points of the t,E ray trace (0 = none)");
  app.add_option("--mc-samples", rc.mc_samples, "Monte-Carlo samples for the sphere moment check");

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"constants", "exponents, Hardy constants, indicial roots, sphere moments"},
      {"roots", "indicial roots with residual certificates"},
      {"hardy-seq", "energies of the logarithmic Hardy sequence"},
      {"bubble", "energies and asymptotics of the cut-off bubble"},
      {"minimize", "reduced Rayleigh quotient minimization"},
      {"mountain-pass", "ray analysis and level bounds"},
      {"sweep", "parameter sweep over comma lists"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  std::vector<std::string> storage = {"rellich-lab"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
  rc.command = app.get_subcommands().front()->get_name();

  try {
    if (rc.command == "constants") emit(rc, "constants", cmd_constants(rc), out);
    else if (rc.command == "roots") emit(rc, "roots", cmd_roots(rc), out);
    else if (rc.command == "hardy-seq") emit(rc, "hardy_seq", cmd_hardy_seq(rc), out);
    else if (rc.command == "bubble") emit(rc, "bubble", cmd_bubble(rc), out);
    else if (rc.command == "minimize") emit(rc, "minimize", cmd_minimize(rc), out);
    else if (rc.command == "mountain-pass") emit(rc, "mountain_pass", cmd_mountain_pass(rc), out);
    else {
      const SweepOutcome s = cmd_sweep(rc);
      emit(rc, "sweep", s.artifacts, out);
      if (s.all_failed) {
        err << "error: every sweep point failed\n";
        return s.all_validation ? kValidation : kNumerical;
      }
    }
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const Error& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kValidation;
  }
  return kSuccess;
}

}  // namespace rellich::cli
