#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "finsler/acceptance.hpp"
#include "finsler/serialize.hpp"

namespace {

using finsler::Json;

constexpr int kExitAcceptanceFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitDomainError = 3;

std::map<std::string, double> parse_params(const std::string& csv) {
  std::map<std::string, double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      finsler::raise(finsler::Errc::bad_config, "param '" + item + "' is not key=value");
    try {
      out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      finsler::raise(finsler::Errc::bad_config, "param '" + item + "' has a non-numeric value");
    }
  }
  return out;
}

finsler::Vec parse_vector(const std::string& csv) {
  finsler::Vec out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      finsler::raise(finsler::Errc::bad_config, "direction component '" + item + "' is not numeric");
    }
  }
  return out;
}

double resolve_tol(const CLI::Option* tol_opt, double tol_flag, double fallback) {
  double tol = fallback;
  if (tol_opt->count() > 0) {
    tol = tol_flag;
  } else if (const char* env = std::getenv("FINSLER_TOL")) {
    try {
      tol = std::stod(env);
    } catch (const std::exception&) {
      finsler::raise(finsler::Errc::bad_config, "FINSLER_TOL is not numeric");
    }
  }
  if (!(tol > 0.0)) finsler::raise(finsler::Errc::bad_config, "tolerance must be positive");
  return tol;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) finsler::raise(finsler::Errc::bad_config, "cannot write to '" + out_path + "'");
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

Json envelope(const std::string& command, std::uint64_t seed, double tol) {
  return Json{{"schema", finsler::kReportSchema}, {"command", command}, {"seed", seed}, {"tol", tol}};
}

struct CommonArgs {
  std::string fixture = "builtin:standard";
  std::string family = "randers";
  std::string params;
  double c3 = 1.0;
  double tol = 1e-8;
  int grid_size = 33;
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 0x5eed2024;
  bool serial = false;

  finsler::ExecMode mode() const {
    return serial ? finsler::ExecMode::serial : finsler::ExecMode::parallel;
  }
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_phi = true) {
  cmd->add_option("--fixture", args.fixture, "fixture path or builtin:<name>");
  if (with_phi) {
    cmd->add_option("--phi", args.family, "phi family name");
    cmd->add_option("--params", args.params, "family parameters, key=value comma list");
    cmd->add_option("--c3", args.c3, "overall phi normalization");
  }
  cmd->add_option("--grid", args.grid_size, "number of s samples")->check(CLI::Range(3, 100000));
  cmd->add_option("--out", args.out_path, "write the report here instead of stdout");
  cmd->add_option("--format", args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--seed", args.seed, "seed for randomized directions");
  cmd->add_flag("--serial", args.serial, "disable the parallel sweep path");
}

int run_tensors(const CommonArgs& args, double s_value, bool s_given, const std::string& dir_csv) {
  const finsler::MetricPoint mp = finsler::load_fixture(args.fixture);
  const finsler::PhiSpec spec =
      finsler::phi_spec_from_params(args.family, parse_params(args.params), args.c3, mp.b_sq);

  finsler::Direction y;
  if (!dir_csv.empty()) {
    y.y = parse_vector(dir_csv);
  } else {
    const double s = s_given ? s_value : 0.5 * std::sqrt(mp.b_sq);
    y = finsler::realize_direction(mp, s);
  }

  const finsler::Matrix g = finsler::metric_lower(mp, y, spec);
  const finsler::Matrix gup = finsler::metric_upper(mp, y, spec);
  const finsler::SymTensor3 cartan = finsler::cartan_lower(mp, y, spec);
  const finsler::SymTensor4 t = finsler::t_lower(mp, y, spec);
  const finsler::RaisedTensor4 traised = finsler::t_raised(mp, y, spec);
  const finsler::TCoefficients tc = finsler::t_coefficients(mp, y, spec);

  if (args.format == "csv") {
    std::ostringstream out;
    out << "# metric_lower\n" << finsler::matrix_csv(g) << "\n# metric_upper\n"
        << finsler::matrix_csv(gup) << "\n# t_lower\n" << finsler::tensor4_csv(t)
        << "\n# t_raised\n" << finsler::raised4_csv(traised);
    emit(out.str(), args.out_path);
    return 0;
  }

  Json report = envelope("tensors", args.seed, args.tol);
  report["inputs"] = {{"fixture", finsler::to_json(mp)},
                      {"phi", finsler::to_json(spec)},
                      {"direction", y.y}};
  report["result"] = {{"metric_lower", finsler::to_json(g)},
                      {"metric_upper", finsler::to_json(gup)},
                      {"cartan_lower", finsler::to_json(cartan)},
                      {"t_lower", finsler::to_json(t)},
                      {"t_raised", finsler::to_json(traised)},
                      {"t_coefficients", finsler::to_json(tc)}};
  emit(report.dump(2), args.out_path);
  return 0;
}

int run_classify(const CommonArgs& args) {
  const finsler::MetricPoint mp = finsler::load_fixture(args.fixture);
  const finsler::PhiSpec spec =
      finsler::phi_spec_from_params(args.family, parse_params(args.params), args.c3, mp.b_sq);
  const std::vector<double> grid = finsler::default_s_grid(spec, mp.b_sq, args.grid_size);

  const finsler::ClassificationVerdict verdict =
      finsler::classify(mp, spec, grid, args.tol, args.mode());
  const finsler::RegularityReport reg = finsler::regularity_check(spec, mp.b_sq, mp.b0, grid);

  Json report = envelope("classify", args.seed, args.tol);
  report["inputs"] = {{"fixture", finsler::to_json(mp)},
                      {"phi", finsler::to_json(spec)},
                      {"grid_size", args.grid_size}};
  report["result"] = finsler::to_json(verdict);
  report["result"]["regularity"] = finsler::to_json(reg);
  emit(report.dump(2), args.out_path);
  return 0;
}

int run_verify(const CommonArgs& args) {
  const finsler::MetricPoint mp = finsler::load_fixture(args.fixture);
  const finsler::PhiSpec spec =
      finsler::phi_spec_from_params(args.family, parse_params(args.params), args.c3, mp.b_sq);
  const std::vector<double> grid = finsler::default_s_grid(spec, mp.b_sq, args.grid_size);

  std::mt19937_64 rng(args.seed);
  std::uniform_real_distribution<double> angles(0.0, 2.0 * M_PI);
  std::vector<double> angle(grid.size());
  for (double& a : angle) a = angles(rng);

  struct Row {
    finsler::ComparisonReport metric, cartan, t_tensor, cartan_derivative;
    double raised_paths = 0.0;
    finsler::OracleTTerms terms;
  };
  std::vector<Row> rows(grid.size());
  finsler::sweep_indices(grid.size(), args.mode(), [&](std::size_t i) {
    const finsler::Direction y = finsler::realize_direction(mp, grid[i], angle[i]);
    rows[i].metric = compare(finsler::metric_lower(mp, y, spec), finsler::oracle_metric(mp, y, spec));
    rows[i].cartan = compare(finsler::cartan_lower(mp, y, spec), finsler::oracle_cartan(mp, y, spec));
    rows[i].t_tensor =
        compare(finsler::t_lower(mp, y, spec), finsler::oracle_t(mp, y, spec, &rows[i].terms));
    rows[i].cartan_derivative = compare(finsler::expanded_cartan_derivative(mp, y, spec),
                                        finsler::oracle_cartan_derivative(mp, y, spec));
    rows[i].raised_paths = finsler::raised_max_rel_diff(
        finsler::t_raised(mp, y, spec),
        finsler::raise_index(finsler::metric_upper(mp, y, spec), finsler::t_lower(mp, y, spec)));
  });

  const auto worst = [&](auto pick) {
    double w = 0.0;
    for (const Row& r : rows) w = std::max(w, pick(r));
    return w;
  };
  const double metric_rel = worst([](const Row& r) { return r.metric.max_rel; });
  const double cartan_rel = worst([](const Row& r) { return r.cartan.max_rel; });
  const double t_rel = worst([](const Row& r) { return r.t_tensor.max_rel; });
  const double dcartan_rel = worst([](const Row& r) { return r.cartan_derivative.max_rel; });
  const double raised_rel = worst([](const Row& r) { return r.raised_paths; });
  const double overall = std::max({metric_rel, cartan_rel, t_rel, dcartan_rel, raised_rel});
  const Json t_terms = {
      {"f_times_cartan_derivative", worst([](const Row& r) { return r.terms.max_fc4; })},
      {"f_times_cartan_square", worst([](const Row& r) { return r.terms.max_fcc; })},
      {"cartan_ell_symmetrization", worst([](const Row& r) { return r.terms.max_cl; })}};

  Json report = envelope("verify", args.seed, args.tol);
  report["inputs"] = {{"fixture", finsler::to_json(mp)},
                      {"phi", finsler::to_json(spec)},
                      {"grid_size", args.grid_size}};
  report["result"] = {{"metric_max_rel", metric_rel},
                      {"cartan_max_rel", cartan_rel},
                      {"t_tensor_max_rel", t_rel},
                      {"cartan_derivative_max_rel", dcartan_rel},
                      {"t_raised_paths_max_rel", raised_rel},
                      {"t_definition_term_scales", t_terms},
                      {"overall_max_rel", overall},
                      {"grid", grid},
                      {"pass", overall <= args.tol}};
  emit(report.dump(2), args.out_path);
  return overall <= args.tol ? 0 : kExitAcceptanceFailure;
}

int run_ode_check(const CommonArgs& args, const std::string& q_kind, bool asanov) {
  const auto params = parse_params(args.params);
  const auto param = [&](const std::string& key, std::optional<double> fallback =
                                                     std::nullopt) -> double {
    const auto it = params.find(key);
    if (it != params.end()) return it->second;
    if (fallback) return *fallback;
    finsler::raise(finsler::Errc::bad_config, "ode-check needs parameter '" + key + "'");
  };

  double b_sq = 0.0;
  finsler::QSpec q = finsler::QSpec::linear(0.0, 1.0, 1.0);
  if (asanov) {
    b_sq = 1.0;
    q = finsler::QSpec::linear(0.0, param("c2"), b_sq);
  } else if (q_kind == "berwald") {
    b_sq = params.count("b_sq") ? params.at("b_sq") : finsler::load_fixture(args.fixture).b_sq;
    q = finsler::QSpec::berwald(param("c"), b_sq);
  } else if (q_kind == "linear") {
    b_sq = params.count("b_sq") ? params.at("b_sq") : finsler::load_fixture(args.fixture).b_sq;
    if (params.count("b0")) {
      const double b0 = params.at("b0");
      b_sq = b0 * b0;
      q = finsler::QSpec::linear(param("c1"), param("c2") / b0, b_sq);
    } else {
      q = finsler::QSpec::linear(param("c1"), param("c2"), b_sq);
    }
  } else {
    finsler::raise(finsler::Errc::bad_config, "--q must be 'linear' or 'berwald'");
  }

  const double b = std::sqrt(b_sq);
  const bool positive_only = q.kind == finsler::QSpec::Kind::berwald;
  const std::vector<double> grid = positive_only
                                       ? finsler::chebyshev_grid(0.05 * b, 0.95 * b, args.grid_size)
                                       : finsler::chebyshev_grid(-0.95 * b, 0.95 * b, args.grid_size);
  const std::vector<double> pos_grid = finsler::chebyshev_grid(0.05 * b, 0.95 * b, args.grid_size);

  finsler::OdeResidualReport residuals;
  residuals.grid = grid;
  for (double s : grid) {
    const double trivial = std::abs(s) < 1e-9
                               ? std::numeric_limits<double>::quiet_NaN()
                               : finsler::residual_trivial_ode(q, s, b_sq);
    residuals.residual_trivial.push_back(trivial);
    residuals.residual_landsberg.push_back(finsler::residual_landsberg_ode(q, s, b_sq));
    if (!std::isnan(trivial))
      residuals.max_abs_trivial = std::max(residuals.max_abs_trivial, std::abs(trivial));
    residuals.max_abs_landsberg =
        std::max(residuals.max_abs_landsberg, std::abs(residuals.residual_landsberg.back()));
  }

  if (args.format == "csv") {
    // plot-ready: closed-form phi where the family has one, blank otherwise
    const double s_ref = 0.5 * b;
    const bool arctan_form = q.kind == finsler::QSpec::Kind::linear && q.c1 == 0.0 &&
                             q.c2 != 0.0 && 4.0 - q.c2 * q.c2 * b_sq * b_sq > 1e-12;
    std::ostringstream out;
    out << "s,residual_trivial,residual_landsberg,phi_closed,phi_quadrature,ratio\n";
    out.precision(17);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double s = grid[i];
      out << s << ',';
      if (!std::isnan(residuals.residual_trivial[i])) out << residuals.residual_trivial[i];
      out << ',' << residuals.residual_landsberg[i] << ',';
      double closed = std::numeric_limits<double>::quiet_NaN();
      if (q.kind == finsler::QSpec::Kind::berwald && s > 0.0) {
        closed = finsler::phi_jet(finsler::PhiSpec::make_shen_berwald(q.c, b_sq), s, 0).deriv(0);
      } else if (arctan_form && s > 0.0) {
        closed = finsler::special_phi_c2_zero(q.c2, b_sq, s);
      }
      const double quad = finsler::phi_from_q(q, s, s_ref, 1.0);
      if (!std::isnan(closed)) out << closed;
      out << ',' << quad << ',';
      if (!std::isnan(closed)) out << closed / quad;
      out << '\n';
    }
    emit(out.str(), args.out_path);
    return 0;
  }

  Json report = envelope("ode-check", args.seed, args.tol);
  report["inputs"] = {{"q", finsler::to_json(q)}, {"b_sq", b_sq}, {"grid_size", args.grid_size}};
  report["result"] = {{"residuals", finsler::to_json(residuals)}};

  if (q.kind == finsler::QSpec::Kind::berwald) {
    report["result"]["family_check"] =
        finsler::to_json(finsler::shen_berwald_phi_check(q.c, b_sq, pos_grid));
  } else {
    report["result"]["family_check"] =
        finsler::to_json(finsler::shen_landsberg_phi_check(q.c1, q.c2, b_sq, grid));
    if (q.c1 == 0.0 && q.c2 != 0.0) {
      const std::vector<double> special_grid = finsler::chebyshev_grid(0.1 * b, 0.9 * b, 9);
      report["result"]["special_closed_form"] =
          finsler::to_json(finsler::special_phi_check(q.c2, b_sq, special_grid));
    }
  }
  emit(report.dump(2), args.out_path);
  return 0;
}

int run_suite(const CommonArgs& args) {
  finsler::AcceptanceOptions options;
  options.mode = args.mode();
  options.seed = args.seed;

  const auto results = finsler::run_acceptance(options);
  bool all_pass = true;
  Json rows = Json::array();
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.name << " ("
              << r.detail << ")\n";
    rows.push_back(Json{{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"detail", r.detail},
                        {"seconds", r.seconds}});
  }
  std::cout << (all_pass ? "suite: all criteria passed\n" : "suite: FAILURES present\n");

  if (!args.out_path.empty()) {
    Json report = envelope("suite", args.seed, args.tol);
    report["result"] = {{"criteria", rows}, {"pass", all_pass}};
    emit(report.dump(2), args.out_path);
  }
  return all_pass ? 0 : kExitAcceptanceFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fundamental tensors, classification and ODE checks for (alpha,beta)-metrics"};
  app.require_subcommand(1);

  CommonArgs targs, cargs, vargs, oargs, sargs;
  double s_value = 0.0;
  std::string dir_csv;
  std::string q_kind = "linear";
  bool asanov = false;

  CLI::App* tensors = app.add_subcommand("tensors", "emit g, g^, C, T, T^ at one direction");
  add_common(tensors, targs);
  CLI::Option* s_opt = tensors->add_option("--s", s_value, "realize a direction with beta/alpha = s");
  tensors->add_option("--dir", dir_csv, "explicit direction components, comma separated");

  CLI::App* classify_cmd = app.add_subcommand("classify", "run the classification tests");
  add_common(classify_cmd, cargs);

  CLI::App* verify_cmd = app.add_subcommand("verify", "closed forms against the multi-dual oracle");
  add_common(verify_cmd, vargs);

  CLI::App* ode_cmd = app.add_subcommand("ode-check", "residuals and family checks for Q(s)");
  add_common(ode_cmd, oargs, false);
  ode_cmd->add_option("--params", oargs.params, "Q parameters, key=value comma list");
  ode_cmd->add_option("--q", q_kind, "Q family: linear or berwald");
  ode_cmd->add_flag("--asanov", asanov, "unit-length preset: Q = c2 sqrt(1 - s^2)");

  CLI::App* suite_cmd = app.add_subcommand("suite", "run the full verification battery");
  add_common(suite_cmd, sargs, false);

  CLI::Option* tol_t = tensors->add_option("--tol", targs.tol, "residual tolerance");
  CLI::Option* tol_c = classify_cmd->add_option("--tol", cargs.tol, "residual tolerance");
  CLI::Option* tol_v = verify_cmd->add_option("--tol", vargs.tol, "comparison tolerance");
  CLI::Option* tol_o = ode_cmd->add_option("--tol", oargs.tol, "residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfigError;
  }

  try {
    if (tensors->parsed()) {
      targs.tol = resolve_tol(tol_t, targs.tol, 1e-8);
      return run_tensors(targs, s_value, s_opt->count() > 0, dir_csv);
    }
    if (classify_cmd->parsed()) {
      cargs.tol = resolve_tol(tol_c, cargs.tol, 1e-8);
      return run_classify(cargs);
    }
    if (verify_cmd->parsed()) {
      vargs.tol = resolve_tol(tol_v, vargs.tol, 1e-9);
      return run_verify(vargs);
    }
    if (ode_cmd->parsed()) {
      oargs.tol = resolve_tol(tol_o, oargs.tol, 1e-8);
      return run_ode_check(oargs, q_kind, asanov);
    }
    if (suite_cmd->parsed()) return run_suite(sargs);  // criterion tolerances are pinned
  } catch (const finsler::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return finsler::is_domain_error(e.code()) ? kExitDomainError : kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
