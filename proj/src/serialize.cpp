#include "finsler/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace finsler {

namespace {

double require_param(const std::map<std::string, double>& params, const std::string& key,
                     const std::string& family) {
  const auto it = params.find(key);
  if (it == params.end())
    raise(Errc::bad_config, "family '" + family + "' needs parameter '" + key + "'");
  return it->second;
}

double resolve_b_sq(const std::map<std::string, double>& params, std::optional<double> fixture_b_sq,
                    const std::string& family) {
  const auto it = params.find("b_sq");
  if (it != params.end()) return it->second;
  if (fixture_b_sq) return *fixture_b_sq;
  raise(Errc::bad_config, "family '" + family + "' needs b_sq (give it or supply a fixture)");
}

}  // namespace

Json to_json(const MetricPoint& mp) {
  Json a = Json::array();
  for (int i = 0; i < mp.dim; ++i) {
    Json row = Json::array();
    for (int j = 0; j < mp.dim; ++j) row.push_back(mp.a(i, j));
    a.push_back(row);
  }
  return Json{{"dim", mp.dim}, {"a", a}, {"b", mp.b}, {"b0", mp.b0}, {"b_sq", mp.b_sq}};
}

MetricPoint metric_point_from_json(const Json& j) {
  if (!j.contains("dim") || !j.contains("a") || !j.contains("b") || !j.contains("b0"))
    raise(Errc::bad_config, "fixture needs keys dim, a, b, b0");
  const int n = j.at("dim").get<int>();
  Matrix a(n);
  const auto& rows = j.at("a");
  if (static_cast<int>(rows.size()) != n) raise(Errc::bad_config, "fixture: 'a' has wrong row count");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      raise(Errc::bad_config, "fixture: 'a' row has wrong length");
    for (int k = 0; k < n; ++k) a(i, k) = rows[i][k].get<double>();
  }
  const Vec b = j.at("b").get<Vec>();
  return make_metric_point(a, b, j.at("b0").get<double>());
}

Json to_json(const QSpec& q) {
  switch (q.kind) {
    case QSpec::Kind::linear:
      return Json{{"kind", "linear"}, {"c1", q.c1}, {"c2", q.c2}, {"b_sq", q.b_sq}};
    case QSpec::Kind::berwald:
      return Json{{"kind", "berwald"}, {"c", q.c}, {"b_sq", q.b_sq}};
    case QSpec::Kind::from_phi:
      return Json{{"kind", "from_phi"}, {"phi", to_json(*q.phi)}};
  }
  raise(Errc::bad_config, "unhandled Q kind");
}

QSpec q_spec_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "linear")
    return QSpec::linear(j.at("c1").get<double>(), j.at("c2").get<double>(),
                         j.at("b_sq").get<double>());
  if (kind == "berwald")
    return QSpec::berwald(j.at("c").get<double>(), j.at("b_sq").get<double>());
  if (kind == "from_phi") return QSpec::from_phi(phi_spec_from_json(j.at("phi")));
  raise(Errc::bad_config, "unknown Q kind '" + kind + "'");
}

Json to_json(const PhiSpec& spec) {
  Json params = Json::object();
  switch (spec.family) {
    case PhiFamily::riemannian:
      params["k1"] = spec.k1;
      params["k2"] = spec.k2;
      break;
    case PhiFamily::randers:
    case PhiFamily::kropina:
      break;
    case PhiFamily::shen_berwald:
      params["c"] = spec.c;
      params["b_sq"] = spec.b_sq;
      break;
    case PhiFamily::shen_landsberg:
    case PhiFamily::linear_sqrt:
      params["c1"] = spec.c1;
      params["c2"] = spec.c2;
      params["b_sq"] = spec.b_sq;
      break;
    case PhiFamily::general_q:
      params["q"] = to_json(*spec.q);
      params["s_ref"] = spec.s_ref;
      params["domain_lo"] = spec.domain.lo;
      params["domain_hi"] = spec.domain.hi;
      break;
    case PhiFamily::series:
      params["coeffs"] = spec.series;
      break;
  }
  return Json{{"family", spec.family_name()}, {"params", params}, {"c3", spec.c3}};
}

PhiSpec phi_spec_from_json(const Json& j, std::optional<double> fixture_b_sq) {
  const std::string family = j.at("family").get<std::string>();
  const double c3 = j.value("c3", 1.0);
  std::map<std::string, double> params;
  if (j.contains("params"))
    for (const auto& [key, value] : j.at("params").items())
      if (value.is_number()) params[key] = value.get<double>();

  if (family == "general_q") {
    const Json& p = j.at("params");
    Interval domain;
    domain.lo = p.value("domain_lo", domain.lo);
    domain.hi = p.value("domain_hi", domain.hi);
    const QSpec q = q_spec_from_json(p.at("q"));
    const double s_ref = p.value("s_ref", 0.0);
    return PhiSpec::make_general_q(q, domain, s_ref, c3);
  }
  if (family == "series") {
    const std::vector<double> coeffs = j.at("params").at("coeffs").get<std::vector<double>>();
    return PhiSpec::make_series(coeffs, c3);
  }
  return phi_spec_from_params(family, params, c3, fixture_b_sq);
}

PhiSpec phi_spec_from_params(const std::string& family, const std::map<std::string, double>& params,
                             double c3, std::optional<double> fixture_b_sq) {
  if (family == "riemannian")
    return PhiSpec::make_riemannian(require_param(params, "k1", family),
                                    require_param(params, "k2", family), c3);
  if (family == "randers") return PhiSpec::make_randers(c3);
  if (family == "kropina") return PhiSpec::make_kropina(c3);
  if (family == "shen_berwald")
    return PhiSpec::make_shen_berwald(require_param(params, "c", family),
                                      resolve_b_sq(params, fixture_b_sq, family), c3);
  if (family == "shen_landsberg") {
    if (params.count("b0"))
      return PhiSpec::make_shen_landsberg_b0(params.at("b0"),
                                             require_param(params, "c1", family),
                                             require_param(params, "c2", family), c3);
    return PhiSpec::make_shen_landsberg(require_param(params, "c1", family),
                                        require_param(params, "c2", family),
                                        resolve_b_sq(params, fixture_b_sq, family), c3);
  }
  if (family == "linear_sqrt")
    return PhiSpec::make_linear_sqrt(require_param(params, "c1", family),
                                     require_param(params, "c2", family),
                                     resolve_b_sq(params, fixture_b_sq, family), c3);
  raise(Errc::bad_config, "unknown phi family '" + family + "'");
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return Json{{"rank", 2}, {"dim", m.dim()}, {"rows", rows}};
}

Json to_json(const SymTensor3& t) {
  Json manifest = Json::array();
  for (int i = 0; i < t.dim(); ++i)
    for (int j = i; j < t.dim(); ++j)
      for (int k = j; k < t.dim(); ++k) manifest.push_back(Json::array({i, j, k}));
  return Json{{"rank", 3},
              {"dim", t.dim()},
              {"storage", "symmetric"},
              {"index_order", manifest},
              {"components", t.packed()}};
}

Json to_json(const SymTensor4& t) {
  Json manifest = Json::array();
  for (int h = 0; h < t.dim(); ++h)
    for (int i = h; i < t.dim(); ++i)
      for (int j = i; j < t.dim(); ++j)
        for (int k = j; k < t.dim(); ++k) manifest.push_back(Json::array({h, i, j, k}));
  return Json{{"rank", 4},
              {"dim", t.dim()},
              {"storage", "symmetric"},
              {"index_order", manifest},
              {"components", t.packed()}};
}

Json to_json(const RaisedTensor4& t) {
  Json manifest = Json::array();
  for (int h = 0; h < t.dim; ++h)
    for (int i = 0; i < t.dim; ++i)
      for (int j = i; j < t.dim; ++j)
        for (int k = j; k < t.dim; ++k) manifest.push_back(Json::array({h, i, j, k}));
  Json comps = Json::array();
  for (int h = 0; h < t.dim; ++h)
    for (int i = 0; i < t.dim; ++i)
      for (int j = i; j < t.dim; ++j)
        for (int k = j; k < t.dim; ++k) comps.push_back(t(h, i, j, k));
  return Json{{"rank", 4},
              {"dim", t.dim},
              {"storage", "raised_first_index"},
              {"index_order", manifest},
              {"components", comps}};
}

Json to_json(const ComparisonReport& rep) {
  return Json{{"max_abs", rep.max_abs},
              {"max_rel", rep.max_rel},
              {"argmax", rep.argmax},
              {"scale", rep.scale}};
}

Json to_json(const ClassificationVerdict& v) {
  Json j{{"kind", metric_class_name(v.kind)},
         {"residuals", v.residuals},
         {"grid", v.grid},
         {"dim_ok", v.dim_ok},
         {"tol", v.tol},
         {"berwald_fit_residual", v.berwald_fit_residual}};
  if (v.riemannian_fit) j["riemannian_fit"] = {{"k1", (*v.riemannian_fit)[0]}, {"k2", (*v.riemannian_fit)[1]}};
  if (v.berwald_fit_c) j["berwald_fit_c"] = *v.berwald_fit_c;
  return j;
}

Json to_json(const RegularityReport& rep) {
  return Json{{"grid", rep.grid},
              {"positivity_ok", rep.positivity_ok},
              {"hessian_ok", rep.hessian_ok},
              {"denominator_ok", rep.denominator_ok},
              {"min_hessian", rep.min_hessian},
              {"min_denominator_abs", rep.min_denominator_abs},
              {"summary", regularity_name(rep.summary)}};
}

Json to_json(const OdeResidualReport& rep) {
  return Json{{"grid", rep.grid},
              {"residual_trivial", rep.residual_trivial},
              {"residual_landsberg", rep.residual_landsberg},
              {"max_abs_trivial", rep.max_abs_trivial},
              {"max_abs_landsberg", rep.max_abs_landsberg}};
}

Json to_json(const BerwaldPhiReport& rep) {
  return Json{{"grid", rep.grid},
              {"q_max_err", rep.q_max_err},
              {"identity_affine_max", rep.identity_affine_max},
              {"identity_logderiv_max", rep.identity_logderiv_max},
              {"ratio_spread", rep.ratio_spread},
              {"phi_closed", rep.phi_closed},
              {"phi_quadrature", rep.phi_quadrature},
              {"pass", rep.pass}};
}

Json to_json(const LandsbergPhiReport& rep) {
  return Json{{"grid", rep.grid},
              {"q_max_err", rep.q_max_err},
              {"sigma_a_max", rep.sigma_a_max},
              {"sigma_b_max", rep.sigma_b_max},
              {"pass", rep.pass}};
}

Json to_json(const SpecialPhiReport& rep) {
  return Json{{"grid", rep.grid},
              {"phi_closed", rep.phi_closed},
              {"phi_quadrature", rep.phi_quadrature},
              {"ratio", rep.ratio},
              {"ratio_spread", rep.ratio_spread},
              {"pass", rep.pass}};
}

Json to_json(const TCoefficients& tc) {
  return Json{{"Phi", tc.Phi},   {"Psi", tc.Psi}, {"Omega", tc.Omega},
              {"K1", tc.K1},     {"K2", tc.K2},   {"mu0", tc.mu0},
              {"mu1", tc.mu1},   {"mu2", tc.mu2}, {"conditioning", tc.conditioning}};
}

namespace {

void csv_real(std::ostringstream& out, double v) {
  out.precision(17);
  out << v;
}

}  // namespace

std::string tensor4_csv(const SymTensor4& t) {
  std::ostringstream out;
  out << "h,i,j,k,value\n";
  for (int h = 0; h < t.dim(); ++h)
    for (int i = 0; i < t.dim(); ++i)
      for (int j = 0; j < t.dim(); ++j)
        for (int k = 0; k < t.dim(); ++k) {
          out << h << ',' << i << ',' << j << ',' << k << ',';
          csv_real(out, t(h, i, j, k));
          out << '\n';
        }
  return out.str();
}

std::string raised4_csv(const RaisedTensor4& t) {
  std::ostringstream out;
  out << "h,i,j,k,value\n";
  for (int h = 0; h < t.dim; ++h)
    for (int i = 0; i < t.dim; ++i)
      for (int j = 0; j < t.dim; ++j)
        for (int k = 0; k < t.dim; ++k) {
          out << h << ',' << i << ',' << j << ',' << k << ',';
          csv_real(out, t(h, i, j, k));
          out << '\n';
        }
  return out.str();
}

std::string matrix_csv(const Matrix& m) {
  std::ostringstream out;
  out << "i,j,value\n";
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) {
      out << i << ',' << j << ',';
      csv_real(out, m(i, j));
      out << '\n';
    }
  return out.str();
}

std::string ode_report_csv(const OdeResidualReport& rep) {
  std::ostringstream out;
  out << "s,residual_trivial,residual_landsberg\n";
  for (std::size_t i = 0; i < rep.grid.size(); ++i) {
    csv_real(out, rep.grid[i]);
    out << ',';
    csv_real(out, rep.residual_trivial[i]);
    out << ',';
    csv_real(out, rep.residual_landsberg[i]);
    out << '\n';
  }
  return out.str();
}

std::string special_report_csv(const SpecialPhiReport& rep) {
  std::ostringstream out;
  out << "s,phi_closed,phi_quadrature,ratio\n";
  for (std::size_t i = 0; i < rep.grid.size(); ++i) {
    csv_real(out, rep.grid[i]);
    out << ',';
    csv_real(out, rep.phi_closed[i]);
    out << ',';
    csv_real(out, rep.phi_quadrature[i]);
    out << ',';
    csv_real(out, rep.ratio[i]);
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> builtin_fixture_names() {
  return {"standard", "unit", "kropina", "skew", "anisotropic", "standard4"};
}

MetricPoint builtin_fixture(const std::string& name) {
  if (name == "standard") return standard_point(0.36);
  if (name == "unit") return standard_point(1.0);
  if (name == "kropina") return standard_point(0.64);
  if (name == "standard4") return standard_point(0.36, 4);
  if (name == "skew") {
    Matrix a(3);
    a(0, 0) = 2.0;  a(0, 1) = 0.5;  a(0, 2) = 0.0;
    a(1, 0) = 0.5;  a(1, 1) = 1.0;  a(1, 2) = 0.0;
    a(2, 0) = 0.0;  a(2, 1) = 0.0;  a(2, 2) = 1.0;
    return make_metric_point(a, Vec{0.75, 0.45, 0.0}, 1.0);
  }
  if (name == "anisotropic") {
    const Matrix a = Matrix::diagonal(Vec{4.0, 1.0, 1.0});
    return make_metric_point(a, Vec{1.2, 0.0, 0.0}, 1.0);
  }
  raise(Errc::bad_config, "unknown builtin fixture '" + name + "'");
}

MetricPoint load_fixture(const std::string& path_or_name) {
  std::string name = path_or_name;
  if (name.rfind("builtin:", 0) == 0) name = name.substr(8);
  for (const std::string& builtin : builtin_fixture_names())
    if (name == builtin) return builtin_fixture(name);

  std::ifstream in(path_or_name);
  if (!in) raise(Errc::bad_config, "cannot open fixture '" + path_or_name + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    raise(Errc::bad_config, std::string("fixture parse error: ") + e.what());
  }
  return metric_point_from_json(j);
}

}  // namespace finsler
