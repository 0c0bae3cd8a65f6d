#include "finsler/classifier.hpp"

#include <algorithm>
#include <cmath>

namespace finsler {

std::vector<double> chebyshev_grid(double lo, double hi, int count) {
  if (count < 1) raise(Errc::empty_grid, "grid needs at least one point");
  std::vector<double> grid(count);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (int k = 0; k < count; ++k)
    grid[k] = mid + half * std::cos(M_PI * (2.0 * k + 1.0) / (2.0 * count));
  // ascending order reads better in reports
  std::reverse(grid.begin(), grid.end());
  return grid;
}

std::vector<double> default_s_grid(const PhiSpec& spec, double b_sq, int count) {
  const double b = std::sqrt(b_sq);
  if (spec.domain.lo >= 0.0) return chebyshev_grid(0.05 * b, 0.95 * b, count);
  return chebyshev_grid(-0.95 * b, 0.95 * b, count);
}

namespace {

// a-orthonormal frame with the b direction first (Gram-Schmidt against a).
std::vector<Vec> orthonormal_frame(const MetricPoint& mp) {
  const int n = mp.dim;
  const auto inner = [&](const Vec& u, const Vec& v) { return dot(u, matvec(mp.a, v)); };

  std::vector<Vec> frame;
  Vec bhat = mp.b_up;
  const double bnorm = std::sqrt(mp.b_sq);
  for (double& v : bhat) v /= bnorm;
  frame.push_back(bhat);

  for (int e = 0; e < n && static_cast<int>(frame.size()) < n; ++e) {
    Vec cand(n, 0.0);
    cand[e] = 1.0;
    for (const Vec& f : frame) {
      const double proj = inner(cand, f);
      for (int i = 0; i < n; ++i) cand[i] -= proj * f[i];
    }
    const double norm = std::sqrt(inner(cand, cand));
    if (norm < 1e-8) continue;  // candidate almost in the span already
    for (double& v : cand) v /= norm;
    frame.push_back(cand);
  }
  if (static_cast<int>(frame.size()) != n)
    raise(Errc::bad_config, "failed to build an orthonormal frame");
  return frame;
}

}  // namespace

Direction realize_direction(const MetricPoint& mp, double s, double angle) {
  const double b = std::sqrt(mp.b_sq);
  if (std::abs(s) >= b) raise(Errc::boundary_s, "|s| must stay below sqrt(b^2)");
  const auto frame = orthonormal_frame(mp);

  const double u = s / b;
  const double v = std::sqrt(1.0 - u * u);
  Vec perp(mp.dim, 0.0);
  if (mp.dim >= 3) {
    for (int i = 0; i < mp.dim; ++i)
      perp[i] = std::cos(angle) * frame[1][i] + std::sin(angle) * frame[2][i];
  } else {
    perp = frame[1];
  }

  Direction dir;
  dir.y.resize(mp.dim);
  for (int i = 0; i < mp.dim; ++i) dir.y[i] = u * frame[0][i] + v * perp[i];
  return dir;
}

const char* metric_class_name(MetricClass c) {
  switch (c) {
    case MetricClass::riemannian: return "Riemannian";
    case MetricClass::t_condition: return "TCondition";
    case MetricClass::sigma_t_condition: return "SigmaTCondition";
    case MetricClass::general: return "General";
  }
  return "unknown";
}

namespace {

void require_classifiable(const MetricPoint& mp, const std::vector<double>& grid) {
  if (mp.dim < 3) raise(Errc::dimension_too_small, "classification theorems require dim >= 3");
  if (grid.empty()) raise(Errc::empty_grid, "classification needs a nonempty s-grid");
}

}  // namespace

RiemannianTestResult riemannian_test(const MetricPoint& mp, const PhiSpec& spec,
                                     const std::vector<double>& grid, double tol, ExecMode mode) {
  require_classifiable(mp, grid);

  std::vector<double> rho1(grid.size()), rho2(grid.size()), cnorm(grid.size());
  std::vector<double> phi_sq(grid.size());
  sweep_indices(grid.size(), mode, [&](std::size_t i) {
    const double s = grid[i];
    const ScalarJet phi = phi_jet(spec, s);
    const RhoSet r = rho_scalars(phi, s);
    rho1[i] = std::abs(r.rho1);
    rho2[i] = std::abs(r.rho2) / std::max(1.0, std::abs(s));
    cnorm[i] = cartan_lower(mp, realize_direction(mp, s), spec).max_abs();
    phi_sq[i] = phi.deriv(0) * phi.deriv(0);
  });

  RiemannianTestResult res;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    res.rho1_max = std::max(res.rho1_max, rho1[i]);
    res.rho2_max = std::max(res.rho2_max, rho2[i]);
    res.cartan_max = std::max(res.cartan_max, cnorm[i]);
  }
  res.is_riemannian = res.rho1_max <= tol;

  // recover (k1, k2) from phi^2 = k1 s^2 + k2 at two samples with distinct
  // s^2 (symmetric grids make the endpoints collide in s^2)
  for (std::size_t j = 1; j < grid.size() && !res.fitted_k; ++j) {
    const double s1 = grid[0], s2 = grid[j];
    const double denom = s1 * s1 - s2 * s2;
    if (std::abs(denom) > 1e-6) {
      const double k1 = (phi_sq[0] - phi_sq[j]) / denom;
      const double k2 = phi_sq[0] - k1 * s1 * s1;
      res.fitted_k = {{k1, k2}};
    }
  }
  return res;
}

TConditionResult t_condition_test(const MetricPoint& mp, const PhiSpec& spec,
                                  const std::vector<double>& grid, double tol, ExecMode mode) {
  require_classifiable(mp, grid);

  std::vector<TCoefficients> coeffs(grid.size());
  sweep_indices(grid.size(), mode, [&](std::size_t i) {
    coeffs[i] = t_coefficients(mp, realize_direction(mp, grid[i]), spec);
  });

  TConditionResult res;
  for (const TCoefficients& tc : coeffs) {
    res.phi_max = std::max(res.phi_max, std::abs(tc.Phi));
    res.psi_max = std::max(res.psi_max, std::abs(tc.Psi));
    res.omega_max = std::max(res.omega_max, std::abs(tc.Omega));
  }
  res.holds = res.phi_max <= tol;
  if (res.holds) res.converse_ok = res.psi_max <= tol && res.omega_max <= tol;

  // fit Q(s) against (c b^2 - 1)/s - c s; c = (Q s + 1) / (b^2 - s^2) pointwise
  try {
    const double b_sq = mp.b_sq;
    double c_acc = 0.0;
    std::vector<double> qv(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      qv[i] = q_from_phi(spec, grid[i]).deriv(0);
      c_acc += (qv[i] * grid[i] + 1.0) / (b_sq - grid[i] * grid[i]);
    }
    const double c_fit = c_acc / static_cast<double>(grid.size());
    double resid = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double model = (c_fit * b_sq - 1.0) / grid[i] - c_fit * grid[i];
      resid = std::max(resid, std::abs(qv[i] - model));
    }
    res.fitted_c = c_fit;
    res.fit_residual = resid;
  } catch (const Error&) {
    res.fitted_c = std::nullopt;  // fit is advisory; degenerate Q transforms skip it
  }
  return res;
}

SigmaTConditionResult sigma_t_condition_test(const MetricPoint& mp, const PhiSpec& spec,
                                             const std::vector<double>& grid, double tol,
                                             ExecMode mode) {
  require_classifiable(mp, grid);
  const double s_skip = 0.01 * std::sqrt(mp.b_sq);  // sigma diagnostic divides by s

  struct Row {
    double a = 0.0, b = 0.0, contraction = 0.0, cond_c = 0.0;
    bool has_sigma = false;
  };
  std::vector<Row> rows(grid.size());
  sweep_indices(grid.size(), mode, [&](std::size_t i) {
    const double s = grid[i];
    const Direction y = realize_direction(mp, s);
    const TCoefficients tc = t_coefficients(mp, y, spec);
    const BaseGeometry geo = eval_geometry(mp, y);
    rows[i].a = std::abs(tc.Phi + geo.m_sq * tc.Psi);
    rows[i].b = std::abs(3.0 * tc.Psi + geo.m_sq * tc.Omega);
    if (std::abs(s) > s_skip) {
      const SigmaContraction sc = sigma_contract(mp.b, mp, y, spec);
      rows[i].contraction = sc.contraction.max_abs();
      rows[i].cond_c = sc.condition_c_max;
      rows[i].has_sigma = true;
    }
  });

  SigmaTConditionResult res;
  for (const Row& r : rows) {
    res.a_max = std::max(res.a_max, r.a);
    res.b_max = std::max(res.b_max, r.b);
    if (r.has_sigma) {
      res.sigma_contraction_max = std::max(res.sigma_contraction_max, r.contraction);
      res.condition_c_max = std::max(res.condition_c_max, r.cond_c);
    }
  }
  res.holds = res.a_max <= tol && res.b_max <= tol;
  return res;
}

ClassificationVerdict classify(const MetricPoint& mp, const PhiSpec& spec,
                               const std::vector<double>& grid, double tol, ExecMode mode) {
  const RiemannianTestResult riem = riemannian_test(mp, spec, grid, tol, mode);
  const TConditionResult tcond = t_condition_test(mp, spec, grid, tol, mode);
  const SigmaTConditionResult sigma = sigma_t_condition_test(mp, spec, grid, tol, mode);

  ClassificationVerdict v;
  v.dim_ok = mp.dim >= 3;
  v.tol = tol;
  v.grid = grid;
  v.residuals["rho1"] = riem.rho1_max;
  v.residuals["Phi"] = tcond.phi_max;
  v.residuals["Psi"] = tcond.psi_max;
  v.residuals["Omega"] = tcond.omega_max;
  v.residuals["Phi_plus_m2Psi"] = sigma.a_max;
  v.residuals["threePsi_plus_m2Omega"] = sigma.b_max;
  v.residuals["sigma_contraction"] = sigma.sigma_contraction_max;
  v.riemannian_fit = riem.fitted_k;
  v.berwald_fit_c = tcond.fitted_c;
  v.berwald_fit_residual = tcond.fit_residual;

  if (riem.is_riemannian)
    v.kind = MetricClass::riemannian;
  else if (tcond.holds)
    v.kind = MetricClass::t_condition;
  else if (sigma.holds)
    v.kind = MetricClass::sigma_t_condition;
  else
    v.kind = MetricClass::general;
  return v;
}

}  // namespace finsler
