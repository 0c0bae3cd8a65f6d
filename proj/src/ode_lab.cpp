#include "finsler/ode_lab.hpp"

#include <cmath>

namespace finsler {

double residual_trivial_ode(const QSpec& q, double s, double b_sq) {
  if (std::abs(s) < kGuardEps) raise(Errc::s_divides_zero, "trivial ODE residual divides by s");
  const double m_sq = b_sq - s * s;
  if (!(m_sq > 0.0)) raise(Errc::boundary_s, "m^2 = b^2 - s^2 must stay positive");
  const ScalarJet qj = q_jet(q, s, 1);
  return qj.deriv(1) + (1.0 / s + 2.0 * s / m_sq) * qj.deriv(0) + 2.0 / m_sq;
}

double residual_landsberg_ode(const QSpec& q, double s, double b_sq) {
  const double m_sq = b_sq - s * s;
  if (!(m_sq > 0.0)) raise(Errc::boundary_s, "m^2 = b^2 - s^2 must stay positive");
  const ScalarJet qj = q_jet(q, s, 2);
  return m_sq * qj.deriv(2) - s * qj.deriv(1) + qj.deriv(0);
}

OdeResidualReport ode_residual_report(const QSpec& q, double b_sq,
                                      const std::vector<double>& grid) {
  if (grid.empty()) raise(Errc::empty_grid, "ODE residual report needs a grid");
  OdeResidualReport rep;
  rep.grid = grid;
  rep.residual_trivial.resize(grid.size());
  rep.residual_landsberg.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rep.residual_trivial[i] = residual_trivial_ode(q, grid[i], b_sq);
    rep.residual_landsberg[i] = residual_landsberg_ode(q, grid[i], b_sq);
    rep.max_abs_trivial = std::max(rep.max_abs_trivial, std::abs(rep.residual_trivial[i]));
    rep.max_abs_landsberg = std::max(rep.max_abs_landsberg, std::abs(rep.residual_landsberg[i]));
  }
  return rep;
}

BerwaldPhiReport shen_berwald_phi_check(double c, double b_sq, const std::vector<double>& grid) {
  if (grid.empty()) raise(Errc::empty_grid, "family check needs a grid");
  const PhiSpec spec = PhiSpec::make_shen_berwald(c, b_sq);  // validates c b^2 > 1
  const QSpec qb = QSpec::berwald(c, b_sq);

  BerwaldPhiReport rep;
  rep.grid = grid;
  rep.phi_closed.resize(grid.size());
  rep.phi_quadrature.resize(grid.size());

  double ratio0 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid[i];

    const ScalarJet q_rec = q_from_phi(spec, s);
    const ScalarJet q_ref = q_jet(qb, s, 2);
    for (int d = 0; d <= 2; ++d)
      rep.q_max_err = std::max(rep.q_max_err, std::abs(q_rec.deriv(d) - q_ref.deriv(d)));

    const double Q = q_rec.deriv(0);
    const double affine = 1.0 + s * Q;
    rep.identity_affine_max =
        std::max(rep.identity_affine_max, std::abs(affine - (c * b_sq - c * s * s)));
    rep.identity_logderiv_max = std::max(
        rep.identity_logderiv_max,
        std::abs(Q / affine - (1.0 / s - 1.0 / (c * s * (b_sq - s * s)))));

    rep.phi_closed[i] = phi_jet(spec, s, 0).deriv(0);
    rep.phi_quadrature[i] = phi_from_q(qb, s, spec.s_ref, 1.0);
    const double ratio = rep.phi_closed[i] / rep.phi_quadrature[i];
    if (i == 0)
      ratio0 = ratio;
    else
      rep.ratio_spread = std::max(rep.ratio_spread, std::abs(ratio / ratio0 - 1.0));
  }

  rep.pass = rep.q_max_err <= 1e-9 && rep.identity_affine_max <= 1e-10 &&
             rep.identity_logderiv_max <= 1e-10 && rep.ratio_spread <= 1e-8;
  return rep;
}

MetricPoint standard_point(double b_sq, int dim) {
  Matrix a = Matrix::identity(dim);
  Vec b(dim, 0.0);
  b[0] = std::sqrt(b_sq);
  return make_metric_point(a, b, std::max(1.0, std::sqrt(b_sq)));
}

LandsbergPhiReport shen_landsberg_phi_check(double c1, double c2, double b_sq,
                                            const std::vector<double>& grid) {
  if (grid.empty()) raise(Errc::empty_grid, "family check needs a grid");
  const PhiSpec spec = PhiSpec::make_shen_landsberg(c1, c2, b_sq);
  const QSpec ql = QSpec::linear(c1, c2, b_sq);
  const MetricPoint mp = standard_point(b_sq);

  LandsbergPhiReport rep;
  rep.grid = grid;
  for (double s : grid) {
    const ScalarJet q_rec = q_from_phi(spec, s);
    const ScalarJet q_ref = q_jet(ql, s, 2);
    for (int d = 0; d <= 2; ++d)
      rep.q_max_err = std::max(rep.q_max_err, std::abs(q_rec.deriv(d) - q_ref.deriv(d)));

    const Direction y = realize_direction(mp, s);
    const TCoefficients tc = t_coefficients(mp, y, spec);
    const BaseGeometry geo = eval_geometry(mp, y);
    rep.sigma_a_max = std::max(rep.sigma_a_max, std::abs(tc.Phi + geo.m_sq * tc.Psi));
    rep.sigma_b_max = std::max(rep.sigma_b_max, std::abs(3.0 * tc.Psi + geo.m_sq * tc.Omega));
  }
  rep.pass = rep.q_max_err <= 1e-9 && rep.sigma_a_max <= 1e-9 && rep.sigma_b_max <= 1e-9;
  return rep;
}

double special_phi_c2_zero(double c1, double b_sq, double s) {
  const double disc = 4.0 - c1 * c1 * b_sq * b_sq;
  if (!(disc > 1e-12))
    raise(Errc::unsupported_parameter_range, "4 - c1^2 b^4 must stay positive for the arctan form");
  if (!(s > 0.0) || !(s * s < b_sq)) raise(Errc::boundary_s, "s must lie in (0, sqrt(b^2))");
  const double w = std::sqrt(b_sq - s * s);
  const double root_arg = 1.0 + c1 * s * w;
  if (!(root_arg > 0.0)) raise(Errc::pole_on_path, "1 + c1 s sqrt(b^2 - s^2) loses positivity");
  const double rd = std::sqrt(disc);
  return std::sqrt(root_arg) * std::exp(c1 * b_sq / rd * std::atan((c1 * b_sq * w + 2.0 * s) / (rd * w)));
}

SpecialPhiReport special_phi_check(double c1, double b_sq, const std::vector<double>& grid) {
  if (grid.empty()) raise(Errc::empty_grid, "special form check needs a grid");
  const QSpec q = QSpec::linear(0.0, c1, b_sq);
  const double s_ref = 0.5 * std::sqrt(b_sq);

  SpecialPhiReport rep;
  rep.grid = grid;
  double ratio0 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double closed = special_phi_c2_zero(c1, b_sq, grid[i]);
    const double quad = phi_from_q(q, grid[i], s_ref, 1.0);
    rep.phi_closed.push_back(closed);
    rep.phi_quadrature.push_back(quad);
    const double ratio = closed / quad;
    rep.ratio.push_back(ratio);
    if (i == 0)
      ratio0 = ratio;
    else
      rep.ratio_spread = std::max(rep.ratio_spread, std::abs(ratio / ratio0 - 1.0));
  }
  rep.pass = rep.ratio_spread <= 1e-7;
  return rep;
}

PhiSpec asanov_phi(double sqrt_coeff, double c3) {
  // b(x) = b0 = 1 and no linear term in Q
  return PhiSpec::make_shen_landsberg_b0(1.0, 0.0, sqrt_coeff, c3);
}

LandsbergPhiReport asanov_check(double sqrt_coeff, const std::vector<double>& grid) {
  return shen_landsberg_phi_check(0.0, sqrt_coeff, 1.0, grid);
}

}  // namespace finsler
