#include "finsler/phi_catalog.hpp"

#include <cmath>
#include <functional>

namespace finsler {

namespace {

constexpr double kQFromPhiGuard = 1e-14;

void require_in_domain(const PhiSpec& spec, double s) {
  if (!spec.domain.contains(s))
    raise(Errc::out_of_domain, "s = " + std::to_string(s) + " outside the domain of " +
                                   spec.family_name());
}

// Derivative tower of phi from the log-derivative L = Q/(1+sQ) and the value
// phi0. L is supplied as an order-3 jet at s.
ScalarJet phi_from_log_derivative(const ScalarJet& log_deriv, double phi0, int order) {
  const double L = log_deriv.deriv(0);
  const double L1 = log_deriv.order() >= 1 ? log_deriv.deriv(1) : 0.0;
  const double L2 = log_deriv.order() >= 2 ? log_deriv.deriv(2) : 0.0;
  const double L3 = log_deriv.order() >= 3 ? log_deriv.deriv(3) : 0.0;
  ScalarJet r(order);
  r.deriv(0) = phi0;
  if (order >= 1) r.deriv(1) = L * phi0;
  if (order >= 2) r.deriv(2) = (L1 + L * L) * phi0;
  if (order >= 3) r.deriv(3) = (L2 + 3.0 * L * L1 + L * L * L) * phi0;
  if (order >= 4)
    r.deriv(4) = (L3 + 4.0 * L * L2 + 3.0 * L1 * L1 + 6.0 * L * L * L1 + L * L * L * L) * phi0;
  return r;
}

// Adaptive Simpson with Richardson correction.
struct Quadrature {
  const std::function<double(double)>& f;
  double tol;
  int max_depth;

  double run(double a, double b) const {
    const double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(a, b, fa, fm, fb, whole, tol, max_depth);
  }

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double eps,
                 int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    if (depth <= 0)
      raise(Errc::quadrature_failure, "adaptive quadrature depth exhausted near s = " +
                                          std::to_string(m));
    return recurse(a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
  }
};

}  // namespace

PhiSpec PhiSpec::make_riemannian(double k1, double k2, double c3) {
  PhiSpec spec;
  spec.family = PhiFamily::riemannian;
  spec.k1 = k1;
  spec.k2 = k2;
  spec.c3 = c3;
  if (k1 < 0.0 && k2 > 0.0) {
    const double edge = std::sqrt(k2 / -k1);
    spec.domain = {-edge, edge};
  } else if (!(k2 > 0.0) && !(k1 > 0.0)) {
    raise(Errc::bad_config, "riemannian family needs k1 s^2 + k2 > 0 somewhere");
  }
  spec.s_ref = 0.0;
  return spec;
}

PhiSpec PhiSpec::make_randers(double c3) {
  PhiSpec spec;
  spec.family = PhiFamily::randers;
  spec.c3 = c3;
  spec.domain = {-1.0, std::numeric_limits<double>::infinity()};
  spec.s_ref = 0.0;
  return spec;
}

PhiSpec PhiSpec::make_kropina(double c3) {
  PhiSpec spec;
  spec.family = PhiFamily::kropina;
  spec.c3 = c3;
  spec.domain = {0.0, std::numeric_limits<double>::infinity()};
  spec.s_ref = 0.5;
  return spec;
}

PhiSpec PhiSpec::make_shen_berwald(double c, double b_sq, double c3) {
  if (!(c * b_sq > 1.0))
    raise(Errc::unsupported_parameter_range,
          "shen_berwald requires c * b^2 > 1 (real exponents, s > 0 branch)");
  PhiSpec spec;
  spec.family = PhiFamily::shen_berwald;
  spec.c = c;
  spec.b_sq = b_sq;
  spec.c3 = c3;
  spec.domain = {0.0, std::sqrt(b_sq)};
  spec.s_ref = 0.5 * std::sqrt(b_sq);
  return spec;
}

PhiSpec PhiSpec::make_shen_landsberg(double c1, double c2, double b_sq, double c3) {
  if (!(b_sq > 0.0)) raise(Errc::bad_config, "shen_landsberg requires b^2 > 0");
  PhiSpec spec;
  spec.family = PhiFamily::shen_landsberg;
  spec.c1 = c1;
  spec.c2 = c2;
  spec.b_sq = b_sq;
  spec.c3 = c3;
  const double edge = std::sqrt(b_sq);
  spec.domain = {-edge, edge};
  spec.s_ref = 0.5 * edge;
  return spec;
}

PhiSpec PhiSpec::make_shen_landsberg_b0(double b0, double s_coeff, double sqrt_coeff, double c3) {
  if (!(b0 > 0.0)) raise(Errc::bad_config, "b0 parameterization requires b0 > 0");
  // sqrt_coeff * sqrt(1 - (s/b0)^2) = (sqrt_coeff / b0) * sqrt(b0^2 - s^2)
  return make_shen_landsberg(s_coeff, sqrt_coeff / b0, b0 * b0, c3);
}

PhiSpec PhiSpec::make_general_q(const QSpec& q, Interval domain, double s_ref, double c3) {
  PhiSpec spec;
  spec.family = PhiFamily::general_q;
  spec.q = std::make_shared<QSpec>(q);
  spec.c3 = c3;
  spec.domain = domain;
  spec.s_ref = s_ref;
  return spec;
}

PhiSpec PhiSpec::make_series(std::vector<double> coeffs, double c3) {
  if (coeffs.empty()) raise(Errc::bad_config, "series family needs at least one coefficient");
  PhiSpec spec;
  spec.family = PhiFamily::series;
  spec.series = std::move(coeffs);
  spec.c3 = c3;
  spec.s_ref = 0.0;
  return spec;
}

PhiSpec PhiSpec::make_linear_sqrt(double c1, double c2, double b_sq, double c3) {
  if (!(b_sq > 0.0)) raise(Errc::bad_config, "linear_sqrt requires b^2 > 0");
  PhiSpec spec;
  spec.family = PhiFamily::linear_sqrt;
  spec.c1 = c1;
  spec.c2 = c2;
  spec.b_sq = b_sq;
  spec.c3 = c3;
  const double edge = std::sqrt(b_sq);
  spec.domain = {-edge, edge};
  spec.s_ref = 0.5 * edge;
  return spec;
}

std::string PhiSpec::family_name() const {
  switch (family) {
    case PhiFamily::riemannian: return "riemannian";
    case PhiFamily::randers: return "randers";
    case PhiFamily::kropina: return "kropina";
    case PhiFamily::shen_berwald: return "shen_berwald";
    case PhiFamily::shen_landsberg: return "shen_landsberg";
    case PhiFamily::general_q: return "general_q";
    case PhiFamily::series: return "series";
    case PhiFamily::linear_sqrt: return "linear_sqrt";
  }
  return "unknown";
}

QSpec QSpec::linear(double c1, double c2, double b_sq) {
  QSpec q;
  q.kind = Kind::linear;
  q.c1 = c1;
  q.c2 = c2;
  q.b_sq = b_sq;
  return q;
}

QSpec QSpec::berwald(double c, double b_sq) {
  QSpec q;
  q.kind = Kind::berwald;
  q.c = c;
  q.b_sq = b_sq;
  return q;
}

QSpec QSpec::from_phi(const PhiSpec& spec) {
  QSpec q;
  q.kind = Kind::from_phi;
  q.phi = std::make_shared<PhiSpec>(spec);
  return q;
}

ScalarJet q_jet(const QSpec& q, double s, int order) {
  if (order > kJetMaxOrder) raise(Errc::order_too_high, "q_jet order above 4");
  const ScalarJet sj = ScalarJet::variable(s, order);
  switch (q.kind) {
    case QSpec::Kind::linear: {
      const ScalarJet arg = q.b_sq - sj * sj;
      if (!(arg.value() > 0.0)) raise(Errc::boundary_s, "|s| >= sqrt(b^2) in linear Q");
      return q.c1 * sj + q.c2 * jet_sqrt(arg);
    }
    case QSpec::Kind::berwald: {
      if (std::abs(s) < kGuardEps) raise(Errc::s_divides_zero, "berwald Q divides by s");
      return (q.c * q.b_sq - 1.0) * jet_recip(sj) - q.c * sj;
    }
    case QSpec::Kind::from_phi: {
      // Q = phi' / (phi - s phi'); an order-n Q jet needs phi to order n+1.
      if (order > kJetMaxOrder - 1) raise(Errc::order_too_high, "from_phi Q jet order above 3");
      const ScalarJet phi = phi_jet(*q.phi, s, order + 1);
      ScalarJet num(order);  // the jet of phi'
      for (int k = 0; k <= order; ++k) num.deriv(k) = phi.deriv(k + 1);
      ScalarJet phi_trunc(order);
      for (int k = 0; k <= order; ++k) phi_trunc.deriv(k) = phi.deriv(k);
      const ScalarJet den = phi_trunc - sj * num;
      if (std::abs(den.value()) < kQFromPhiGuard)
        raise(Errc::degenerate_denominator, "phi - s phi' vanishes");
      return num / den;
    }
  }
  raise(Errc::bad_config, "unhandled Q kind");
}

ScalarJet q_from_phi(const PhiSpec& spec, double s) {
  const ScalarJet phi = phi_jet(spec, s, 3);
  const double den = phi.deriv(0) - s * phi.deriv(1);
  if (std::abs(den) < kQFromPhiGuard)
    raise(Errc::degenerate_denominator, "phi - s phi' below 1e-14 at s = " + std::to_string(s));
  // Jets of numerator phi' and denominator phi - s phi' to order 2.
  ScalarJet num(2), d(2);
  num.deriv(0) = phi.deriv(1);
  num.deriv(1) = phi.deriv(2);
  num.deriv(2) = phi.deriv(3);
  d.deriv(0) = den;
  d.deriv(1) = -s * phi.deriv(2);
  d.deriv(2) = -phi.deriv(2) - s * phi.deriv(3);
  return num / d;
}

double phi_from_q(const QSpec& q, double s, double s_ref, double c3) {
  if (s == s_ref) return c3;
  const double lo = std::min(s, s_ref), hi = std::max(s, s_ref);

  const auto integrand = [&](double t) {
    const ScalarJet qt = q_jet(q, t, 0);
    const double one_plus = 1.0 + t * qt.value();
    if (!(one_plus > kGuardEps))
      raise(Errc::pole_on_path, "1 + sQ loses positivity at s = " + std::to_string(t));
    return qt.value() / one_plus;
  };
  const std::function<double(double)> f = integrand;

  Quadrature quad{f, 1e-12, 40};
  double integral = quad.run(lo, hi);
  if (s < s_ref) integral = -integral;
  return c3 * std::exp(integral);
}

ScalarJet phi_jet(const PhiSpec& spec, double s, int order) {
  if (order > kJetMaxOrder) raise(Errc::order_too_high, "phi_jet order above 4");
  require_in_domain(spec, s);
  const ScalarJet sj = ScalarJet::variable(s, order);

  switch (spec.family) {
    case PhiFamily::riemannian: {
      const ScalarJet arg = spec.k1 * (sj * sj) + spec.k2;
      if (!(arg.value() > 0.0)) raise(Errc::out_of_domain, "k1 s^2 + k2 <= 0");
      return spec.c3 * jet_sqrt(arg);
    }
    case PhiFamily::randers:
      return spec.c3 * (1.0 + sj);
    case PhiFamily::kropina:
      return spec.c3 * jet_recip(sj);
    case PhiFamily::shen_berwald: {
      const double cb2 = spec.c * spec.b_sq;
      const ScalarJet base = spec.c * spec.b_sq - spec.c * (sj * sj);
      return spec.c3 * (jet_pow(sj, (cb2 - 1.0) / cb2) * jet_pow(base, 0.5 / cb2));
    }
    case PhiFamily::linear_sqrt: {
      const ScalarJet arg = spec.b_sq - sj * sj;
      return spec.c3 * (spec.c1 * sj + spec.c2 * jet_sqrt(arg));
    }
    case PhiFamily::series: {
      ScalarJet r(order);
      // d-th derivative of sum c_k s^k is sum c_k k!/(k-d)! s^(k-d)
      for (int d = 0; d <= order; ++d) {
        double acc = 0.0;
        double sp = 1.0;
        for (int k = d; k < static_cast<int>(spec.series.size()); ++k) {
          double fall = 1.0;
          for (int j = 0; j < d; ++j) fall *= (k - j);
          acc += spec.series[k] * fall * sp;
          sp *= s;
        }
        r.deriv(d) = spec.c3 * acc;
      }
      return r;
    }
    case PhiFamily::shen_landsberg:
    case PhiFamily::general_q: {
      const QSpec q = spec.family == PhiFamily::shen_landsberg
                          ? QSpec::linear(spec.c1, spec.c2, spec.b_sq)
                          : *spec.q;
      const double phi0 = phi_from_q(q, s, spec.s_ref, spec.c3);
      const int q_order = std::min(3, order);
      const ScalarJet qj = q_jet(q, s, q_order);
      const ScalarJet sj3 = ScalarJet::variable(s, q_order);
      const ScalarJet one_plus = 1.0 + sj3 * qj;
      if (!(one_plus.value() > kGuardEps))
        raise(Errc::pole_on_path, "1 + sQ loses positivity at s = " + std::to_string(s));
      return phi_from_log_derivative(qj / one_plus, phi0, order);
    }
  }
  raise(Errc::bad_config, "unhandled phi family");
}

const char* regularity_name(RegularityClass c) {
  switch (c) {
    case RegularityClass::regular: return "regular";
    case RegularityClass::positively_almost_regular: return "positively-almost-regular";
    case RegularityClass::irregular: return "irregular";
  }
  return "unknown";
}

RegularityReport regularity_check(const PhiSpec& spec, double b_sq, double b0,
                                  const std::vector<double>& grid) {
  if (grid.empty()) raise(Errc::empty_grid, "regularity check needs a nonempty grid");

  RegularityReport report;
  report.grid = grid;
  report.min_hessian = std::numeric_limits<double>::infinity();
  report.min_denominator_abs = std::numeric_limits<double>::infinity();

  constexpr int kTSamples = 16;
  bool positivity_all = true, hessian_all = true, denom_all = true;
  for (double s : grid) {
    const ScalarJet phi = phi_jet(spec, s, 2);
    const double p = phi.deriv(0), p1 = phi.deriv(1), p2 = phi.deriv(2);

    const bool positive = p > 0.0;

    // phi - s phi' + (t^2 - s^2) phi'' > 0 sampled over |s| < t < b0
    double hess_min = std::numeric_limits<double>::infinity();
    const double t_lo = std::abs(s), t_hi = b0;
    for (int k = 0; k < kTSamples; ++k) {
      const double t = t_lo + (t_hi - t_lo) * (k + 0.5) / kTSamples;
      hess_min = std::min(hess_min, p - s * p1 + (t * t - s * s) * p2);
    }
    const bool hess_ok = hess_min > 0.0;

    const double rho = p * p - s * p * p1;
    const double denom = rho + p * p2 * (b_sq - s * s);
    const bool denom_ok = std::abs(denom) > kGuardEps;

    report.positivity_ok.push_back(positive);
    report.hessian_ok.push_back(hess_ok);
    report.denominator_ok.push_back(denom_ok);
    report.min_hessian = std::min(report.min_hessian, hess_min);
    report.min_denominator_abs = std::min(report.min_denominator_abs, std::abs(denom));
    positivity_all = positivity_all && positive;
    hessian_all = hessian_all && hess_ok;
    denom_all = denom_all && denom_ok;
  }

  // Positivity and the denominator guard gate everything. The full
  // positive-definiteness sweep gates only the regular class: families that
  // are smooth solely on (0, b0) cannot be positive definite throughout
  // (a vanishing T-tensor with positive definiteness forces Riemannian), so
  // their class is decided by the smoothness domain and the per-sample
  // definiteness column stays in the report as data.
  if (!positivity_all || !denom_all)
    report.summary = RegularityClass::irregular;
  else if (spec.domain.lo >= 0.0)
    report.summary = RegularityClass::positively_almost_regular;
  else if (hessian_all)
    report.summary = RegularityClass::regular;
  else
    report.summary = RegularityClass::irregular;
  return report;
}

}  // namespace finsler
