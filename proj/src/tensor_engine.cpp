#include "finsler/tensor_engine.hpp"

#include <algorithm>
#include <cmath>

namespace finsler {

namespace {

// Everything a tensor formula needs at one (point, direction, phi family).
struct PointEval {
  BaseGeometry geo;
  ScalarJet phi;
  RhoSet rho;
  double den;  // rho + m^2 phi phi''
};

PointEval eval_point(const MetricPoint& mp, const Direction& y, const PhiSpec& spec) {
  PointEval ev;
  ev.geo = eval_geometry(mp, y);
  ev.phi = phi_jet(spec, ev.geo.s, kJetMaxOrder);
  ev.rho = rho_scalars(ev.phi, ev.geo.s);
  ev.den = ev.rho.rho + ev.geo.m_sq * ev.phi.deriv(0) * ev.phi.deriv(2);
  return ev;
}

struct MuSet {
  double mu0, mu1, mu2;
};

MuSet mu_values(const PointEval& ev, double guard) {
  const double rho = ev.rho.rho;
  if (std::abs(ev.den) <= guard)
    raise(Errc::degenerate_metric,
          "guarded denominator rho + phi*phi''*m^2 vanishes (|value| <= guard)");
  if (std::abs(rho) <= guard)
    raise(Errc::degenerate_metric, "guarded denominator rho vanishes (|value| <= guard)");
  const double phi = ev.phi.deriv(0), phi2 = ev.phi.deriv(2);
  const double s = ev.geo.s, msq = ev.geo.m_sq;
  MuSet mu;
  mu.mu0 = -phi * phi2 / (rho * ev.den);
  mu.mu1 = -ev.rho.rho1 / (rho * ev.den);
  mu.mu2 = ev.rho.rho1 * (s * rho + (ev.rho.rho1 + s * phi * phi2) * msq) / (rho * rho * ev.den);
  return mu;
}

void sort4(int& a, int& b, int& c, int& d) {
  if (a > b) std::swap(a, b);
  if (c > d) std::swap(c, d);
  if (a > c) std::swap(a, c);
  if (b > d) std::swap(b, d);
  if (b > c) std::swap(b, c);
}

struct TKernel {
  double Phi, Psi, Omega;
  const Matrix* h;
  const Vec* m;

  double operator()(int p, int i, int j, int k) const {
    const Matrix& H = *h;
    const Vec& M = *m;
    const double hh = H(p, i) * H(j, k) + H(p, j) * H(i, k) + H(p, k) * H(i, j);
    const double hmm = H(p, k) * M[i] * M[j] + H(p, j) * M[i] * M[k] + H(p, i) * M[j] * M[k] +
                       H(i, j) * M[p] * M[k] + H(j, k) * M[i] * M[p] + H(i, k) * M[j] * M[p];
    return Phi * hh + Psi * hmm + Omega * M[p] * M[i] * M[j] * M[k];
  }
};

TCoefficients t_coefficients_impl(const PointEval& ev, double guard) {
  const double a = ev.geo.alpha, s = ev.geo.s, msq = ev.geo.m_sq;
  if (msq <= guard)
    raise(Errc::parallel_direction, "m^2 = b^2 - s^2 at or below guard: y parallel to b");
  const MuSet mu = mu_values(ev, guard);

  const RhoSet& r = ev.rho;
  const double phi = ev.phi.deriv(0), phi1 = ev.phi.deriv(1), phi2 = ev.phi.deriv(2);
  const double den = ev.den;

  TCoefficients tc;
  tc.mu0 = mu.mu0;
  tc.mu1 = mu.mu1;
  tc.mu2 = mu.mu2;
  tc.K1 = r.rho1 / (2.0 * a * den);
  tc.K2 = (r.rho * r.rho0_p - 2.0 * r.rho1 * phi * phi2) / (2.0 * a * r.rho * den);
  tc.Phi = -(r.rho1 * phi / (2.0 * a)) * (s + a * tc.K1 * msq);
  tc.Psi = r.rho1 * phi1 / a - r.rho1 * r.rho1 * phi / (a * r.rho) - s * r.rho0_p * phi / (2.0 * a) -
           r.rho1 * phi * msq * tc.K2 / 2.0;
  tc.Omega = r.rho0_pp * phi / (2.0 * a) + 2.0 * r.rho0_p * phi1 / a -
             3.0 * phi * (tc.K2 * (r.rho1 + r.rho0_p * msq / 2.0) +
                          r.rho1 * r.rho0_p / (2.0 * a * r.rho));

  const double lead = phi - s * phi1;
  const double denominators[] = {a, std::abs(r.rho), msq, std::abs(den), std::abs(lead)};
  double lo = denominators[0], hi = denominators[0];
  for (double d : denominators) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  tc.conditioning = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  return tc;
}

}  // namespace

RhoSet rho_scalars(const ScalarJet& phi, double s) {
  if (phi.order() < 4)
    raise(Errc::insufficient_jet_order, "rho scalars need an order-4 phi jet (rho0'' uses phi'''')");
  const double p = phi.deriv(0), p1 = phi.deriv(1), p2 = phi.deriv(2), p3 = phi.deriv(3),
               p4 = phi.deriv(4);
  RhoSet r;
  r.rho = p * p - s * p * p1;
  r.rho0 = p1 * p1 + p * p2;
  r.rho1 = p * p1 - s * r.rho0;
  r.rho2 = s * s * r.rho0 - s * p * p1;
  r.rho0_p = 3.0 * p1 * p2 + p * p3;
  r.rho0_pp = 3.0 * p2 * p2 + 4.0 * p1 * p3 + p * p4;
  return r;
}

SymTensor3::SymTensor3(int dim) : dim_(dim), c_(packed_size(dim), 0.0) {}

int SymTensor3::rank(int dim, int i, int j, int k) {
  // lexicographic rank among non-decreasing triples over [0, dim)
  int r = 0;
  for (int a = 0; a < i; ++a) {
    const int m = dim - a;
    r += m * (m + 1) / 2;
  }
  const int n2 = dim - i;
  const int jj = j - i, kk = k - i;
  r += jj * n2 - jj * (jj - 1) / 2 + (kk - jj);
  return r;
}

double SymTensor3::operator()(int i, int j, int k) const {
  int a = i, b = j, c = k;
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return c_[rank(dim_, a, b, c)];
}

double& SymTensor3::at_sorted(int i, int j, int k) { return c_[rank(dim_, i, j, k)]; }

double SymTensor3::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

SymTensor4::SymTensor4(int dim) : dim_(dim), c_(packed_size(dim), 0.0) {}

int SymTensor4::rank(int dim, int h, int i, int j, int k) {
  int r = 0;
  for (int a = 0; a < h; ++a) {
    const int m = dim - a;
    r += m * (m + 1) * (m + 2) / 6;
  }
  return r + SymTensor3::rank(dim - h, i - h, j - h, k - h);
}

double SymTensor4::operator()(int h, int i, int j, int k) const {
  sort4(h, i, j, k);
  return c_[rank(dim_, h, i, j, k)];
}

double& SymTensor4::at_sorted(int h, int i, int j, int k) { return c_[rank(dim_, h, i, j, k)]; }

double SymTensor4::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

double RaisedTensor4::operator()(int h, int i, int j, int k) const {
  if (i > j) std::swap(i, j);
  if (j > k) std::swap(j, k);
  if (i > j) std::swap(i, j);
  return comp[static_cast<std::size_t>(h) * SymTensor3::packed_size(dim) +
              SymTensor3::rank(dim, i, j, k)];
}

double RaisedTensor4::max_abs() const {
  double m = 0.0;
  for (double v : comp) m = std::max(m, std::abs(v));
  return m;
}

Matrix metric_lower(const MetricPoint& mp, const Direction& y, const PhiSpec& spec) {
  const PointEval ev = eval_point(mp, y, spec);
  const int n = mp.dim;
  Matrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = ev.rho.rho * mp.a(i, j) + ev.rho.rho0 * mp.b[i] * mp.b[j] +
                ev.rho.rho1 * (mp.b[i] * ev.geo.alpha_low[j] + mp.b[j] * ev.geo.alpha_low[i]) +
                ev.rho.rho2 * ev.geo.alpha_low[i] * ev.geo.alpha_low[j];
  return g;
}

Matrix metric_upper(const MetricPoint& mp, const Direction& y, const PhiSpec& spec, double guard) {
  const PointEval ev = eval_point(mp, y, spec);
  const MuSet mu = mu_values(ev, guard);
  const int n = mp.dim;
  Vec alpha_up(n);
  for (int i = 0; i < n; ++i) alpha_up[i] = y.y[i] / ev.geo.alpha;
  Matrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = mp.a_inv(i, j) / ev.rho.rho + mu.mu0 * mp.b_up[i] * mp.b_up[j] +
                mu.mu1 * (mp.b_up[i] * alpha_up[j] + mp.b_up[j] * alpha_up[i]) +
                mu.mu2 * alpha_up[i] * alpha_up[j];
  return g;
}

SymTensor3 cartan_lower(const MetricPoint& mp, const Direction& y, const PhiSpec& spec) {
  const PointEval ev = eval_point(mp, y, spec);
  const double ca = ev.rho.rho1 / (2.0 * ev.geo.alpha);
  const double cb = ev.rho.rho0_p / (2.0 * ev.geo.alpha);
  const Matrix& h = ev.geo.h;
  const Vec& m = ev.geo.m;
  SymTensor3 c(mp.dim);
  for (int i = 0; i < mp.dim; ++i)
    for (int j = i; j < mp.dim; ++j)
      for (int k = j; k < mp.dim; ++k)
        c.at_sorted(i, j, k) = ca * (h(i, j) * m[k] + h(j, k) * m[i] + h(i, k) * m[j]) +
                               cb * m[i] * m[j] * m[k];
  return c;
}

Vec ell_covector(const MetricPoint& mp, const Direction& y, const PhiSpec& spec) {
  const BaseGeometry geo = eval_geometry(mp, y);
  const ScalarJet phi = phi_jet(spec, geo.s, 1);
  Vec ell(mp.dim);
  for (int i = 0; i < mp.dim; ++i)
    ell[i] = phi.deriv(0) * geo.alpha_low[i] + phi.deriv(1) * geo.m[i];
  return ell;
}

TCoefficients t_coefficients(const MetricPoint& mp, const Direction& y, const PhiSpec& spec,
                             double guard) {
  return t_coefficients_impl(eval_point(mp, y, spec), guard);
}

SymTensor4 t_lower(const MetricPoint& mp, const Direction& y, const PhiSpec& spec, double guard) {
  const PointEval ev = eval_point(mp, y, spec);
  const TCoefficients tc = t_coefficients_impl(ev, guard);
  const TKernel kernel{tc.Phi, tc.Psi, tc.Omega, &ev.geo.h, &ev.geo.m};
  SymTensor4 t(mp.dim);
  for (int h = 0; h < mp.dim; ++h)
    for (int i = h; i < mp.dim; ++i)
      for (int j = i; j < mp.dim; ++j)
        for (int k = j; k < mp.dim; ++k) t.at_sorted(h, i, j, k) = kernel(h, i, j, k);
  return t;
}

double t_lower_component(const MetricPoint& mp, const Direction& y, const PhiSpec& spec, int h,
                         int i, int j, int k, double guard) {
  const PointEval ev = eval_point(mp, y, spec);
  const TCoefficients tc = t_coefficients_impl(ev, guard);
  const TKernel kernel{tc.Phi, tc.Psi, tc.Omega, &ev.geo.h, &ev.geo.m};
  return kernel(h, i, j, k);
}

RaisedTensor4 t_raised(const MetricPoint& mp, const Direction& y, const PhiSpec& spec,
                       double guard) {
  const PointEval ev = eval_point(mp, y, spec);
  const TCoefficients tc = t_coefficients_impl(ev, guard);
  const int n = mp.dim;
  const Matrix& h = ev.geo.h;
  const Vec& m = ev.geo.m;
  const double rho = ev.rho.rho;

  Vec alpha_up(n), m_up(n);
  for (int p = 0; p < n; ++p) {
    alpha_up[p] = y.y[p] / ev.geo.alpha;
    m_up[p] = mp.b_up[p] - ev.geo.s * alpha_up[p];
  }
  // h^p_i = delta^p_i - alpha^p alpha_i
  const auto h_mixed = [&](int p, int i) {
    return (p == i ? 1.0 : 0.0) - alpha_up[p] * ev.geo.alpha_low[i];
  };

  RaisedTensor4 t;
  t.dim = n;
  t.comp.assign(static_cast<std::size_t>(n) * SymTensor3::packed_size(n), 0.0);

  for (int p = 0; p < n; ++p) {
    const double lever = tc.mu0 * mp.b_up[p] + tc.mu1 * alpha_up[p];
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k) {
          const double hm3 = h(i, k) * m[j] + h(i, j) * m[k] + h(j, k) * m[i];
          const double m3 = m[i] * m[j] * m[k];
          double v = tc.Phi / rho *
                         (h_mixed(p, i) * h(j, k) + h_mixed(p, j) * h(i, k) + h_mixed(p, k) * h(i, j));
          v += tc.Psi / rho *
               (h_mixed(p, k) * m[i] * m[j] + h_mixed(p, j) * m[i] * m[k] +
                h_mixed(p, i) * m[j] * m[k] + h(i, j) * m_up[p] * m[k] + h(j, k) * m[i] * m_up[p] +
                h(i, k) * m[j] * m_up[p]);
          v += tc.Omega / rho * m_up[p] * m3;
          v += lever * (tc.Phi * hm3 + tc.Psi * (ev.geo.m_sq * hm3 + 3.0 * m3) +
                        tc.Omega * ev.geo.m_sq * m3);
          t.comp[static_cast<std::size_t>(p) * SymTensor3::packed_size(n) +
                 SymTensor3::rank(n, i, j, k)] = v;
        }
  }
  return t;
}

RaisedTensor4 raise_index(const Matrix& g_upper, const SymTensor4& t) {
  const int n = t.dim();
  if (g_upper.dim() != n) raise(Errc::dimension_mismatch, "raise_index: dimensions differ");
  RaisedTensor4 out;
  out.dim = n;
  out.comp.assign(static_cast<std::size_t>(n) * SymTensor3::packed_size(n), 0.0);
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k) {
          double acc = 0.0;
          for (int r = 0; r < n; ++r) acc += g_upper(h, r) * t(r, i, j, k);
          out.comp[static_cast<std::size_t>(h) * SymTensor3::packed_size(n) +
                   SymTensor3::rank(n, i, j, k)] = acc;
        }
  return out;
}

double raised_max_rel_diff(const RaisedTensor4& a, const RaisedTensor4& b) {
  if (a.dim != b.dim) raise(Errc::dimension_mismatch, "raised tensors differ in dimension");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.comp.size(); ++i)
    worst = std::max(worst, std::abs(a.comp[i] - b.comp[i]));
  // both zero to round-off counts as equal
  const double scale = b.max_abs();
  return scale > 1e-12 ? worst / scale : 0.0;
}

SigmaContraction sigma_contract(const Vec& sigma, const MetricPoint& mp, const Direction& y,
                                const PhiSpec& spec, double guard) {
  if (static_cast<int>(sigma.size()) != mp.dim)
    raise(Errc::dimension_mismatch, "sigma length does not match dimension");
  const BaseGeometry geo = eval_geometry(mp, y);
  if (std::abs(geo.s) < 1e-12)
    raise(Errc::s_divides_zero, "sigma diagnostic divides by s (|s| < 1e-12)");

  const RaisedTensor4 raised = t_raised(mp, y, spec, guard);
  SigmaContraction out;
  out.contraction = SymTensor3(mp.dim);
  for (int i = 0; i < mp.dim; ++i)
    for (int j = i; j < mp.dim; ++j)
      for (int k = j; k < mp.dim; ++k) {
        double acc = 0.0;
        for (int p = 0; p < mp.dim; ++p) acc += sigma[p] * raised(p, i, j, k);
        out.contraction.at_sorted(i, j, k) = acc;
      }

  const double sigma0 = dot(sigma, y.y);
  const double scale = sigma0 / (geo.s * geo.alpha);
  out.condition_c_max = 0.0;
  for (int j = 0; j < mp.dim; ++j)
    out.condition_c_max = std::max(out.condition_c_max, std::abs(sigma[j] - scale * mp.b[j]));
  return out;
}

}  // namespace finsler
