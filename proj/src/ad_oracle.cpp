#include "finsler/ad_oracle.hpp"

#include <cmath>

namespace finsler {

namespace {

std::vector<MultiDual> lift(const Direction& y) {
  std::vector<MultiDual> out(y.y.size());
  for (std::size_t i = 0; i < y.y.size(); ++i) out[i] = MultiDual(y.y[i]);
  return out;
}

// F = alpha * phi(s) as a multi-dual.
MultiDual f_dual(const MetricPoint& mp, const std::vector<MultiDual>& y, const PhiSpec& spec) {
  if (static_cast<int>(y.size()) != mp.dim)
    raise(Errc::dimension_mismatch, "direction length does not match metric dimension");

  MultiDual alpha_sq;
  for (int i = 0; i < mp.dim; ++i)
    for (int j = 0; j < mp.dim; ++j) alpha_sq += mp.a(i, j) * (y[i] * y[j]);
  if (!(alpha_sq.real() > 0.0)) raise(Errc::zero_direction, "alpha(y) <= tolerance");
  const MultiDual alpha = md_sqrt(alpha_sq);

  MultiDual beta;
  for (int i = 0; i < mp.dim; ++i) beta += mp.b[i] * y[i];

  const MultiDual s = beta / alpha;
  const ScalarJet pj = phi_jet(spec, s.real(), kJetMaxOrder);
  const MultiDual phi = apply_jet(pj, s);
  return alpha * phi;
}

}  // namespace

MultiDual f_squared(const MetricPoint& mp, const std::vector<MultiDual>& y, const PhiSpec& spec) {
  const MultiDual f = f_dual(mp, y, spec);
  return f * f;
}

Matrix oracle_metric(const MetricPoint& mp, const Direction& y, const PhiSpec& spec) {
  Matrix g(mp.dim);
  for (int i = 0; i < mp.dim; ++i)
    for (int j = i; j < mp.dim; ++j) {
      auto yd = lift(y);
      yd[i] += MultiDual::unit(0);
      yd[j] += MultiDual::unit(1);
      const double v = 0.5 * f_squared(mp, yd, spec).coeff(0b0011);
      g(i, j) = g(j, i) = v;
    }
  return g;
}

SymTensor3 oracle_cartan(const MetricPoint& mp, const Direction& y, const PhiSpec& spec) {
  SymTensor3 c(mp.dim);
  for (int i = 0; i < mp.dim; ++i)
    for (int j = i; j < mp.dim; ++j)
      for (int k = j; k < mp.dim; ++k) {
        auto yd = lift(y);
        yd[i] += MultiDual::unit(0);
        yd[j] += MultiDual::unit(1);
        yd[k] += MultiDual::unit(2);
        c.at_sorted(i, j, k) = 0.25 * f_squared(mp, yd, spec).coeff(0b0111);
      }
  return c;
}

SymTensor4 oracle_cartan_derivative(const MetricPoint& mp, const Direction& y,
                                    const PhiSpec& spec) {
  SymTensor4 t(mp.dim);
  for (int h = 0; h < mp.dim; ++h)
    for (int i = h; i < mp.dim; ++i)
      for (int j = i; j < mp.dim; ++j)
        for (int k = j; k < mp.dim; ++k) {
          auto yd = lift(y);
          yd[h] += MultiDual::unit(0);
          yd[i] += MultiDual::unit(1);
          yd[j] += MultiDual::unit(2);
          yd[k] += MultiDual::unit(3);
          t.at_sorted(h, i, j, k) = 0.25 * f_squared(mp, yd, spec).coeff(0b1111);
        }
  return t;
}

SymTensor4 expanded_cartan_derivative(const MetricPoint& mp, const Direction& y,
                                      const PhiSpec& spec) {
  const BaseGeometry geo = eval_geometry(mp, y);
  const ScalarJet phi = phi_jet(spec, geo.s, kJetMaxOrder);
  const RhoSet r = rho_scalars(phi, geo.s);
  const double a2 = geo.alpha * geo.alpha;
  const double w_n = -r.rho1 / (2.0 * a2);
  const double w_hh = -geo.s * r.rho1 / (2.0 * a2);
  const double w_hmm = -geo.s * r.rho0_p / (2.0 * a2);
  const double w_m4 = r.rho0_pp / (2.0 * a2);
  const double w_nmm = -r.rho0_p / (2.0 * a2);
  const Matrix& h = geo.h;
  const Matrix& nm = geo.n_mixed;
  const Vec& m = geo.m;

  SymTensor4 t(mp.dim);
  for (int p = 0; p < mp.dim; ++p)
    for (int i = p; i < mp.dim; ++i)
      for (int j = i; j < mp.dim; ++j)
        for (int k = j; k < mp.dim; ++k) {
          const double hn = h(i, k) * nm(j, p) + h(j, k) * nm(i, p) + h(i, j) * nm(k, p) +
                            h(j, p) * nm(i, k) + h(k, p) * nm(i, j) + h(i, p) * nm(j, k);
          const double hh = h(i, k) * h(j, p) + h(j, k) * h(i, p) + h(k, p) * h(i, j);
          const double hmm = h(i, j) * m[p] * m[k] + h(k, i) * m[j] * m[p] + h(p, k) * m[i] * m[j] +
                             h(j, p) * m[k] * m[i] + h(i, p) * m[j] * m[k] + h(k, j) * m[i] * m[p];
          const double nmm = nm(i, j) * m[p] * m[k] + nm(k, p) * m[i] * m[j];
          t.at_sorted(p, i, j, k) = w_n * hn + w_hh * hh + w_hmm * hmm +
                                    w_m4 * m[p] * m[i] * m[j] * m[k] + w_nmm * nmm;
        }
  return t;
}

Vec oracle_ell(const MetricPoint& mp, const Direction& y, const PhiSpec& spec) {
  Vec ell(mp.dim);
  for (int i = 0; i < mp.dim; ++i) {
    auto yd = lift(y);
    yd[i] += MultiDual::unit(0);
    ell[i] = f_dual(mp, yd, spec).coeff(0b0001);
  }
  return ell;
}

SymTensor4 oracle_t(const MetricPoint& mp, const Direction& y, const PhiSpec& spec,
                    OracleTTerms* terms) {
  const int n = mp.dim;
  const Matrix g = oracle_metric(mp, y, spec);
  Matrix ginv;
  try {
    // the fundamental tensor may be indefinite for almost-regular families
    ginv = general_inverse(g);
  } catch (const Error&) {
    raise(Errc::degenerate_metric, "oracle metric is singular");
  }
  const SymTensor3 cartan = oracle_cartan(mp, y, spec);
  const SymTensor4 c4 = oracle_cartan_derivative(mp, y, spec);
  const Vec ell = oracle_ell(mp, y, spec);

  auto yd = lift(y);
  const double F = std::sqrt(f_squared(mp, yd, spec).real());

  // C^s_jk = g^{sr} C_rjk, stored dense per raised index
  std::vector<Matrix> raised(n, Matrix(n));
  for (int s = 0; s < n; ++s)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        double acc = 0.0;
        for (int r = 0; r < n; ++r) acc += ginv(s, r) * cartan(r, j, k);
        raised[s](j, k) = raised[s](k, j) = acc;
      }
  const auto raised_at = [&](int s, int j, int k) { return raised[s](j, k); };

  OracleTTerms local{};
  SymTensor4 t(n);
  for (int r = 0; r < n; ++r)
    for (int i = r; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k) {
          double cc = 0.0;
          for (int s = 0; s < n; ++s)
            cc += cartan(s, i, j) * raised_at(s, r, k) + cartan(s, j, r) * raised_at(s, i, k) +
                  cartan(s, i, r) * raised_at(s, j, k);
          const double cl = cartan(r, i, j) * ell[k] + cartan(r, i, k) * ell[j] +
                            cartan(r, j, k) * ell[i] + cartan(i, j, k) * ell[r];
          t.at_sorted(r, i, j, k) = F * c4(r, i, j, k) - F * cc + cl;
          local.max_fc4 = std::max(local.max_fc4, std::abs(F * c4(r, i, j, k)));
          local.max_fcc = std::max(local.max_fcc, std::abs(F * cc));
          local.max_cl = std::max(local.max_cl, std::abs(cl));
        }
  if (terms) *terms = local;
  return t;
}

double oracle_t_component(const MetricPoint& mp, const Direction& y, const PhiSpec& spec, int h,
                          int i, int j, int k) {
  const int n = mp.dim;
  const Matrix g = oracle_metric(mp, y, spec);
  const Matrix ginv = general_inverse(g);
  const SymTensor3 cartan = oracle_cartan(mp, y, spec);
  const Vec ell = oracle_ell(mp, y, spec);
  auto yd0 = lift(y);
  const double F = std::sqrt(f_squared(mp, yd0, spec).real());

  // fourth partial with the caller's index order driving unit assignment
  auto yd = lift(y);
  yd[h] += MultiDual::unit(0);
  yd[i] += MultiDual::unit(1);
  yd[j] += MultiDual::unit(2);
  yd[k] += MultiDual::unit(3);
  const double c4 = 0.25 * f_squared(mp, yd, spec).coeff(0b1111);

  const auto raised_at = [&](int s, int a, int b) {
    double acc = 0.0;
    for (int r = 0; r < n; ++r) acc += ginv(s, r) * cartan(r, a, b);
    return acc;
  };
  double cc = 0.0;
  for (int s = 0; s < n; ++s)
    cc += cartan(s, i, j) * raised_at(s, h, k) + cartan(s, j, h) * raised_at(s, i, k) +
          cartan(s, i, h) * raised_at(s, j, k);
  const double cl = cartan(h, i, j) * ell[k] + cartan(h, i, k) * ell[j] +
                    cartan(h, j, k) * ell[i] + cartan(i, j, k) * ell[h];
  return F * c4 - F * cc + cl;
}

namespace {

// Tensors whose components all sit below this are zero to round-off; the
// relative measure then degenerates to noise/noise and is reported as 0.
constexpr double kZeroTensorScale = 1e-12;

ComparisonReport compare_flat(const std::vector<double>& closed, const std::vector<double>& oracle,
                              const std::vector<std::array<int, 4>>& labels) {
  ComparisonReport rep;
  for (double v : oracle) rep.scale = std::max(rep.scale, std::abs(v));
  for (std::size_t i = 0; i < closed.size(); ++i) {
    const double d = std::abs(closed[i] - oracle[i]);
    if (d > rep.max_abs) {
      rep.max_abs = d;
      rep.argmax = labels[i];
    }
  }
  rep.max_rel = rep.scale > kZeroTensorScale ? rep.max_abs / rep.scale : 0.0;
  return rep;
}

}  // namespace

ComparisonReport compare(const Matrix& closed, const Matrix& oracle) {
  if (closed.dim() != oracle.dim()) raise(Errc::dimension_mismatch, "compare: dimensions differ");
  std::vector<double> a, b;
  std::vector<std::array<int, 4>> labels;
  for (int i = 0; i < closed.dim(); ++i)
    for (int j = 0; j < closed.dim(); ++j) {
      a.push_back(closed(i, j));
      b.push_back(oracle(i, j));
      labels.push_back({i, j, -1, -1});
    }
  return compare_flat(a, b, labels);
}

ComparisonReport compare(const SymTensor3& closed, const SymTensor3& oracle) {
  if (closed.dim() != oracle.dim()) raise(Errc::dimension_mismatch, "compare: dimensions differ");
  std::vector<double> a, b;
  std::vector<std::array<int, 4>> labels;
  for (int i = 0; i < closed.dim(); ++i)
    for (int j = i; j < closed.dim(); ++j)
      for (int k = j; k < closed.dim(); ++k) {
        a.push_back(closed(i, j, k));
        b.push_back(oracle(i, j, k));
        labels.push_back({i, j, k, -1});
      }
  return compare_flat(a, b, labels);
}

ComparisonReport compare(const SymTensor4& closed, const SymTensor4& oracle) {
  if (closed.dim() != oracle.dim()) raise(Errc::dimension_mismatch, "compare: dimensions differ");
  std::vector<double> a, b;
  std::vector<std::array<int, 4>> labels;
  for (int h = 0; h < closed.dim(); ++h)
    for (int i = h; i < closed.dim(); ++i)
      for (int j = i; j < closed.dim(); ++j)
        for (int k = j; k < closed.dim(); ++k) {
          a.push_back(closed(h, i, j, k));
          b.push_back(oracle(h, i, j, k));
          labels.push_back({h, i, j, k});
        }
  return compare_flat(a, b, labels);
}

}  // namespace finsler
