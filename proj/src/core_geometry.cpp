#include "finsler/core_geometry.hpp"

#include <cmath>

namespace finsler {

MetricPoint make_metric_point(const Matrix& a, const Vec& b, double b0) {
  const int n = a.dim();
  if (n < 2) raise(Errc::dimension_too_small, "metric point needs dim >= 2");
  if (static_cast<int>(b.size()) != n)
    raise(Errc::dimension_mismatch, "one form length does not match matrix dimension");
  if (!a.is_symmetric(1e-12 * std::max(1.0, a.max_abs())))
    raise(Errc::bad_config, "matrix a is not symmetric");

  MetricPoint mp;
  mp.dim = n;
  mp.a = a;
  mp.a_inv = spd_inverse(a);  // throws NotPositiveDefinite on failure
  mp.b = b;
  mp.b_up = matvec(mp.a_inv, b);
  mp.b_sq = dot(b, mp.b_up);
  mp.b0 = b0;
  if (!(mp.b_sq > 0.0)) raise(Errc::bad_config, "one form must be nonzero (b^2 > 0)");
  if (std::sqrt(mp.b_sq) > b0 * (1.0 + 1e-12))
    raise(Errc::bad_config, "|b|_a exceeds the bound b0");
  return mp;
}

BaseGeometry eval_geometry(const MetricPoint& mp, const Direction& dir) {
  const int n = mp.dim;
  if (static_cast<int>(dir.y.size()) != n)
    raise(Errc::dimension_mismatch, "direction length does not match metric dimension");

  const Vec ay = matvec(mp.a, dir.y);
  const double alpha_sq = dot(dir.y, ay);
  if (!(alpha_sq > 1e-200)) raise(Errc::zero_direction, "alpha(y) <= tolerance");

  BaseGeometry g;
  g.alpha = std::sqrt(alpha_sq);
  g.beta = dot(mp.b, dir.y);
  g.s = g.beta / g.alpha;

  g.alpha_low.resize(n);
  for (int i = 0; i < n; ++i) g.alpha_low[i] = ay[i] / g.alpha;

  g.m.resize(n);
  for (int i = 0; i < n; ++i) g.m[i] = mp.b[i] - g.s * g.alpha_low[i];
  g.m_sq = mp.b_sq - g.s * g.s;

  g.h = Matrix(n);
  g.n_mixed = Matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g.h(i, j) = mp.a(i, j) - g.alpha_low[i] * g.alpha_low[j];
      g.n_mixed(i, j) = g.alpha_low[i] * g.m[j] + g.alpha_low[j] * g.m[i];
    }
  return g;
}

}  // namespace finsler
