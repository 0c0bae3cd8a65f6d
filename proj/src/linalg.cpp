#include "finsler/linalg.hpp"

#include <cmath>
#include <cstdlib>

namespace finsler {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_positive_definite: return "NotPositiveDefinite";
    case Errc::empty_grid: return "EmptyGrid";
    case Errc::order_too_high: return "OrderTooHigh";
    case Errc::insufficient_jet_order: return "InsufficientJetOrder";
    case Errc::dimension_too_small: return "DimensionTooSmall";
    case Errc::bad_config: return "BadConfig";
    case Errc::zero_direction: return "ZeroDirection";
    case Errc::out_of_domain: return "OutOfDomain";
    case Errc::degenerate_denominator: return "DegenerateDenominator";
    case Errc::quadrature_failure: return "QuadratureFailure";
    case Errc::pole_on_path: return "PoleOnPath";
    case Errc::degenerate_metric: return "DegenerateMetric";
    case Errc::parallel_direction: return "ParallelDirection";
    case Errc::s_divides_zero: return "SDividesZero";
    case Errc::boundary_s: return "BoundaryS";
    case Errc::unsupported_parameter_range: return "UnsupportedParameterRange";
  }
  return "UnknownError";
}

bool is_domain_error(Errc c) {
  switch (c) {
    case Errc::zero_direction:
    case Errc::out_of_domain:
    case Errc::degenerate_denominator:
    case Errc::quadrature_failure:
    case Errc::pole_on_path:
    case Errc::degenerate_metric:
    case Errc::parallel_direction:
    case Errc::s_divides_zero:
    case Errc::boundary_s:
    case Errc::unsupported_parameter_range:
      return true;
    default:
      return false;
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vec& d) {
  Matrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = d[i];
  return m;
}

bool Matrix::is_symmetric(double tol) const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : d_) m = std::max(m, std::abs(v));
  return m;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) raise(Errc::dimension_mismatch, "dot: vector sizes differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec matvec(const Matrix& m, const Vec& v) {
  if (static_cast<int>(v.size()) != m.dim()) raise(Errc::dimension_mismatch, "matvec: size mismatch");
  Vec out(v.size(), 0.0);
  for (int i = 0; i < m.dim(); ++i) {
    double s = 0.0;
    for (int j = 0; j < m.dim(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) raise(Errc::dimension_mismatch, "matmul: size mismatch");
  Matrix c(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < a.dim(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < a.dim(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix cholesky_lower(const Matrix& a) {
  const int n = a.dim();
  Matrix lower(n);
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= lower(j, k) * lower(j, k);
    if (!(d > 0.0)) raise(Errc::not_positive_definite, "pivot " + std::to_string(j) + " not positive");
    lower(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
      lower(i, j) = s / lower(j, j);
    }
  }
  return lower;
}

Vec cholesky_solve(const Matrix& lower, const Vec& rhs) {
  const int n = lower.dim();
  if (static_cast<int>(rhs.size()) != n) raise(Errc::dimension_mismatch, "cholesky_solve: size mismatch");
  Vec y(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = rhs[i];
    for (int k = 0; k < i; ++k) s -= lower(i, k) * y[k];
    y[i] = s / lower(i, i);
  }
  Vec x(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k < n; ++k) s -= lower(k, i) * x[k];
    x[i] = s / lower(i, i);
  }
  return x;
}

Matrix general_inverse(const Matrix& a) {
  const int n = a.dim();
  // augmented [a | I], reduced in place
  std::vector<double> m(static_cast<std::size_t>(n) * 2 * n, 0.0);
  const auto at = [&](int i, int j) -> double& { return m[static_cast<std::size_t>(i) * 2 * n + j]; };
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      at(i, j) = a(i, j);
      scale = std::max(scale, std::abs(a(i, j)));
    }
  for (int i = 0; i < n; ++i) at(i, n + i) = 1.0;

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    if (std::abs(at(pivot, col)) <= 1e-14 * std::max(1.0, scale))
      raise(Errc::degenerate_denominator, "matrix is singular to working precision");
    if (pivot != col)
      for (int j = 0; j < 2 * n; ++j) std::swap(at(pivot, j), at(col, j));
    const double inv_p = 1.0 / at(col, col);
    for (int j = 0; j < 2 * n; ++j) at(col, j) *= inv_p;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = at(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < 2 * n; ++j) at(r, j) -= f * at(col, j);
    }
  }

  Matrix inv(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = at(i, n + j);
  return inv;
}

Matrix spd_inverse(const Matrix& a) {
  const Matrix lower = cholesky_lower(a);
  const int n = a.dim();
  Matrix inv(n);
  Vec e(n, 0.0);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    Vec col = cholesky_solve(lower, e);
    for (int i = 0; i < n; ++i) inv(i, j) = col[i];
    e[j] = 0.0;
  }
  // symmetrize: columns were solved independently
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (inv(i, j) + inv(j, i));
      inv(i, j) = inv(j, i) = v;
    }
  return inv;
}

}  // namespace finsler
