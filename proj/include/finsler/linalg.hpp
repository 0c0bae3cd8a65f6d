#pragma once

#include <cstddef>
#include <vector>

#include "finsler/error.hpp"

namespace finsler {

using Vec = std::vector<double>;

// Dense square matrix, row major. Sized for the small dimensions this
// library works at (n <= 8 or so); no blocking, no expression templates.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, 0.0) {}

  static Matrix identity(int n);
  static Matrix diagonal(const Vec& d);

  int dim() const { return n_; }

  double& operator()(int i, int j) { return d_[idx(i, j)]; }
  double operator()(int i, int j) const { return d_[idx(i, j)]; }

  const std::vector<double>& data() const { return d_; }

  bool is_symmetric(double tol) const;
  double max_abs() const;

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  int n_ = 0;
  std::vector<double> d_;
};

double dot(const Vec& a, const Vec& b);
Vec matvec(const Matrix& m, const Vec& v);
Matrix matmul(const Matrix& a, const Matrix& b);

// Lower Cholesky factor of a symmetric positive definite matrix.
// Throws Errc::not_positive_definite when a pivot is not strictly positive.
Matrix cholesky_lower(const Matrix& a);

// Solves a x = rhs given the lower factor of a.
Vec cholesky_solve(const Matrix& lower, const Vec& rhs);

// Full inverse of an SPD matrix via its Cholesky factor.
Matrix spd_inverse(const Matrix& a);

// Inverse of a general invertible matrix by Gauss-Jordan with partial
// pivoting; the fundamental tensor can be indefinite in the almost-regular
// regime, so the oracle cannot rely on Cholesky.
Matrix general_inverse(const Matrix& a);

}  // namespace finsler
