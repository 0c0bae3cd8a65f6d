#pragma once

#include "finsler/linalg.hpp"

namespace finsler {

// One spatial slice of (alpha, beta) data: a Riemannian metric a_ij, a one
// form b_i, and derived quantities. Immutable after construction; all
// operations downstream are pure functions of (MetricPoint, direction).
struct MetricPoint {
  int dim = 0;
  Matrix a;       // a_ij, symmetric positive definite
  Matrix a_inv;   // a^{ij}
  Vec b;          // covector b_i
  Vec b_up;       // raised b^i = a^{ij} b_j
  double b_sq = 0.0;  // b^2 = b_i a^{ij} b_j
  double b0 = 0.0;    // regularity radius bound
};

struct Direction {
  Vec y;  // supporting element components y^i
};

// Per-direction scalars and auxiliary tensors shared by every tensor formula.
//   alpha_i = a_ij y^j / alpha          m_i = b_i - s alpha_i
//   h_ij    = a_ij - alpha_i alpha_j    n_ij = alpha_i m_j + alpha_j m_i
struct BaseGeometry {
  double alpha = 0.0;
  double beta = 0.0;
  double s = 0.0;     // beta / alpha
  Vec alpha_low;
  Vec m;
  double m_sq = 0.0;  // b^2 - s^2
  Matrix h;
  Matrix n_mixed;
};

// Validates symmetry and positive definiteness, computes the inverse and
// b^2. Rejects zero one-forms and |b|_a > b0.
MetricPoint make_metric_point(const Matrix& a, const Vec& b, double b0);

BaseGeometry eval_geometry(const MetricPoint& mp, const Direction& y);

}  // namespace finsler
