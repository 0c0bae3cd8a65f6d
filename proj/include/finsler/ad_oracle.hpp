#pragma once

#include <array>

#include "finsler/multidual.hpp"
#include "finsler/tensor_engine.hpp"

namespace finsler {

// Definition-based computation of the fundamental tensors straight from
// F^2 = (alpha phi(beta/alpha))^2 using nilpotent multi-dual arithmetic:
//
//   g_ijk..  = 1/2 d^2 F^2      C = 1/4 d^3 F^2      dC = 1/4 d^4 F^2
//
// No closed-form tensor formula enters these paths; they exist to validate
// the closed forms at full double precision.

// F^2 evaluated through multi-dual alpha, beta, s and the order-4 phi jet.
MultiDual f_squared(const MetricPoint& mp, const std::vector<MultiDual>& y, const PhiSpec& spec);

Matrix oracle_metric(const MetricPoint& mp, const Direction& y, const PhiSpec& spec);
SymTensor3 oracle_cartan(const MetricPoint& mp, const Direction& y, const PhiSpec& spec);

// 1/4 of the full fourth derivative tensor of F^2 (the y-derivative of the
// Cartan tensor).
SymTensor4 oracle_cartan_derivative(const MetricPoint& mp, const Direction& y,
                                    const PhiSpec& spec);

// Same tensor from the expanded closed form in terms of h, m, n and the rho
// tower; a redundant third path used to localize algebra errors.
SymTensor4 expanded_cartan_derivative(const MetricPoint& mp, const Direction& y,
                                      const PhiSpec& spec);

// dF/dy via one-unit duals (independent of the phi alpha_i + phi' m_i form).
Vec oracle_ell(const MetricPoint& mp, const Direction& y, const PhiSpec& spec);

struct OracleTTerms {
  double max_fc4 = 0.0;  // F * dC term
  double max_fcc = 0.0;  // F * (C C) term
  double max_cl = 0.0;   // C (x) l symmetrization
};

// T assembled term by term from its definition:
//   T_rijk = F dC_rijk - F (C_sij C^s_rk + C_sjr C^s_ik + C_sir C^s_jk)
//          + C_rij l_k + C_rik l_j + C_rjk l_i + C_ijk l_r
SymTensor4 oracle_t(const MetricPoint& mp, const Direction& y, const PhiSpec& spec,
                    OracleTTerms* terms = nullptr);

// Raw component evaluation with a caller-chosen unit assignment order; the
// result must not depend on the order. Used by symmetry checks.
double oracle_t_component(const MetricPoint& mp, const Direction& y, const PhiSpec& spec, int h,
                          int i, int j, int k);

struct ComparisonReport {
  double max_abs = 0.0;
  double max_rel = 0.0;  // max_abs relative to the oracle's largest component
  std::array<int, 4> argmax{-1, -1, -1, -1};
  double scale = 0.0;
};

ComparisonReport compare(const Matrix& closed, const Matrix& oracle);
ComparisonReport compare(const SymTensor3& closed, const SymTensor3& oracle);
ComparisonReport compare(const SymTensor4& closed, const SymTensor4& oracle);

}  // namespace finsler
