#pragma once

#include <map>
#include <optional>

#include "finsler/ad_oracle.hpp"
#include "finsler/sweep.hpp"

namespace finsler {

// Chebyshev-spaced samples on the open interval (lo, hi), endpoints excluded.
std::vector<double> chebyshev_grid(double lo, double hi, int count);

// Default classification grid for a family: (0.05 b, 0.95 b) when the domain
// excludes s <= 0, symmetric (-0.95 b, 0.95 b) otherwise, with b = sqrt(b^2).
std::vector<double> default_s_grid(const PhiSpec& spec, double b_sq, int count = 33);

// A direction with beta/alpha = s exactly, built in a-orthonormal
// coordinates as y = (s/b) bhat + sqrt(1 - s^2/b^2) yperp(angle).
Direction realize_direction(const MetricPoint& mp, double s, double angle = 0.3);

enum class MetricClass { riemannian, t_condition, sigma_t_condition, general };
const char* metric_class_name(MetricClass c);

struct RiemannianTestResult {
  bool is_riemannian = false;
  double rho1_max = 0.0;
  double rho2_max = 0.0;    // normalized by max(1, |s|)
  double cartan_max = 0.0;  // largest Cartan component over the grid
  std::optional<std::array<double, 2>> fitted_k;  // (k1, k2) from a two-point solve
};

struct TConditionResult {
  bool holds = false;
  double phi_max = 0.0;
  double psi_max = 0.0;
  double omega_max = 0.0;
  bool converse_ok = true;  // Psi, Omega vanish whenever Phi does
  std::optional<double> fitted_c;  // fit of Q to (c b^2 - 1)/s - c s
  double fit_residual = 0.0;
};

struct SigmaTConditionResult {
  bool holds = false;
  double a_max = 0.0;  // max |Phi + m^2 Psi|
  double b_max = 0.0;  // max |3 Psi + m^2 Omega|
  double sigma_contraction_max = 0.0;  // with sigma = b
  double condition_c_max = 0.0;
};

struct ClassificationVerdict {
  MetricClass kind = MetricClass::general;
  std::map<std::string, double> residuals;
  std::vector<double> grid;
  bool dim_ok = false;
  double tol = 0.0;
  std::optional<std::array<double, 2>> riemannian_fit;
  std::optional<double> berwald_fit_c;
  double berwald_fit_residual = 0.0;
};

// The three decision procedures require dim >= 3.
RiemannianTestResult riemannian_test(const MetricPoint& mp, const PhiSpec& spec,
                                     const std::vector<double>& grid, double tol = 1e-8,
                                     ExecMode mode = ExecMode::parallel);

TConditionResult t_condition_test(const MetricPoint& mp, const PhiSpec& spec,
                                  const std::vector<double>& grid, double tol = 1e-8,
                                  ExecMode mode = ExecMode::parallel);

SigmaTConditionResult sigma_t_condition_test(const MetricPoint& mp, const PhiSpec& spec,
                                             const std::vector<double>& grid, double tol = 1e-8,
                                             ExecMode mode = ExecMode::parallel);

// Most specific verdict wins: riemannian > t_condition > sigma_t_condition
// > general. All residuals are reported regardless of the verdict.
ClassificationVerdict classify(const MetricPoint& mp, const PhiSpec& spec,
                               const std::vector<double>& grid, double tol = 1e-8,
                               ExecMode mode = ExecMode::parallel);

}  // namespace finsler
