#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "finsler/jet.hpp"

namespace finsler {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool contains(double s) const { return s > lo && s < hi; }
};

// phi families in F = alpha * phi(s), s = beta/alpha.
//
//   riemannian      phi = sqrt(k1 s^2 + k2)
//   randers         phi = 1 + s
//   kropina         phi = 1/s                               (s > 0 only)
//   shen_berwald    phi = s^((c b^2-1)/(c b^2)) (c b^2 - c s^2)^(1/(2 c b^2))
//   shen_landsberg  phi = exp(Int Q/(1+tQ) dt), Q = c1 t + c2 sqrt(b^2-t^2)
//   general_q       phi = exp(Int Q/(1+tQ) dt) for a user Q
//   series          phi = sum coeffs[k] s^k
//   linear_sqrt     phi = c1 s + c2 sqrt(b^2 - s^2); the metric this phi
//                   induces is singular, kept to exercise the degeneracy
//                   guards
//
// Every family carries a free positive normalization c3 multiplying phi.
enum class PhiFamily {
  riemannian,
  randers,
  kropina,
  shen_berwald,
  shen_landsberg,
  general_q,
  series,
  linear_sqrt,
};

struct QSpec;

struct PhiSpec {
  PhiFamily family = PhiFamily::randers;
  double k1 = 0.0, k2 = 0.0;  // riemannian
  double c = 0.0;             // shen_berwald
  double c1 = 0.0, c2 = 0.0;  // shen_landsberg / linear_sqrt
  double b_sq = 0.0;          // families whose formula contains b^2
  std::vector<double> series; // series coefficients, constant term first
  std::shared_ptr<QSpec> q;   // general_q
  double c3 = 1.0;
  Interval domain;
  double s_ref = 0.0;         // quadrature anchor for integral-defined families

  static PhiSpec make_riemannian(double k1, double k2, double c3 = 1.0);
  static PhiSpec make_randers(double c3 = 1.0);
  static PhiSpec make_kropina(double c3 = 1.0);
  // Requires c * b_sq > 1; other parameter ranges have no real branch here.
  static PhiSpec make_shen_berwald(double c, double b_sq, double c3 = 1.0);
  static PhiSpec make_shen_landsberg(double c1, double c2, double b_sq, double c3 = 1.0);
  // Same family parameterized against a constant-length one form b(x) = b0:
  // Q = s_coeff * s + sqrt_coeff * sqrt(1 - (s/b0)^2).
  static PhiSpec make_shen_landsberg_b0(double b0, double s_coeff, double sqrt_coeff,
                                        double c3 = 1.0);
  static PhiSpec make_general_q(const QSpec& q, Interval domain, double s_ref, double c3 = 1.0);
  static PhiSpec make_series(std::vector<double> coeffs, double c3 = 1.0);
  static PhiSpec make_linear_sqrt(double c1, double c2, double b_sq, double c3 = 1.0);

  std::string family_name() const;
};

// Closed-form Q(s) selectors. Q transforms phi via Q = phi'/(phi - s phi')
// and back via phi = exp(Int Q/(1+sQ)).
struct QSpec {
  enum class Kind { linear, berwald, from_phi };
  Kind kind = Kind::linear;
  double c1 = 0.0, c2 = 0.0;  // linear: Q = c1 s + c2 sqrt(b^2 - s^2)
  double c = 0.0;             // berwald: Q = (c b^2 - 1)/s - c s
  double b_sq = 0.0;
  std::shared_ptr<PhiSpec> phi;  // from_phi

  static QSpec linear(double c1, double c2, double b_sq);
  static QSpec berwald(double c, double b_sq);
  static QSpec from_phi(const PhiSpec& spec);
};

// Derivative tower of phi at s, exact per family formula (no finite
// differences). Integral-defined families get their value from quadrature
// and their derivatives from the log-derivative recursion through Q.
ScalarJet phi_jet(const PhiSpec& spec, double s, int order = kJetMaxOrder);

// Derivative tower of Q at s, order <= 3 supported for every kind.
ScalarJet q_jet(const QSpec& q, double s, int order = 3);

// Q = phi'/(phi - s phi') with first and second derivatives; guards the
// denominator phi - s phi' at 1e-14.
ScalarJet q_from_phi(const PhiSpec& spec, double s);

// c3 * exp(Int_{s_ref}^{s} Q/(1+tQ) dt) by adaptive quadrature (abs tol
// 1e-12, max depth 40). Errors when 1+tQ loses positivity on the path.
double phi_from_q(const QSpec& q, double s, double s_ref, double c3 = 1.0);

enum class RegularityClass { regular, positively_almost_regular, irregular };
const char* regularity_name(RegularityClass c);

struct RegularityReport {
  std::vector<double> grid;
  std::vector<bool> positivity_ok;    // phi > 0
  std::vector<bool> hessian_ok;       // phi - s phi' + (t^2 - s^2) phi'' > 0, |s| < t < b0
  std::vector<bool> denominator_ok;   // |rho + phi phi'' m^2| above guard
  double min_hessian = 0.0;
  double min_denominator_abs = 0.0;
  RegularityClass summary = RegularityClass::irregular;
};

RegularityReport regularity_check(const PhiSpec& spec, double b_sq, double b0,
                                  const std::vector<double>& grid);

}  // namespace finsler
