#pragma once

#include "finsler/core_geometry.hpp"
#include "finsler/phi_catalog.hpp"

namespace finsler {

// Scalar invariants of the phi tower at a fixed s:
//   rho  = phi^2 - s phi phi'         rho1 = phi phi' - s rho0
//   rho0 = phi'^2 + phi phi''         rho2 = s^2 rho0 - s phi phi'
// plus the first and second s-derivatives of rho0. The identity
// s rho1 + rho2 = 0 holds by construction.
struct RhoSet {
  double rho, rho0, rho1, rho2, rho0_p, rho0_pp;
};

// Needs an order-4 jet (rho0'' consumes phi'''').
RhoSet rho_scalars(const ScalarJet& phi, double s);

// Coefficients of the fully symmetric four-tensor decomposition
//   T = Phi * (hh sym) + Psi * (h mm sym) + Omega * m^4
// together with the inverse-metric weights mu0..mu2 and the auxiliary
// scalars K1, K2. conditioning is the ratio of the largest to the smallest
// guarded denominator at this evaluation point.
struct TCoefficients {
  double Phi, Psi, Omega;
  double K1, K2;
  double mu0, mu1, mu2;
  double conditioning;
};

// Totally symmetric rank-3 tensor; only multiset components i <= j <= k are
// stored, access with arbitrary index order symmetrizes by sorting.
class SymTensor3 {
 public:
  SymTensor3() = default;
  explicit SymTensor3(int dim);

  int dim() const { return dim_; }
  static int packed_size(int dim) { return dim * (dim + 1) * (dim + 2) / 6; }
  static int rank(int dim, int i, int j, int k);  // i <= j <= k

  double operator()(int i, int j, int k) const;
  double& at_sorted(int i, int j, int k);

  const std::vector<double>& packed() const { return c_; }
  double max_abs() const;

 private:
  int dim_ = 0;
  std::vector<double> c_;
};

// Totally symmetric rank-4 tensor, same storage scheme.
class SymTensor4 {
 public:
  SymTensor4() = default;
  explicit SymTensor4(int dim);

  int dim() const { return dim_; }
  static int packed_size(int dim) { return dim * (dim + 1) * (dim + 2) * (dim + 3) / 24; }
  static int rank(int dim, int h, int i, int j, int k);  // h <= i <= j <= k

  double operator()(int h, int i, int j, int k) const;
  double& at_sorted(int h, int i, int j, int k);

  const std::vector<double>& packed() const { return c_; }
  double max_abs() const;

 private:
  int dim_ = 0;
  std::vector<double> c_;
};

// Rank-4 tensor with one raised index, symmetric in the three lower ones.
struct RaisedTensor4 {
  int dim = 0;
  std::vector<double> comp;  // [h * sym3_packed + rank3(i,j,k)]

  double operator()(int h, int i, int j, int k) const;
  double max_abs() const;
};

// g_ij = rho a_ij + rho0 b_i b_j + rho1 (b_i alpha_j + b_j alpha_i)
//      + rho2 alpha_i alpha_j
Matrix metric_lower(const MetricPoint& mp, const Direction& y, const PhiSpec& spec);

// g^ij = (1/rho) a^ij + mu0 b^i b^j + mu1 (b^i alpha^j + b^j alpha^i)
//      + mu2 alpha^i alpha^j; guards rho + phi phi'' m^2.
Matrix metric_upper(const MetricPoint& mp, const Direction& y, const PhiSpec& spec,
                    double guard = kGuardEps);

// C_ijk = (rho1 / 2 alpha)(h_ij m_k + h_jk m_i + h_ik m_j)
//       + (rho0' / 2 alpha) m_i m_j m_k
SymTensor3 cartan_lower(const MetricPoint& mp, const Direction& y, const PhiSpec& spec);

// l_i = phi alpha_i + phi' m_i  (the y-gradient of F)
Vec ell_covector(const MetricPoint& mp, const Direction& y, const PhiSpec& spec);

TCoefficients t_coefficients(const MetricPoint& mp, const Direction& y, const PhiSpec& spec,
                             double guard = kGuardEps);

SymTensor4 t_lower(const MetricPoint& mp, const Direction& y, const PhiSpec& spec,
                   double guard = kGuardEps);

// Raw component of t_lower without symmetric storage, any index order; used
// by symmetry checks.
double t_lower_component(const MetricPoint& mp, const Direction& y, const PhiSpec& spec, int h,
                         int i, int j, int k, double guard = kGuardEps);

// Closed form of g^{hr} T_rijk.
RaisedTensor4 t_raised(const MetricPoint& mp, const Direction& y, const PhiSpec& spec,
                       double guard = kGuardEps);

// Numeric contraction g^{hr} T_rijk; the second route t_raised is checked
// against.
RaisedTensor4 raise_index(const Matrix& g_upper, const SymTensor4& t);

// Largest |closed - reference| over all components, relative to the
// reference scale.
double raised_max_rel_diff(const RaisedTensor4& a, const RaisedTensor4& b);

struct SigmaContraction {
  SymTensor3 contraction;   // sigma_h T^h_ijk
  double condition_c_max;   // max_j |sigma_j - (sigma_0 / (s alpha)) b_j|
};

SigmaContraction sigma_contract(const Vec& sigma, const MetricPoint& mp, const Direction& y,
                                const PhiSpec& spec, double guard = kGuardEps);

}  // namespace finsler
