#include "finsler/jet.hpp"

#include <algorithm>
#include <cmath>

namespace finsler {

namespace {

// Pascal's triangle up to order 4.
constexpr double kBinom[5][5] = {
    {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};

int check_order(int order) {
  if (order < 0 || order > kJetMaxOrder)
    raise(Errc::order_too_high, "jet order " + std::to_string(order) + " outside [0, 4]");
  return order;
}

}  // namespace

ScalarJet::ScalarJet(int order) : order_(check_order(order)) {}

ScalarJet ScalarJet::constant(double v, int order) {
  ScalarJet j(order);
  j.d_[0] = v;
  return j;
}

ScalarJet ScalarJet::variable(double v, int order) {
  ScalarJet j(order);
  j.d_[0] = v;
  if (order >= 1) j.d_[1] = 1.0;
  return j;
}

double ScalarJet::deriv(int k) const {
  if (k < 0 || k > order_)
    raise(Errc::insufficient_jet_order,
          "derivative " + std::to_string(k) + " requested from order-" + std::to_string(order_) + " jet");
  return d_[k];
}

double& ScalarJet::deriv(int k) {
  if (k < 0 || k > order_)
    raise(Errc::insufficient_jet_order,
          "derivative " + std::to_string(k) + " requested from order-" + std::to_string(order_) + " jet");
  return d_[k];
}

ScalarJet& ScalarJet::operator+=(const ScalarJet& o) {
  order_ = std::min(order_, o.order_);
  for (int k = 0; k <= order_; ++k) d_[k] += o.d_[k];
  return *this;
}

ScalarJet& ScalarJet::operator-=(const ScalarJet& o) {
  order_ = std::min(order_, o.order_);
  for (int k = 0; k <= order_; ++k) d_[k] -= o.d_[k];
  return *this;
}

ScalarJet operator+(const ScalarJet& a, const ScalarJet& b) {
  ScalarJet r(a);
  r += b;
  return r;
}

ScalarJet operator-(const ScalarJet& a, const ScalarJet& b) {
  ScalarJet r(a);
  r -= b;
  return r;
}

ScalarJet operator*(const ScalarJet& a, const ScalarJet& b) {
  const int order = std::min(a.order(), b.order());
  ScalarJet r(order);
  for (int n = 0; n <= order; ++n) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k) s += kBinom[n][k] * a.deriv(k) * b.deriv(n - k);
    r.deriv(n) = s;
  }
  return r;
}

ScalarJet operator/(const ScalarJet& a, const ScalarJet& b) {
  const int order = std::min(a.order(), b.order());
  if (b.value() == 0.0) raise(Errc::degenerate_denominator, "jet division by zero value");
  ScalarJet q(order);
  // Solve a^(n) = sum_k C(n,k) q^(k) b^(n-k) for q^(n).
  for (int n = 0; n <= order; ++n) {
    double s = a.deriv(n);
    for (int k = 0; k < n; ++k) s -= kBinom[n][k] * q.deriv(k) * b.deriv(n - k);
    q.deriv(n) = s / b.value();
  }
  return q;
}

ScalarJet operator-(const ScalarJet& a) {
  ScalarJet r(a.order());
  for (int k = 0; k <= a.order(); ++k) r.deriv(k) = -a.deriv(k);
  return r;
}

ScalarJet operator+(const ScalarJet& a, double c) {
  ScalarJet r(a);
  r.deriv(0) += c;
  return r;
}
ScalarJet operator+(double c, const ScalarJet& a) { return a + c; }
ScalarJet operator-(const ScalarJet& a, double c) { return a + (-c); }
ScalarJet operator-(double c, const ScalarJet& a) { return (-a) + c; }

ScalarJet operator*(const ScalarJet& a, double c) {
  ScalarJet r(a.order());
  for (int k = 0; k <= a.order(); ++k) r.deriv(k) = a.deriv(k) * c;
  return r;
}
ScalarJet operator*(double c, const ScalarJet& a) { return a * c; }
ScalarJet operator/(const ScalarJet& a, double c) { return a * (1.0 / c); }

ScalarJet compose(const std::array<double, kJetMaxOrder + 1>& outer, const ScalarJet& inner) {
  const int order = inner.order();
  const double u1 = order >= 1 ? inner.deriv(1) : 0.0;
  const double u2 = order >= 2 ? inner.deriv(2) : 0.0;
  const double u3 = order >= 3 ? inner.deriv(3) : 0.0;
  const double u4 = order >= 4 ? inner.deriv(4) : 0.0;
  ScalarJet r(order);
  r.deriv(0) = outer[0];
  if (order >= 1) r.deriv(1) = outer[1] * u1;
  if (order >= 2) r.deriv(2) = outer[2] * u1 * u1 + outer[1] * u2;
  if (order >= 3) r.deriv(3) = outer[3] * u1 * u1 * u1 + 3.0 * outer[2] * u1 * u2 + outer[1] * u3;
  if (order >= 4)
    r.deriv(4) = outer[4] * u1 * u1 * u1 * u1 + 6.0 * outer[3] * u1 * u1 * u2 +
                 outer[2] * (3.0 * u2 * u2 + 4.0 * u1 * u3) + outer[1] * u4;
  return r;
}

ScalarJet jet_sqrt(const ScalarJet& a) {
  const double v = a.value();
  if (!(v > 0.0)) raise(Errc::out_of_domain, "sqrt of non-positive jet value");
  const double r = std::sqrt(v);
  const std::array<double, 5> outer = {r, 0.5 / r, -0.25 / (v * r), 0.375 / (v * v * r),
                                       -0.9375 / (v * v * v * r)};
  return compose(outer, a);
}

ScalarJet jet_exp(const ScalarJet& a) {
  const double e = std::exp(a.value());
  return compose({e, e, e, e, e}, a);
}

ScalarJet jet_log(const ScalarJet& a) {
  const double v = a.value();
  if (!(v > 0.0)) raise(Errc::out_of_domain, "log of non-positive jet value");
  const std::array<double, 5> outer = {std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v),
                                       -6.0 / (v * v * v * v)};
  return compose(outer, a);
}

ScalarJet jet_recip(const ScalarJet& a) {
  const double v = a.value();
  if (v == 0.0) raise(Errc::degenerate_denominator, "reciprocal of zero jet value");
  const double i = 1.0 / v;
  const std::array<double, 5> outer = {i, -i * i, 2.0 * i * i * i, -6.0 * i * i * i * i,
                                       24.0 * i * i * i * i * i};
  return compose(outer, a);
}

ScalarJet jet_pow(const ScalarJet& a, double p) {
  const double v = a.value();
  if (!(v > 0.0)) raise(Errc::out_of_domain, "pow with non-positive jet base");
  std::array<double, 5> outer{};
  double coeff = 1.0;
  for (int k = 0; k <= kJetMaxOrder; ++k) {
    outer[k] = coeff * std::pow(v, p - k);
    coeff *= (p - k);
  }
  return compose(outer, a);
}

}  // namespace finsler
