#pragma once

#include <array>

#include "finsler/error.hpp"

namespace finsler {

inline constexpr int kJetMaxOrder = 4;

// Truncated derivative tower (f, f', ..., f^(k)) of a scalar function at a
// point. Arithmetic follows the Leibniz and Faa di Bruno rules exactly at
// the coefficient level, so the entries are exact derivative values up to
// rounding; there is no truncation error.
//
// Binary operations on jets of different orders produce the smaller order.
class ScalarJet {
 public:
  ScalarJet() = default;
  explicit ScalarJet(int order);

  static ScalarJet constant(double v, int order = kJetMaxOrder);
  // The identity function s -> s: derivative 1, higher derivatives 0.
  static ScalarJet variable(double v, int order = kJetMaxOrder);

  int order() const { return order_; }
  double value() const { return d_[0]; }
  double deriv(int k) const;
  double& deriv(int k);

  ScalarJet& operator+=(const ScalarJet& o);
  ScalarJet& operator-=(const ScalarJet& o);

 private:
  int order_ = 0;
  std::array<double, kJetMaxOrder + 1> d_{};
};

ScalarJet operator+(const ScalarJet& a, const ScalarJet& b);
ScalarJet operator-(const ScalarJet& a, const ScalarJet& b);
ScalarJet operator*(const ScalarJet& a, const ScalarJet& b);
ScalarJet operator/(const ScalarJet& a, const ScalarJet& b);
ScalarJet operator-(const ScalarJet& a);

ScalarJet operator+(const ScalarJet& a, double c);
ScalarJet operator+(double c, const ScalarJet& a);
ScalarJet operator-(const ScalarJet& a, double c);
ScalarJet operator-(double c, const ScalarJet& a);
ScalarJet operator*(const ScalarJet& a, double c);
ScalarJet operator*(double c, const ScalarJet& a);
ScalarJet operator/(const ScalarJet& a, double c);

// f(g) where f is given by its derivative values at g.value().
ScalarJet compose(const std::array<double, kJetMaxOrder + 1>& outer, const ScalarJet& inner);

ScalarJet jet_sqrt(const ScalarJet& a);   // argument must be > 0
ScalarJet jet_exp(const ScalarJet& a);
ScalarJet jet_log(const ScalarJet& a);    // argument must be > 0
ScalarJet jet_recip(const ScalarJet& a);  // argument must be != 0
ScalarJet jet_pow(const ScalarJet& a, double p);  // real exponent, argument > 0

}  // namespace finsler
