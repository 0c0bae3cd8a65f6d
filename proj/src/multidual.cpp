#include "finsler/multidual.hpp"

#include <cmath>

namespace finsler {

MultiDual apply_jet(const ScalarJet& f, const MultiDual& x) {
  if (f.order() < kJetMaxOrder)
    raise(Errc::insufficient_jet_order, "multi-dual composition needs an order-4 jet");
  MultiDual delta = x;
  delta.coeff(0) = 0.0;

  MultiDual acc(f.deriv(0));
  MultiDual power(1.0);
  double factorial = 1.0;
  for (int k = 1; k <= kJetMaxOrder; ++k) {
    power = power * delta;
    factorial *= k;
    acc += power * (f.deriv(k) / factorial);
  }
  return acc;
}

MultiDual md_sqrt(const MultiDual& x) {
  const double v = x.real();
  if (!(v > 0.0)) raise(Errc::out_of_domain, "sqrt of non-positive multi-dual value");
  const double r = std::sqrt(v);
  ScalarJet f(kJetMaxOrder);
  f.deriv(0) = r;
  f.deriv(1) = 0.5 / r;
  f.deriv(2) = -0.25 / (v * r);
  f.deriv(3) = 0.375 / (v * v * r);
  f.deriv(4) = -0.9375 / (v * v * v * r);
  return apply_jet(f, x);
}

MultiDual md_recip(const MultiDual& x) {
  const double v = x.real();
  if (v == 0.0) raise(Errc::degenerate_denominator, "reciprocal of zero multi-dual value");
  const double i = 1.0 / v;
  ScalarJet f(kJetMaxOrder);
  f.deriv(0) = i;
  f.deriv(1) = -i * i;
  f.deriv(2) = 2.0 * i * i * i;
  f.deriv(3) = -6.0 * i * i * i * i;
  f.deriv(4) = 24.0 * i * i * i * i * i;
  return apply_jet(f, x);
}

}  // namespace finsler
