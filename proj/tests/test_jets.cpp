#include <array>
#include <cmath>

#include "doctest.h"
#include "finsler/jet.hpp"

using namespace finsler;

namespace {

// jet of a cubic polynomial with hand-written derivatives; dyadic inputs keep
// everything exactly representable
ScalarJet cubic_jet(double c0, double c1, double c2, double c3, double s) {
  ScalarJet j(kJetMaxOrder);
  j.deriv(0) = c0 + c1 * s + c2 * s * s + c3 * s * s * s;
  j.deriv(1) = c1 + 2.0 * c2 * s + 3.0 * c3 * s * s;
  j.deriv(2) = 2.0 * c2 + 6.0 * c3 * s;
  j.deriv(3) = 6.0 * c3;
  j.deriv(4) = 0.0;
  return j;
}

}  // namespace

TEST_SUITE("jets") {

TEST_CASE("product follows Leibniz exactly on dyadic polynomials") {
  const double s = 0.5;
  const ScalarJet p = cubic_jet(1.0, 2.0, 3.0, 0.0, s);   // 1 + 2s + 3s^2
  const ScalarJet q = cubic_jet(2.0, -1.0, 0.0, 1.0, s);  // 2 - s + s^3
  const ScalarJet prod = p * q;

  // (1 + 2s + 3s^2)(2 - s + s^3) = 2 + 3s + 4s^2 - 2s^3 + 2s^4 + 3s^5
  const double c[6] = {2.0, 3.0, 4.0, -2.0, 2.0, 3.0};
  std::array<double, 5> expected{};
  for (int d = 0; d <= 4; ++d) {
    double acc = 0.0, sp = 1.0;
    for (int k = d; k <= 5; ++k) {
      double fall = 1.0;
      for (int j = 0; j < d; ++j) fall *= (k - j);
      acc += c[k] * fall * sp;
      sp *= s;
    }
    expected[d] = acc;
  }
  for (int d = 0; d <= 4; ++d) CHECK(prod.deriv(d) == expected[d]);
}

TEST_CASE("quotient inverts the product") {
  const double s = 0.7;
  const ScalarJet p = cubic_jet(1.0, 2.0, 3.0, -1.0, s);
  const ScalarJet q = cubic_jet(2.0, -1.0, 0.5, 1.0, s);
  const ScalarJet back = (p * q) / q;
  for (int d = 0; d <= 4; ++d)
    CHECK(std::abs(back.deriv(d) - p.deriv(d)) <= 1e-13 * std::max(1.0, std::abs(p.deriv(d))));
}

TEST_CASE("sqrt jet matches hand derivatives of sqrt(1+s^2) on a grid") {
  for (int k = 0; k < 50; ++k) {
    const double s = -2.0 + 4.0 * (k + 0.5) / 50.0;
    const ScalarJet arg = ScalarJet::variable(s) * ScalarJet::variable(s) + 1.0;
    const ScalarJet j = jet_sqrt(arg);

    const double u = 1.0 + s * s;
    const double phi = std::sqrt(u);
    const double d1 = s / phi;
    const double d2 = 1.0 / (u * phi);
    const double d3 = -3.0 * s / (u * u * phi);
    const double d4 = -3.0 / (u * u * phi) + 15.0 * s * s / (u * u * u * phi);
    const double expected[5] = {phi, d1, d2, d3, d4};
    for (int d = 0; d <= 4; ++d)
      CHECK(std::abs(j.deriv(d) - expected[d]) <= 1e-12 * std::max(1.0, std::abs(expected[d])));
  }
}

TEST_CASE("reciprocal matches hand derivatives of 1/s") {
  const double s = 0.5;
  const ScalarJet j = jet_recip(ScalarJet::variable(s));
  const double expected[5] = {2.0, -4.0, 16.0, -96.0, 768.0};
  for (int d = 0; d <= 4; ++d)
    CHECK(std::abs(j.deriv(d) - expected[d]) <= 1e-12 * std::abs(expected[d]));
}

TEST_CASE("pow with real exponent") {
  const double s = 2.0, p = 2.5;
  const ScalarJet j = jet_pow(ScalarJet::variable(s), p);
  double expected = std::pow(s, p);
  double coeff = 1.0;
  for (int d = 0; d <= 4; ++d) {
    CHECK(std::abs(j.deriv(d) - coeff * expected) <= 1e-13 * std::abs(coeff * expected) + 1e-300);
    coeff *= (p - d);
    expected /= s;
  }
}

TEST_CASE("exp and log invert each other") {
  const ScalarJet x = cubic_jet(1.5, 0.5, -0.25, 0.125, 0.5);
  const ScalarJet back = jet_exp(jet_log(x));
  for (int d = 0; d <= 4; ++d)
    CHECK(std::abs(back.deriv(d) - x.deriv(d)) <= 1e-13 * std::max(1.0, std::abs(x.deriv(d))));
}

TEST_CASE("orders clamp to the smaller operand") {
  const ScalarJet a = ScalarJet::variable(1.0, 2);
  const ScalarJet b = ScalarJet::constant(3.0, 4);
  CHECK((a * b).order() == 2);
  CHECK((a + b).order() == 2);
}

TEST_CASE("order bounds are enforced") {
  CHECK_THROWS_AS(ScalarJet::variable(1.0, 5), Error);
  const ScalarJet a = ScalarJet::variable(1.0, 2);
  CHECK_THROWS_AS(a.deriv(3), Error);
}

}  // TEST_SUITE
