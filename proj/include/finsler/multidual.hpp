#pragma once

#include <array>

#include "finsler/jet.hpp"

namespace finsler {

// Number with four nilpotent units e1..e4, each squaring to zero. A value is
// stored as 16 coefficients indexed by bitmask over the units; products of
// terms with overlapping unit support vanish, so multiplication is an exact
// subset convolution.
//
// Seeding f's arguments as y^h + e1, y^i + e2, y^j + e3, y^k + e4 makes the
// full-mask coefficient of f the exact mixed fourth partial d^4 f /
// dy^h dy^i dy^j dy^k, with no step-size error.
class MultiDual {
 public:
  static constexpr int kUnits = 4;
  static constexpr int kSlots = 1 << kUnits;

  MultiDual() { c_.fill(0.0); }
  explicit MultiDual(double real) {
    c_.fill(0.0);
    c_[0] = real;
  }

  static MultiDual unit(int u) {
    MultiDual d;
    d.c_[1u << u] = 1.0;
    return d;
  }

  double real() const { return c_[0]; }
  double coeff(unsigned mask) const { return c_[mask]; }
  double& coeff(unsigned mask) { return c_[mask]; }

  MultiDual& operator+=(const MultiDual& o) {
    for (int i = 0; i < kSlots; ++i) c_[i] += o.c_[i];
    return *this;
  }
  MultiDual& operator-=(const MultiDual& o) {
    for (int i = 0; i < kSlots; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  MultiDual& operator*=(double s) {
    for (int i = 0; i < kSlots; ++i) c_[i] *= s;
    return *this;
  }

  friend MultiDual operator+(MultiDual a, const MultiDual& b) { return a += b; }
  friend MultiDual operator-(MultiDual a, const MultiDual& b) { return a -= b; }
  friend MultiDual operator*(MultiDual a, double s) { return a *= s; }
  friend MultiDual operator*(double s, MultiDual a) { return a *= s; }

  friend MultiDual operator*(const MultiDual& a, const MultiDual& b) {
    MultiDual r;
    for (unsigned s = 0; s < kSlots; ++s) {
      double acc = 0.0;
      // iterate over submasks a of s, pairing with the complement s^a
      unsigned m = s;
      while (true) {
        acc += a.c_[m] * b.c_[s ^ m];
        if (m == 0) break;
        m = (m - 1) & s;
      }
      r.c_[s] = acc;
    }
    return r;
  }

 private:
  std::array<double, kSlots> c_;
};

// f(x) for f given by its order-4 derivative tower at x.real(); exact since
// the nilpotent part of x has vanishing fifth power.
MultiDual apply_jet(const ScalarJet& f, const MultiDual& x);

MultiDual md_sqrt(const MultiDual& x);
MultiDual md_recip(const MultiDual& x);

inline MultiDual operator/(const MultiDual& a, const MultiDual& b) { return a * md_recip(b); }

}  // namespace finsler
