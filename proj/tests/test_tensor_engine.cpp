#include <cmath>

#include "test_helpers.hpp"

using namespace finsler;
using finsler::testing::check_close;
using finsler::testing::check_rel;

namespace {

const Direction kGenericY{Vec{1.0, 0.3, 0.2}};

double f_value(const MetricPoint& mp, const Direction& y, const PhiSpec& spec) {
  const BaseGeometry g = eval_geometry(mp, y);
  return g.alpha * phi_jet(spec, g.s, 0).deriv(0);
}

}  // namespace

TEST_SUITE("tensor_engine") {

TEST_CASE("rho tower: constant phi is the Riemannian limit") {
  const ScalarJet phi = phi_jet(finsler::testing::unit_phi(), 0.37);
  const RhoSet r = rho_scalars(phi, 0.37);
  CHECK(r.rho == 1.0);
  CHECK(r.rho0 == 0.0);
  CHECK(r.rho1 == 0.0);
  CHECK(r.rho2 == 0.0);
  CHECK(r.rho0_p == 0.0);
  CHECK(r.rho0_pp == 0.0);
}

TEST_CASE("rho tower: randers values and identities") {
  for (double s : {-0.4, 0.1, 0.55}) {
    const RhoSet r = rho_scalars(phi_jet(PhiSpec::make_randers(), s), s);
    check_close(r.rho, 1.0 + s, 1e-14);
    check_close(r.rho0, 1.0, 1e-14);
    check_close(r.rho1, 1.0, 1e-14);
    check_close(r.rho2, -s, 1e-14);
    check_close(r.rho0_p, 0.0, 1e-14);
    check_close(s * r.rho1 + r.rho2, 0.0, 1e-14);
  }
}

TEST_CASE("rho tower: kropina values") {
  const double s = 0.5;
  const RhoSet r = rho_scalars(phi_jet(PhiSpec::make_kropina(), s), s);
  check_rel(r.rho, 2.0 / (s * s), 1e-13);
  check_rel(r.rho0, 3.0 / std::pow(s, 4), 1e-13);
  check_rel(r.rho1, -4.0 / std::pow(s, 3), 1e-13);
  check_close(s * r.rho1 + r.rho2, 0.0, 1e-12);
  // rho0' agrees with the Leibniz expansion 3 phi' phi'' + phi phi'''
  const ScalarJet j = phi_jet(PhiSpec::make_kropina(), s);
  check_rel(r.rho0_p, 3.0 * j.deriv(1) * j.deriv(2) + j.deriv(0) * j.deriv(3), 1e-13);
}

TEST_CASE("rho tower needs an order-4 jet") {
  CHECK_THROWS_AS(rho_scalars(phi_jet(PhiSpec::make_randers(), 0.1, 2), 0.1), Error);
}

TEST_CASE("metric: constant phi returns a itself") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const Matrix g = metric_lower(mp, kGenericY, finsler::testing::unit_phi());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) check_close(g(i, j), mp.a(i, j), 1e-14);
  const Matrix gup = metric_upper(mp, kGenericY, finsler::testing::unit_phi());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) check_close(gup(i, j), mp.a_inv(i, j), 1e-14);
}

TEST_CASE("metric: sqrt family is y-independent, k2 a + k1 b (x) b") {
  const MetricPoint mp = finsler::testing::skew_fixture();
  const double k1 = 2.0, k2 = 3.0;
  const PhiSpec spec = PhiSpec::make_riemannian(k1, k2);
  for (const Direction& y : {kGenericY, Direction{Vec{-0.2, 0.9, 0.4}}}) {
    const Matrix g = metric_lower(mp, y, spec);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        check_close(g(i, j), k2 * mp.a(i, j) + k1 * mp.b[i] * mp.b[j], 1e-12);
  }
}

TEST_CASE("metric satisfies the homogeneity contraction g y y = F^2") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  for (const PhiSpec& spec :
       {PhiSpec::make_randers(), PhiSpec::make_riemannian(1.0, 1.0),
        PhiSpec::make_shen_landsberg(1.0, 0.5, mp.b_sq)}) {
    const Matrix g = metric_lower(mp, kGenericY, spec);
    double gyy = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) gyy += g(i, j) * kGenericY.y[i] * kGenericY.y[j];
    const double f = f_value(mp, kGenericY, spec);
    check_rel(gyy, f * f, 1e-10);
  }
}

TEST_CASE("inverse metric: product with the metric is the identity") {
  for (const MetricPoint& mp :
       {finsler::testing::standard_fixture(), finsler::testing::skew_fixture()}) {
    for (const PhiSpec& spec : {PhiSpec::make_randers(), PhiSpec::make_kropina()}) {
      const Direction y = spec.domain.lo >= 0.0 ? realize_direction(mp, 0.4) : kGenericY;
      const Matrix g = metric_lower(mp, y, spec);
      const Matrix gup = metric_upper(mp, y, spec);
      const Matrix prod = matmul(gup, g);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) check_close(prod(i, j), i == j ? 1.0 : 0.0, 1e-9);
    }
  }
}

TEST_CASE("inverse metric weights solve their linear system") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  for (const PhiSpec& spec : {PhiSpec::make_randers(), PhiSpec::make_kropina()}) {
    const double s_target = spec.domain.lo >= 0.0 ? 0.45 : -0.3;
    const Direction y = realize_direction(mp, s_target);
    const BaseGeometry geo = eval_geometry(mp, y);
    const RhoSet r = rho_scalars(phi_jet(spec, geo.s), geo.s);
    const TCoefficients tc = t_coefficients(mp, y, spec);
    const double b2 = mp.b_sq, s = geo.s;

    const double eq1 =
        (r.rho + r.rho0 * b2 + s * r.rho1) * tc.mu0 + (r.rho1 + s * r.rho0) * tc.mu1 + r.rho0 / r.rho;
    const double eq2 = (b2 * r.rho1 + s * r.rho2) * tc.mu0 + r.rho * tc.mu1 + r.rho1 / r.rho;
    const double eq3 =
        (r.rho + r.rho0 * b2 + s * r.rho1) * tc.mu1 + (r.rho1 + s * r.rho0) * tc.mu2 + r.rho1 / r.rho;
    const double eq4 = (b2 * r.rho1 + s * r.rho2) * tc.mu1 + r.rho * tc.mu2 + r.rho2 / r.rho;
    const double scale = std::max({1.0, std::abs(r.rho0 / r.rho), std::abs(r.rho1 / r.rho)});
    check_close(eq1 / scale, 0.0, 1e-10);
    check_close(eq2 / scale, 0.0, 1e-10);
    check_close(eq3 / scale, 0.0, 1e-10);
    check_close(eq4 / scale, 0.0, 1e-10);
  }
}

TEST_CASE("inverse metric guard trips on the excluded family") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const PhiSpec spec = PhiSpec::make_linear_sqrt(1.0, 1.0, mp.b_sq);
  CHECK_THROWS_AS(metric_upper(mp, realize_direction(mp, 0.3), spec), Error);
  try {
    metric_upper(mp, realize_direction(mp, 0.3), spec);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degenerate_metric);
  }
}

TEST_CASE("cartan tensor vanishes exactly for the sqrt family") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const SymTensor3 c = cartan_lower(mp, kGenericY, PhiSpec::make_riemannian(1.0, 1.0));
  CHECK(c.max_abs() <= 1e-15);
}

TEST_CASE("cartan tensor is transversal to y") {
  const MetricPoint mp = finsler::testing::skew_fixture();
  for (const PhiSpec& spec : {PhiSpec::make_randers(), PhiSpec::make_shen_landsberg(1.0, 0.5, mp.b_sq)}) {
    const SymTensor3 c = cartan_lower(mp, kGenericY, spec);
    const double scale = std::max(c.max_abs(), 1e-30);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        double cy = 0.0;
        for (int k = 0; k < 3; ++k) cy += c(i, j, k) * kGenericY.y[k];
        check_close(cy / scale, 0.0, 1e-11);
      }
  }
}

TEST_CASE("ell covector: values and the Euler contraction") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  {
    const Vec ell = ell_covector(mp, kGenericY, finsler::testing::unit_phi());
    const BaseGeometry geo = eval_geometry(mp, kGenericY);
    for (int i = 0; i < 3; ++i) check_close(ell[i], geo.alpha_low[i], 1e-14);
  }
  {
    const Direction y{Vec{1.0, 0.0, 0.0}};
    const Vec ell = ell_covector(mp, y, PhiSpec::make_randers());
    check_close(ell[0], 1.6, 1e-14);
    check_close(ell[1], 0.0, 1e-14);
    check_close(ell[2], 0.0, 1e-14);
    check_close(dot(ell, y.y), f_value(mp, y, PhiSpec::make_randers()), 1e-14);
  }
  for (const PhiSpec& spec : {PhiSpec::make_randers(), PhiSpec::make_riemannian(2.0, 1.0)}) {
    const Vec ell = ell_covector(mp, kGenericY, spec);
    check_rel(dot(ell, kGenericY.y), f_value(mp, kGenericY, spec), 1e-11);
  }
}

TEST_CASE("t coefficients: randers matches the known closed form") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  for (double s : {-0.5, -0.1, 0.2, 0.5}) {
    const Direction y = realize_direction(mp, s);
    const BaseGeometry geo = eval_geometry(mp, y);
    const TCoefficients tc = t_coefficients(mp, y, PhiSpec::make_randers());
    const double ref = -(mp.b_sq + geo.s * geo.s + 2.0 * geo.s) / (4.0 * geo.alpha);
    check_rel(tc.Phi, ref, 1e-12);
    check_close(tc.Psi, 0.0, 1e-12);
    check_close(tc.Omega, 0.0, 1e-12);
  }
}

TEST_CASE("t coefficients: kropina matches the re-derived closed forms") {
  const MetricPoint mp = standard_point(0.64);
  for (double s : {0.2, 0.35, 0.5, 0.7}) {
    const Direction y = realize_direction(mp, s);
    const BaseGeometry geo = eval_geometry(mp, y);
    const TCoefficients tc = t_coefficients(mp, y, PhiSpec::make_kropina());
    const double a = geo.alpha, b2 = mp.b_sq;
    check_rel(tc.Phi, 2.0 / (a * b2 * s), 1e-12);
    check_rel(tc.Psi, 2.0 / (a * b2 * s * s * s), 1e-12);
    check_rel(tc.Omega, 6.0 / (a * b2 * std::pow(s, 5)), 1e-12);
  }
}

TEST_CASE("t coefficients: the two displayed forms of K1 and K2 agree") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  for (const PhiSpec& spec : {PhiSpec::make_randers(), PhiSpec::make_kropina(),
                              PhiSpec::make_shen_landsberg(1.0, 0.5, mp.b_sq)}) {
    const double s_target = spec.domain.lo >= 0.0 ? 0.4 : -0.25;
    const Direction y = realize_direction(mp, s_target);
    const BaseGeometry geo = eval_geometry(mp, y);
    const ScalarJet phi = phi_jet(spec, geo.s);
    const RhoSet r = rho_scalars(phi, geo.s);
    const TCoefficients tc = t_coefficients(mp, y, spec);
    const double a = geo.alpha, msq = geo.m_sq;

    // alternative displayed forms through the inverse weights
    const double k1_alt = r.rho1 * (1.0 + r.rho * tc.mu0 * msq) / (2.0 * a * r.rho);
    const double k2_alt =
        r.rho0_p * (1.0 + r.rho * tc.mu0 * msq) / (2.0 * a * r.rho) + r.rho1 * tc.mu0 / a;
    check_rel(tc.K1, k1_alt, 1e-12);
    check_close(tc.K2, k2_alt, 1e-12 * std::max(1.0, std::abs(tc.K2)));

    // the coupling identity between K1 and K2
    const double lhs = r.rho1 / (2.0 * a) * (tc.K2 * msq + r.rho1 / (a * r.rho));
    const double rhs = tc.K1 * (r.rho1 / a + r.rho0_p * msq / (2.0 * a));
    check_close(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("Phi and Psi agree with their Q-transform expressions") {
  // Third route: with Q = phi'/(phi - s phi') and N = s m^2 phi' Q' +
  // (2 s phi + m^2 phi') Q, D = m^2 phi' Q' + phi Q,
  //   Phi = -phi (phi - s phi')^2 (Q - s Q') N / (4 alpha D)
  //   Psi = -phi (phi - s phi')^2 Q''        N / (4 alpha D)
  const MetricPoint std36 = finsler::testing::standard_fixture();
  const MetricPoint krop = standard_point(0.64);
  const MetricPoint unit = standard_point(1.0);
  struct Case {
    PhiSpec spec;
    const MetricPoint* mp;
  };
  const Case cases[] = {
      {PhiSpec::make_randers(), &std36},
      {PhiSpec::make_kropina(), &krop},
      {PhiSpec::make_shen_berwald(2.0, 1.0), &unit},
      {PhiSpec::make_shen_landsberg(1.0, 0.5, 0.36), &std36},
  };
  for (const Case& c : cases) {
    for (double frac : {0.2, 0.45, 0.7}) {
      const double s = (c.spec.domain.lo >= 0.0 ? frac : frac - 0.5) * std::sqrt(c.mp->b_sq);
      const Direction y = realize_direction(*c.mp, s);
      const BaseGeometry geo = eval_geometry(*c.mp, y);
      const TCoefficients tc = t_coefficients(*c.mp, y, c.spec);

      const ScalarJet phi = phi_jet(c.spec, geo.s, 3);
      const ScalarJet qj = q_from_phi(c.spec, geo.s);
      const double p = phi.deriv(0), p1 = phi.deriv(1);
      const double Q = qj.deriv(0), Q1 = qj.deriv(1), Q2 = qj.deriv(2);
      const double msq = geo.m_sq, a = geo.alpha;
      const double lead = p - geo.s * p1;
      const double numer = geo.s * msq * p1 * Q1 + (2.0 * geo.s * p + msq * p1) * Q;
      const double denom = msq * p1 * Q1 + p * Q;
      const double phi_q = -p * lead * lead * (Q - geo.s * Q1) * numer / (4.0 * a * denom);
      const double psi_q = -p * lead * lead * Q2 * numer / (4.0 * a * denom);

      const double scale = std::max({1.0, std::abs(tc.Phi), std::abs(tc.Psi)});
      check_close((tc.Phi - phi_q) / scale, 0.0, 1e-10);
      check_close((tc.Psi - psi_q) / scale, 0.0, 1e-10);
    }
  }
}

TEST_CASE("t coefficients refuse directions parallel to b") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  CHECK_THROWS_AS(t_coefficients(mp, Direction{Vec{1.0, 0.0, 0.0}}, PhiSpec::make_randers()), Error);
  try {
    t_coefficients(mp, Direction{Vec{1.0, 0.0, 0.0}}, PhiSpec::make_randers());
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parallel_direction);
  }
}

TEST_CASE("T vanishes identically for the sqrt family") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const SymTensor4 t = t_lower(mp, kGenericY, PhiSpec::make_riemannian(1.0, 1.0));
  CHECK(t.max_abs() <= 1e-15);
}

TEST_CASE("T is transversal and homogeneous of degree -1") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const PhiSpec spec = PhiSpec::make_randers();
  const SymTensor4 t = t_lower(mp, kGenericY, spec);
  const double scale = std::max(t.max_abs(), 1e-30);

  for (int h = 0; h < 3; ++h)
    for (int i = h; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        double ty = 0.0;
        for (int k = 0; k < 3; ++k) ty += t(h, i, j, k) * kGenericY.y[k];
        check_close(ty / scale, 0.0, 1e-10);
      }

  for (double lambda : {0.5, 2.0}) {
    Direction ys{kGenericY.y};
    for (double& v : ys.y) v *= lambda;
    const SymTensor4 ts = t_lower(mp, ys, spec);
    for (int h = 0; h < 3; ++h)
      for (int i = h; i < 3; ++i)
        for (int j = i; j < 3; ++j)
          for (int k = j; k < 3; ++k)
            check_close((lambda * ts(h, i, j, k) - t(h, i, j, k)) / scale, 0.0, 1e-10);
  }
}

TEST_CASE("raised T: lowering with the metric returns the lower T") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  for (const PhiSpec& spec : {PhiSpec::make_randers(), PhiSpec::make_kropina()}) {
    const Direction y = realize_direction(mp, spec.domain.lo >= 0.0 ? 0.45 : -0.35);
    const SymTensor4 t = t_lower(mp, y, spec);
    const RaisedTensor4 raised = t_raised(mp, y, spec);
    const Matrix g = metric_lower(mp, y, spec);
    const double scale = std::max(t.max_abs(), 1e-30);
    for (int h = 0; h < 3; ++h)
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
          for (int k = j; k < 3; ++k) {
            double lowered = 0.0;
            for (int m = 0; m < 3; ++m) lowered += g(h, m) * raised(m, i, j, k);
            check_close((lowered - t(h, i, j, k)) / scale, 0.0, 1e-9);
          }
  }
}

TEST_CASE("raised T: closed form equals the numeric raise") {
  const MetricPoint mp = finsler::testing::skew_fixture();
  for (const PhiSpec& spec :
       {PhiSpec::make_randers(), PhiSpec::make_shen_landsberg(0.8, 0.4, mp.b_sq)}) {
    const Direction y = realize_direction(mp, 0.31);
    const RaisedTensor4 closed = t_raised(mp, y, spec);
    const RaisedTensor4 numeric = raise_index(metric_upper(mp, y, spec), t_lower(mp, y, spec));
    CHECK(raised_max_rel_diff(closed, numeric) <= 1e-9);
  }
}

TEST_CASE("raised T vanishes for the sqrt family") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const RaisedTensor4 t = t_raised(mp, kGenericY, PhiSpec::make_riemannian(1.0, 2.0));
  CHECK(t.max_abs() <= 1e-15);
}

TEST_CASE("conditioning estimate grows toward the boundary |s| -> sqrt(b^2)") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const PhiSpec spec = PhiSpec::make_randers();
  const double mid = t_coefficients(mp, realize_direction(mp, 0.3), spec).conditioning;
  const double edge = t_coefficients(mp, realize_direction(mp, 0.595), spec).conditioning;
  CHECK(edge > mid);
  CHECK(mid >= 1.0);
}

TEST_CASE("raised T scales with degree -1 in y") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const PhiSpec spec = PhiSpec::make_randers();
  const Direction y = realize_direction(mp, 0.35);
  const RaisedTensor4 base = t_raised(mp, y, spec);
  const double scale = std::max(base.max_abs(), 1e-30);
  for (double lambda : {0.5, 2.0}) {
    Direction ys{y.y};
    for (double& v : ys.y) v *= lambda;
    const RaisedTensor4 scaled = t_raised(mp, ys, spec);
    for (int h = 0; h < 3; ++h)
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
          for (int k = j; k < 3; ++k)
            check_close((lambda * scaled(h, i, j, k) - base(h, i, j, k)) / scale, 0.0, 1e-10);
  }
}

TEST_CASE("sigma contraction: zero covector gives zero") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const SigmaContraction sc =
      sigma_contract(Vec{0.0, 0.0, 0.0}, mp, realize_direction(mp, 0.4), PhiSpec::make_randers());
  CHECK(sc.contraction.max_abs() == 0.0);
}

TEST_CASE("sigma contraction: sigma = b does not cancel the randers T") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const SigmaContraction sc =
      sigma_contract(mp.b, mp, realize_direction(mp, 0.4), PhiSpec::make_randers());
  CHECK(sc.contraction.max_abs() > 1e-3);
  // sigma proportional to b satisfies the pointwise covector condition exactly
  check_close(sc.condition_c_max, 0.0, 1e-12);
}

TEST_CASE("sigma contraction refuses s = 0") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const Direction y = realize_direction(mp, 0.0);
  CHECK_THROWS_AS(sigma_contract(mp.b, mp, y, PhiSpec::make_randers()), Error);
  try {
    sigma_contract(mp.b, mp, y, PhiSpec::make_randers());
  } catch (const Error& e) {
    CHECK(e.code() == Errc::s_divides_zero);
  }
}

TEST_CASE("symmetric storage ranks enumerate sorted multi-indices") {
  for (int n : {2, 3, 4, 5}) {
    int pos3 = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k) CHECK(SymTensor3::rank(n, i, j, k) == pos3++);
    CHECK(pos3 == SymTensor3::packed_size(n));

    int pos4 = 0;
    for (int h = 0; h < n; ++h)
      for (int i = h; i < n; ++i)
        for (int j = i; j < n; ++j)
          for (int k = j; k < n; ++k) CHECK(SymTensor4::rank(n, h, i, j, k) == pos4++);
    CHECK(pos4 == SymTensor4::packed_size(n));
  }
}

TEST_CASE("symmetric reads sort their indices") {
  SymTensor4 t(3);
  t.at_sorted(0, 1, 1, 2) = 42.0;
  CHECK(t(1, 2, 0, 1) == 42.0);
  CHECK(t(2, 1, 1, 0) == 42.0);
  SymTensor3 c(3);
  c.at_sorted(0, 2, 2) = 7.0;
  CHECK(c(2, 0, 2) == 7.0);
}

}  // TEST_SUITE
