#include <cmath>

#include "test_helpers.hpp"

using namespace finsler;
using finsler::testing::check_close;

TEST_SUITE("classifier") {

TEST_CASE("chebyshev grid stays strictly inside the interval, ascending") {
  const std::vector<double> grid = chebyshev_grid(-1.0, 2.0, 33);
  CHECK(grid.size() == 33);
  CHECK(grid.front() > -1.0);
  CHECK(grid.back() < 2.0);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("default grid respects the family domain") {
  const std::vector<double> pos = default_s_grid(PhiSpec::make_kropina(), 0.64, 21);
  for (double s : pos) CHECK(s > 0.0);
  const std::vector<double> sym = default_s_grid(PhiSpec::make_randers(), 0.36, 21);
  CHECK(sym.front() < 0.0);
  CHECK(sym.back() > 0.0);
}

TEST_CASE("realized directions hit the requested s exactly") {
  for (const MetricPoint& mp :
       {finsler::testing::standard_fixture(), finsler::testing::skew_fixture()}) {
    for (double s : {-0.5, -0.1, 0.0, 0.3, 0.55}) {
      for (double angle : {0.0, 0.7, 2.1}) {
        const Direction y = realize_direction(mp, s, angle);
        const BaseGeometry geo = eval_geometry(mp, y);
        check_close(geo.s, s, 1e-13);
        check_close(geo.alpha, 1.0, 1e-13);
      }
    }
    CHECK_THROWS_AS(realize_direction(mp, 0.61), Error);
  }
}

TEST_CASE("riemannian test accepts the sqrt family and recovers its constants") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const PhiSpec spec = PhiSpec::make_riemannian(2.0, 3.0);
  const RiemannianTestResult res =
      riemannian_test(mp, spec, default_s_grid(spec, mp.b_sq, 33));
  CHECK(res.is_riemannian);
  CHECK(res.rho1_max <= 1e-12);
  CHECK(res.rho2_max <= 1e-12);
  CHECK(res.cartan_max <= 1e-12);
  REQUIRE(res.fitted_k.has_value());
  check_close((*res.fitted_k)[0], 2.0, 1e-9);
  check_close((*res.fitted_k)[1], 3.0, 1e-9);
}

TEST_CASE("riemannian test accepts a constant phi") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const PhiSpec spec = finsler::testing::unit_phi();
  const RiemannianTestResult res =
      riemannian_test(mp, spec, chebyshev_grid(-0.55, 0.55, 17));
  CHECK(res.is_riemannian);
  REQUIRE(res.fitted_k.has_value());
  check_close((*res.fitted_k)[0], 0.0, 1e-10);
  check_close((*res.fitted_k)[1], 1.0, 1e-10);
}

TEST_CASE("riemannian test rejects randers with rho1 = 1") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const PhiSpec spec = PhiSpec::make_randers();
  const RiemannianTestResult res =
      riemannian_test(mp, spec, default_s_grid(spec, mp.b_sq, 33));
  CHECK_FALSE(res.is_riemannian);
  check_close(res.rho1_max, 1.0, 1e-12);
}

TEST_CASE("the equivalence chain never splits") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const MetricPoint kp = standard_point(0.64);
  struct Case {
    PhiSpec spec;
    const MetricPoint* mp;
  };
  const Case cases[] = {
      {PhiSpec::make_riemannian(1.0, 1.0), &mp},
      {PhiSpec::make_randers(), &mp},
      {PhiSpec::make_kropina(), &kp},
      {PhiSpec::make_shen_landsberg(1.0, 0.5, 0.36), &mp},
  };
  const double tol = 1e-8;
  for (const Case& c : cases) {
    const RiemannianTestResult res =
        riemannian_test(*c.mp, c.spec, default_s_grid(c.spec, c.mp->b_sq, 17), tol);
    const bool all_below = res.rho1_max <= tol && res.rho2_max <= tol && res.cartan_max <= tol;
    const bool all_above = res.rho1_max > 10.0 * tol && res.rho2_max > 10.0 * tol &&
                           res.cartan_max > 10.0 * tol;
    CHECK((all_below || all_above));
  }
}

TEST_CASE("T-condition: the power-product family passes with the fitted constant") {
  const MetricPoint mp = standard_point(1.0);
  const PhiSpec spec = PhiSpec::make_shen_berwald(2.0, mp.b_sq);
  const TConditionResult res = t_condition_test(mp, spec, default_s_grid(spec, mp.b_sq, 33));
  CHECK(res.holds);
  CHECK(res.converse_ok);
  CHECK(res.psi_max <= 1e-9);
  CHECK(res.omega_max <= 1e-9);
  REQUIRE(res.fitted_c.has_value());
  check_close(*res.fitted_c, 2.0, 1e-8);
  CHECK(res.fit_residual <= 1e-6);
}

TEST_CASE("T-condition: randers fails, the sqrt family passes trivially") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  {
    const PhiSpec spec = PhiSpec::make_randers();
    const TConditionResult res = t_condition_test(mp, spec, default_s_grid(spec, mp.b_sq, 17));
    CHECK_FALSE(res.holds);
    CHECK(res.phi_max > 1e-3);
  }
  {
    const PhiSpec spec = PhiSpec::make_riemannian(1.0, 1.0);
    const TConditionResult res = t_condition_test(mp, spec, default_s_grid(spec, mp.b_sq, 17));
    CHECK(res.holds);
  }
}

TEST_CASE("sigma-T: the integral family passes with sigma = b") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const PhiSpec spec = PhiSpec::make_shen_landsberg(1.0, 0.5, mp.b_sq);
  const SigmaTConditionResult res =
      sigma_t_condition_test(mp, spec, default_s_grid(spec, mp.b_sq, 33));
  CHECK(res.holds);
  CHECK(res.a_max <= 1e-9);
  CHECK(res.b_max <= 1e-9);
  CHECK(res.sigma_contraction_max <= 1e-9);
  check_close(res.condition_c_max, 0.0, 1e-12);
}

TEST_CASE("sigma-T: T-condition families pass trivially, randers fails") {
  {
    const MetricPoint mp = standard_point(1.0);
    const PhiSpec spec = PhiSpec::make_shen_berwald(2.0, mp.b_sq);
    CHECK(sigma_t_condition_test(mp, spec, default_s_grid(spec, mp.b_sq, 17)).holds);
  }
  {
    const MetricPoint mp = finsler::testing::standard_fixture();
    const PhiSpec spec = PhiSpec::make_randers();
    const SigmaTConditionResult res =
        sigma_t_condition_test(mp, spec, default_s_grid(spec, mp.b_sq, 17));
    CHECK_FALSE(res.holds);
  }
}

TEST_CASE("classification verdicts pick the most specific class") {
  const MetricPoint std36 = finsler::testing::standard_fixture();
  const MetricPoint unit = standard_point(1.0);
  const MetricPoint kp = standard_point(0.64);

  CHECK(classify(std36, PhiSpec::make_riemannian(1.0, 1.0),
                 default_s_grid(PhiSpec::make_riemannian(1.0, 1.0), std36.b_sq, 17))
            .kind == MetricClass::riemannian);

  const PhiSpec berwald = PhiSpec::make_shen_berwald(2.0, unit.b_sq);
  const ClassificationVerdict bv = classify(unit, berwald, default_s_grid(berwald, unit.b_sq, 17));
  CHECK(bv.kind == MetricClass::t_condition);
  CHECK(bv.residuals.at("rho1") > 1e-8);  // genuinely not Riemannian

  const PhiSpec landsberg = PhiSpec::make_shen_landsberg(1.0, 0.5, std36.b_sq);
  CHECK(classify(std36, landsberg, default_s_grid(landsberg, std36.b_sq, 17)).kind ==
        MetricClass::sigma_t_condition);

  CHECK(classify(kp, PhiSpec::make_kropina(),
                 default_s_grid(PhiSpec::make_kropina(), kp.b_sq, 17))
            .kind == MetricClass::general);

  CHECK(classify(std36, PhiSpec::make_randers(),
                 default_s_grid(PhiSpec::make_randers(), std36.b_sq, 17))
            .kind == MetricClass::general);
}

TEST_CASE("verdicts do not depend on the coordinate expression of the point") {
  // diag(4,1,1) with b = (1.2,0,0): b^2 = 0.36 exactly, matching the
  // identity-metric fixture
  const MetricPoint aniso =
      make_metric_point(Matrix::diagonal(Vec{4.0, 1.0, 1.0}), Vec{1.2, 0.0, 0.0}, 1.0);
  const MetricPoint flat = finsler::testing::standard_fixture();
  for (const PhiSpec& spec :
       {PhiSpec::make_shen_landsberg(1.0, 0.5, 0.36), PhiSpec::make_randers(),
        PhiSpec::make_riemannian(1.0, 1.0)}) {
    const std::vector<double> grid = default_s_grid(spec, 0.36, 17);
    CHECK(classify(aniso, spec, grid).kind == classify(flat, spec, grid).kind);
  }
}

TEST_CASE("verdicts carry the full residual table") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const PhiSpec spec = PhiSpec::make_randers();
  const ClassificationVerdict v = classify(mp, spec, default_s_grid(spec, mp.b_sq, 17));
  for (const char* key : {"rho1", "Phi", "Psi", "Omega", "Phi_plus_m2Psi",
                          "threePsi_plus_m2Omega", "sigma_contraction"})
    CHECK(v.residuals.count(key) == 1);
  CHECK(v.dim_ok);
}

TEST_CASE("dimension two is refused") {
  const MetricPoint mp = standard_point(0.36, 2);
  const PhiSpec spec = PhiSpec::make_randers();
  CHECK_THROWS_AS(riemannian_test(mp, spec, {0.1, 0.2}), Error);
  try {
    riemannian_test(mp, spec, {0.1, 0.2});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::dimension_too_small);
  }
  CHECK_THROWS_AS(classify(mp, spec, {0.1, 0.2}), Error);
}

TEST_CASE("empty grids are refused") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  CHECK_THROWS_AS(t_condition_test(mp, PhiSpec::make_randers(), {}), Error);
}

TEST_CASE("serial and parallel classification agree bit for bit") {
  const MetricPoint mp = finsler::testing::standard_fixture();
  const PhiSpec spec = PhiSpec::make_shen_landsberg(1.0, 0.5, mp.b_sq);
  const std::vector<double> grid = default_s_grid(spec, mp.b_sq, 17);
  const ClassificationVerdict a = classify(mp, spec, grid, 1e-8, ExecMode::serial);
  const ClassificationVerdict b = classify(mp, spec, grid, 1e-8, ExecMode::parallel);
  CHECK(a.kind == b.kind);
  for (const auto& [key, value] : a.residuals) CHECK(value == b.residuals.at(key));
}

}  // TEST_SUITE
