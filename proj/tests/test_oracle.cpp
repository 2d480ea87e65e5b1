#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pvtsi/oracle.hpp"
#include "test_util.hpp"

using namespace pvtsi;

TEST_CASE("Chebyshev recurrences") {
  CHECK(chebyshev_eval(ChebKind::T, 5, -0.4) ==
        doctest::Approx(-0.88384).epsilon(1e-12));
  CHECK(chebyshev_eval(ChebKind::U, 4, -0.4) ==
        doctest::Approx(-0.5104).epsilon(1e-12));
  CHECK(chebyshev_eval(ChebKind::T, 0, 0.77) == 1.0);
  // U'_4(z) = 64 z^3 - 24 z
  CHECK(chebyshev_eval(ChebKind::Uprime, 4, -0.4) ==
        doctest::Approx(64.0 * std::pow(-0.4, 3) + 24.0 * 0.4).epsilon(1e-12));
  CHECK_THROWS_AS(chebyshev_eval(ChebKind::T, -1, 0.0), std::invalid_argument);
}

TEST_CASE("printed example values") {
  CHECK(example_library("cheb_m1").exact_value_at(0.3) ==
        doctest::Approx(1.38833262547440142794141136393888).epsilon(1e-14));
  CHECK(example_library("cheb_m2").exact_value_at(0.3) ==
        doctest::Approx(8.01734445196115234455666591412929).epsilon(1e-14));
  CHECK(example_library("cheb_m3").exact_value_at(0.3) ==
        doctest::Approx(-86.4566298267911099224919459078519).epsilon(1e-14));
  CHECK(example_library("poly_m1").exact_value_at(0.3) ==
        doctest::Approx(1.22523041106851637258923008288999).epsilon(1e-14));
  CHECK(example_library("poly_m2").exact_value_at(0.3) ==
        doctest::Approx(-6.42298561774988045927786175929650).epsilon(1e-14));
  CHECK(example_library("poly_m3").exact_value_at(0.3) ==
        doctest::Approx(2.73546857952209343844408750481721).epsilon(1e-14));
  CHECK_THROWS_AS(example_library("poly_m4"), std::invalid_argument);
}

TEST_CASE("closed-form decomposition, hand values") {
  // g = 1 + x - x^2, m = 1, t = 0.3: w(x) = 0.7 - x integrates to 0.2
  const auto poly = example_library("poly_m1").integrand;
  CHECK(hfp_closed_form(poly) ==
        doctest::Approx(0.2 + 1.21 * std::log(7.0 / 3.0)).epsilon(1e-12));

  const auto g_one = [](auto x) { return 0.0 * x + 1.0; };
  CHECK(hfp_closed_form(SingularIntegrand(g_one, 0.3, 1, 0.0, 1.0)) ==
        doctest::Approx(std::log(7.0 / 3.0)).epsilon(1e-13));
  CHECK(hfp_closed_form(SingularIntegrand(g_one, 0.3, 2, 0.0, 1.0)) ==
        doctest::Approx(-100.0 / 21.0).epsilon(1e-13));
}

TEST_CASE("direct formulas for constant g") {
  // CPV: log|(b-t)/(a-t)|; higher m: [ (a-t)^{1-m} - (b-t)^{1-m} ] / (m-1)
  const auto g_one = [](auto x) { return 0.0 * x + 1.0; };
  for (int rep = 0; rep < 50; ++rep) {
    const double t = testutil::uniform(0.05, 0.95);
    const int m = 1 + static_cast<int>(testutil::uniform(0.0, 3.999));
    const SingularIntegrand src(g_one, t, m, 0.0, 1.0);
    double direct = 0.0;
    if (m == 1) {
      direct = std::log(std::abs((1.0 - t) / (0.0 - t)));
    } else {
      direct = (std::pow(0.0 - t, 1 - m) - std::pow(1.0 - t, 1 - m)) /
               (m - 1.0);
    }
    const double oracle = hfp_closed_form(src);
    CHECK(std::abs(oracle - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("odd pole at the midpoint integrates to zero") {
  const auto g_one = [](auto x) { return 0.0 * x + 1.0; };
  for (int m : {1, 3}) {
    CHECK(std::abs(hfp_closed_form(SingularIntegrand(g_one, 0.5, m, 0.0, 1.0))) <=
          1e-13);
  }
}

TEST_CASE("oracle matches all printed values") {
  for (const char* name : kExampleNames) {
    const ExampleCase ex = example_library(name);
    const double exact = ex.exact_value_at(0.3);
    const double oracle = hfp_closed_form(ex.integrand);
    CAPTURE(name);
    CHECK(std::abs(oracle - exact) / std::abs(exact) <= 1e-11);
  }
}
