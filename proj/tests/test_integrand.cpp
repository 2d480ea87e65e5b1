#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pvtsi/integrand.hpp"
#include "pvtsi/oracle.hpp"
#include "test_util.hpp"

using namespace pvtsi;

namespace {

const auto g_one = [](auto x) { return 0.0 * x + 1.0; };
const auto g_poly = [](auto x) { return 1.0 + x - x * x; };

TransformedIntegrand make_ti(SmoothFunction g, double t, int m,
                             const PeriodizingTransform& T,
                             double endpoint_exponent = 0.0) {
  return TransformedIntegrand(
      SingularIntegrand(std::move(g), t, m, 0.0, 1.0, endpoint_exponent), T,
      IntervalMap());
}

}  // namespace

TEST_CASE("build_transformed basics") {
  const auto TI = make_ti(g_one, 0.3, 1, PeriodizingTransform::rational(5.0));
  const double r1 = std::pow(0.3, 0.2), r2 = std::pow(0.7, 0.2);
  CHECK(TI.tau() == doctest::Approx(r1 / (r1 + r2)).epsilon(1e-13));
  CHECK(TI.period() == 1.0);

  for (const auto& T : {PeriodizingTransform::rational(7.0),
                        PeriodizingTransform::tangent(4.0),
                        PeriodizingTransform::tanh_ss(2.0)}) {
    const auto sym = make_ti(g_poly, 0.5, 2, T);
    CHECK(sym.tau() == doctest::Approx(0.5).epsilon(1e-13));
  }

  // m = 1: G(tau) = g(t) regardless of transform
  const auto ti1 = make_ti(g_poly, 0.37, 1, PeriodizingTransform::tangent(6.0));
  CHECK(ti1.G_jet(0)[0] == doctest::Approx(g_poly(0.37)).epsilon(1e-13));
}

TEST_CASE("invalid integrands") {
  CHECK_THROWS_AS(SingularIntegrand(g_one, 1.5, 1, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(SingularIntegrand(g_one, 0.5, 0, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(SingularIntegrand(g_one, 0.5, 1, 0.0, 1.0, -1.5),
                  std::invalid_argument);
}

TEST_CASE("F evaluation, hand value") {
  // rational p=2: psi(0.75) = 0.9, psi'(0.75) = 0.96, pole at psi(0.25) = 0.1
  const auto TI = make_ti(g_one, 0.1, 1, PeriodizingTransform::rational(2.0));
  CHECK(TI.F(0.75) == doctest::Approx(1.2).epsilon(1e-13));

  CHECK_THROWS_AS(TI.F(TI.tau()), std::domain_error);
  CHECK_THROWS_AS(TI.F(1e-17), std::domain_error);
}

TEST_CASE("even pole has one sign near tau") {
  const auto TI = make_ti(g_poly, 0.4, 2, PeriodizingTransform::rational(5.0));
  const double g0 = TI.G_jet(0)[0];
  for (double d : {1e-3, 1e-4}) {
    CHECK(TI.F(TI.tau() + d) * g0 > 0.0);
    CHECK(TI.F(TI.tau() - d) * g0 > 0.0);
  }
}

TEST_CASE("periodic extension") {
  const auto TI = make_ti(g_poly, 0.3, 1, PeriodizingTransform::rational(5.0));
  const double T = TI.period();
  for (double xi : {0.55, 0.72, 0.81}) {
    CHECK(TI.periodic_F(xi + T) == doctest::Approx(TI.F(xi)).epsilon(1e-13));
  }
  // wrap and direct branch both vanish at beta
  CHECK(std::abs(TI.periodic_F(1.0 - 1e-12)) <= 1e-30);
  CHECK(std::abs(TI.periodic_F(1.0 + 1e-12)) <= 1e-30);
  CHECK(std::abs(TI.periodic_F(1.0)) == 0.0);
  // continuity across beta: both sides tiny for q = 4
  CHECK(std::abs(TI.F(1.0 - 1e-4)) <= 1e-8);
  CHECK(std::abs(TI.periodic_F(1.0 + 1e-4)) <= 1e-8);
}

TEST_CASE("G jet matches the closed forms for G and G'") {
  for (int rep = 0; rep < 40; ++rep) {
    const double c0 = testutil::uniform(0.5, 2.0);
    const double c1 = testutil::uniform(-1.0, 1.0);
    const double c2 = testutil::uniform(-1.0, 1.0);
    const auto g = [c0, c1, c2](auto x) { return c0 + c1 * x + c2 * x * x; };
    const double t = testutil::uniform(0.15, 0.85);
    const int m = 1 + static_cast<int>(testutil::uniform(0.0, 3.999));
    const auto& T = (rep % 2 == 0) ? PeriodizingTransform::rational(5.0)
                                   : PeriodizingTransform::tangent(4.0);
    const auto TI = make_ti(g, t, m, T);

    const Jet psi = transform_jet(T, IntervalMap(), TI.tau(), 2);
    const double dpsi = psi[1];
    const double ddpsi = 2.0 * psi[2];
    const double gt = g(t);
    const double dgt = c1 + 2.0 * c2 * t;

    const Jet G = TI.G_jet(1);
    const double expect0 = gt / std::pow(dpsi, m - 1);
    const double expect1 = dgt / std::pow(dpsi, m - 2) +
                           (1.0 - 0.5 * m) * gt * ddpsi / std::pow(dpsi, m);
    CHECK(std::abs(G[0] - expect0) <= 1e-12 * std::max(1.0, std::abs(expect0)));
    CHECK(std::abs(G.derivative(1) - expect1) <=
          1e-12 * std::max(1.0, std::abs(expect1)));
    if (m == 2)
      CHECK(G.derivative(1) == doctest::Approx(dgt).epsilon(1e-12));
  }
}

TEST_CASE("(xi-tau)^m F converges to G(tau)") {
  const auto TI = make_ti(g_poly, 0.3, 3, PeriodizingTransform::rational(5.0),
                          0.0);
  const double tau = TI.tau();
  const auto G_num = [&](double xi) {
    return std::pow(xi - tau, 3) * TI.F(xi);
  };
  const auto sym_avg = [&](double d) {
    return 0.5 * (G_num(tau + d) + G_num(tau - d));
  };
  const double d = 1e-2;
  const double richardson = (4.0 * sym_avg(0.5 * d) - sym_avg(d)) / 3.0;
  const double g0 = TI.G_jet(0)[0];
  CHECK(std::abs(richardson - g0) <= 1e-8 * std::max(1.0, std::abs(g0)));
}

TEST_CASE("symmetric integrand probe") {
  // g(x) = x, t = 1/2, symmetric transform: F(1-xi)+F(xi) is forced by the
  // symmetry identities psi(1-xi) = 1-psi(xi), psi'(1-xi) = psi'(xi).
  const auto TI = make_ti([](auto x) { return x; }, 0.5, 1,
                          PeriodizingTransform::rational(5.0));
  for (int rep = 0; rep < 20; ++rep) {
    const double xi = testutil::uniform(0.05, 0.45);
    // derived identity: F(xi) + F(1-xi) = 2 psi'(xi)
    const double lhs = TI.F(xi) + TI.F(1.0 - xi);
    const double dpsi = transform_jet(PeriodizingTransform::rational(5.0),
                                      IntervalMap(), xi, 1)[1];
    CHECK(lhs == doctest::Approx(2.0 * dpsi).epsilon(1e-11));
  }
}
