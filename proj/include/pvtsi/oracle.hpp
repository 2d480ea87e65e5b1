#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "pvtsi/gauss.hpp"
#include "pvtsi/integrand.hpp"

namespace pvtsi {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Chebyshev machinery
// ---------------------------------------------------------------------------

enum class ChebKind { T, U, Uprime };

/// Three-term recurrence; works for plain reals and jets.
template <class Scalar>
Scalar chebyshev_t(int k, const Scalar& z) {
  Scalar p0 = 0.0 * z + 1.0;
  if (k == 0) return p0;
  Scalar p1 = z;
  for (int i = 2; i <= k; ++i) {
    Scalar p2 = 2.0 * z * p1 - p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

template <class Scalar>
Scalar chebyshev_u(int k, const Scalar& z) {
  Scalar p0 = 0.0 * z + 1.0;
  if (k == 0) return p0;
  Scalar p1 = 2.0 * z;
  for (int i = 2; i <= k; ++i) {
    Scalar p2 = 2.0 * z * p1 - p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

/// dU_k/dz via the differentiated recurrence.
inline double chebyshev_u_prime(int k, double z) {
  if (k == 0) return 0.0;
  double u0 = 1.0, u1 = 2.0 * z;
  double d0 = 0.0, d1 = 2.0;
  for (int i = 2; i <= k; ++i) {
    const double u2 = 2.0 * z * u1 - u0;
    const double d2 = 2.0 * u1 + 2.0 * z * d1 - d0;
    u0 = u1; u1 = u2;
    d0 = d1; d1 = d2;
  }
  return d1;
}

inline double chebyshev_eval(ChebKind kind, int k, double z) {
  if (k < 0) throw std::invalid_argument("chebyshev_eval: k >= 0");
  switch (kind) {
    case ChebKind::T: return chebyshev_t(k, z);
    case ChebKind::U: return chebyshev_u(k, z);
    case ChebKind::Uprime: return chebyshev_u_prime(k, z);
  }
  throw std::invalid_argument("chebyshev_eval: bad kind");
}

// ---------------------------------------------------------------------------
// Closed-form HFP decomposition
// ---------------------------------------------------------------------------

namespace detail {

template <class F>
double adaptive_panel(const F& f, double a, double b, double tol, int order,
                      int depth) {
  const double whole = gauss_panel(f, a, b, order);
  const double mid = 0.5 * (a + b);
  const double left = gauss_panel(f, a, mid, order);
  const double right = gauss_panel(f, mid, b, order);
  const double refined = left + right;
  if (std::abs(refined - whole) <= tol) return refined;
  if (depth >= 60)
    throw OracleError("hfp_closed_form: adaptive integration did not converge");
  // Child tolerance shrinks by sqrt(1/2) per level: halving would never
  // terminate against the algebraic endpoint singularities of the Chebyshev
  // integrands, while a constant tolerance would let leaf errors pile up.
  const double child_tol = tol * 0.7071067811865476;
  return adaptive_panel(f, a, mid, child_tol, order, depth + 1) +
         adaptive_panel(f, mid, b, child_tol, order, depth + 1);
}

}  // namespace detail

/// Independent ground truth, from the decomposition
///   I[f] = int_a^b w(x) dx
///        + g^{(m-1)}(t)/(m-1)! log|(b-t)/(a-t)|
///        + sum_{i=0}^{m-2} g^{(i)}(t)/i! 1/(m-i-1) [ (a-t)^{-(m-i-1)}
///                                                  - (b-t)^{-(m-i-1)} ],
/// with w(x) = [g(x) - Taylor_{m-1}(g, t)(x)] / (x-t)^m regular across t.
/// Near t the subtraction cancels catastrophically, so w switches to the
/// Taylor tail of g there.
inline double hfp_closed_form(const SingularIntegrand& src, int quad_order = 15) {
  const int m = src.m;
  const int tail_terms = 6;
  const Jet g_jet = src.g(Jet::variable(src.t, m + tail_terms - 1));

  const double switch_radius = 1e-3 * (src.b - src.a);
  const auto w = [&](double x) {
    const double dx = x - src.t;
    if (std::abs(dx) <= switch_radius) {
      double s = 0.0;
      for (int i = m + tail_terms - 1; i >= m; --i)
        s = s * dx + g_jet[i];
      return s;
    }
    double taylor = 0.0;
    for (int i = m - 1; i >= 0; --i) taylor = taylor * dx + g_jet[i];
    return (src.g(x) - taylor) / std::pow(dx, m);
  };

  const double w_integral =
      detail::adaptive_panel(w, src.a, src.b, 1e-13, quad_order, 0);

  double total = w_integral +
                 g_jet[m - 1] * std::log(std::abs((src.b - src.t) /
                                                  (src.a - src.t)));
  for (int i = 0; i <= m - 2; ++i) {
    const int k = m - i - 1;
    total += g_jet[i] / k *
             (std::pow(src.a - src.t, -k) - std::pow(src.b - src.t, -k));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Example library (integrands with printed exact values)
// ---------------------------------------------------------------------------

struct ExampleCase {
  std::string name;
  SingularIntegrand integrand;
  std::function<double(double)> exact_value_at;
  std::string description;
};

/// Named cases: cheb_m{1,2,3} use g(x) = sqrt(x(1-x)) U_4(2x-1) on (0,1)
/// with square-root endpoint behavior; poly_m{1,2,3} use g(x) = 1 + x - x^2.
inline ExampleCase example_library(const std::string& name, double t = 0.3) {
  const int k = 4;
  const auto g_cheb = [](auto x) {
    using std::sqrt;
    return sqrt(x * (1.0 - x)) * chebyshev_u(4, 2.0 * x - 1.0);
  };
  const auto g_poly = [](auto x) { return 1.0 + x - x * x; };

  if (name == "cheb_m1")
    return {name, SingularIntegrand(g_cheb, t, 1, 0.0, 1.0, 0.5),
            [k](double tt) { return -0.5 * M_PI * chebyshev_t(k + 1, 2.0 * tt - 1.0); },
            "half-open Chebyshev weight, Cauchy principal value"};
  if (name == "cheb_m2")
    return {name, SingularIntegrand(g_cheb, t, 2, 0.0, 1.0, 0.5),
            [k](double tt) { return -M_PI * (k + 1) * chebyshev_u(k, 2.0 * tt - 1.0); },
            "half-open Chebyshev weight, second-order pole"};
  if (name == "cheb_m3")
    return {name, SingularIntegrand(g_cheb, t, 3, 0.0, 1.0, 0.5),
            [k](double tt) {
              return -M_PI * (k + 1) * chebyshev_u_prime(k, 2.0 * tt - 1.0);
            },
            "half-open Chebyshev weight, third-order pole"};
  if (name == "poly_m1")
    return {name, SingularIntegrand(g_poly, t, 1, 0.0, 1.0),
            [](double tt) {
              return 0.5 - tt + (1.0 + tt - tt * tt) * std::log((1.0 - tt) / tt);
            },
            "quadratic, Cauchy principal value"};
  if (name == "poly_m2")
    return {name, SingularIntegrand(g_poly, t, 2, 0.0, 1.0),
            [](double tt) {
              return -1.0 - (1.0 + tt - tt * tt) / (tt * (1.0 - tt)) +
                     (1.0 - 2.0 * tt) * std::log((1.0 - tt) / tt);
            },
            "quadratic, second-order pole"};
  if (name == "poly_m3")
    return {name, SingularIntegrand(g_poly, t, 3, 0.0, 1.0),
            [](double tt) {
              const double u = tt * (1.0 - tt);
              return (1.0 + tt - tt * tt) * (1.0 - 2.0 * tt) / (2.0 * u * u) -
                     (1.0 - 2.0 * tt) / u - std::log((1.0 - tt) / tt);
            },
            "quadratic, third-order pole"};
  throw std::invalid_argument("example_library: unknown example: " + name);
}

inline const char* const kExampleNames[] = {"cheb_m1", "cheb_m2", "cheb_m3",
                                            "poly_m1", "poly_m2", "poly_m3"};

}  // namespace pvtsi
