#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "pvtsi/jet.hpp"
#include "pvtsi/transforms.hpp"

namespace pvtsi {

/// A scalar function evaluable on plain reals and on jets. Construct from a
/// generic callable, e.g. [](auto x) { return 1.0 + x - x * x; }.
class SmoothFunction {
 public:
  template <class F>
  SmoothFunction(F f) : scalar_(f), jet_(f) {}  // NOLINT: implicit by design

  double operator()(double x) const { return scalar_(x); }
  Jet operator()(const Jet& x) const { return jet_(x); }

 private:
  std::function<double(double)> scalar_;
  std::function<Jet(const Jet&)> jet_;
};

/// f(x) = g(x) / (x - t)^m on (a, b) with an interior pole at t.
///
/// endpoint_exponent describes the algebraic behavior of g at the interval
/// ends ((x-a)^c and (b-x)^c); it only feeds the periodization-order
/// prediction, not the evaluation path.
struct SingularIntegrand {
  SmoothFunction g;
  double t;
  int m;
  double a;
  double b;
  double endpoint_exponent = 0.0;

  SingularIntegrand(SmoothFunction g_, double t_, int m_, double a_, double b_,
                    double endpoint_exponent_ = 0.0)
      : g(std::move(g_)), t(t_), m(m_), a(a_), b(b_),
        endpoint_exponent(endpoint_exponent_) {
    if (!(a < t && t < b))
      throw std::invalid_argument("SingularIntegrand: need a < t < b");
    if (m < 1) throw std::invalid_argument("SingularIntegrand: need m >= 1");
    if (endpoint_exponent <= -1.0)
      throw std::invalid_argument("SingularIntegrand: nonintegrable endpoints");
  }

  double f(double x) const { return g(x) / std::pow(x - t, m); }
};

/// The transformed integrand F(xi) = f(psi(xi)) psi'(xi), its T-periodic
/// extension, and the jet of the regular part G(xi) = (xi-tau)^m F(xi) at tau.
class TransformedIntegrand {
 public:
  TransformedIntegrand(SingularIntegrand src, PeriodizingTransform transform,
                       IntervalMap map)
      : src_(std::move(src)),
        transform_(transform),
        map_(map),
        tau_(transform_tau(transform, map, src_.t)),
        period_(map.period()),
        q_(predict_q(transform_smoothness(transform), src_.endpoint_exponent)) {
    if (map_.a != src_.a || map_.b != src_.b)
      throw std::invalid_argument(
          "TransformedIntegrand: interval map must target (a, b)");
  }

  const SingularIntegrand& source() const { return src_; }
  const PeriodizingTransform& transform() const { return transform_; }
  const IntervalMap& map() const { return map_; }
  double tau() const { return tau_; }
  double period() const { return period_; }
  int periodization_order() const { return q_; }

  /// F(xi) for xi in (alpha, beta), xi != tau.
  double F(double xi) const {
    const double guard = 1e-15 * period_;
    if (xi - map_.alpha < guard || map_.beta - xi < guard)
      throw std::domain_error("F: evaluation at a singular endpoint");
    if (xi == tau_) throw std::domain_error("F: evaluation at the pole");
    const Jet psi = transform_jet(transform_, map_, xi, 1);
    return src_.g(psi[0]) * psi[1] / std::pow(psi[0] - src_.t, src_.m);
  }

  /// T-periodic extension on (tau, tau + T). Nodes landing on beta (where the
  /// periodized limit is zero for q >= 1) evaluate to 0.
  double periodic_F(double xi) const {
    if (std::abs(xi - map_.beta) <= 1e-14 * period_) {
      if (q_ < 1)
        throw std::domain_error("periodic_F: value at beta undefined for q < 1");
      return 0.0;
    }
    if (xi > map_.beta) xi -= period_;
    const double guard = 1e-15 * period_;
    if (xi - map_.alpha < guard) {
      if (q_ >= 1) return 0.0;
      throw std::domain_error("periodic_F: value at alpha undefined for q < 1");
    }
    return F(xi);
  }

  /// Jet of G(xi) = g(psi(xi)) psi'(xi) / (psi[xi,tau])^m at tau.
  ///
  /// The divided-difference factor Q(xi) = (psi(xi)-psi(tau))/(xi-tau) has
  /// Taylor coefficient k at tau equal to coefficient k+1 of psi.
  Jet G_jet(int order) const {
    const Jet psi = transform_jet(transform_, map_, tau_, order + 1);
    const Jet g_of_psi = src_.g(psi).truncated(order);
    Jet psi_prime = Jet::constant(0.0, tau_, order);
    Jet q = Jet::constant(0.0, tau_, order);
    for (int k = 0; k <= order; ++k) {
      psi_prime[k] = (k + 1) * psi[k + 1];
      q[k] = psi[k + 1];
    }
    if (q[0] <= 0.0)
      throw std::domain_error("G_jet: psi'(tau) must be positive");
    return g_of_psi * psi_prime / pow_int(q, src_.m);
  }

 private:
  SingularIntegrand src_;
  PeriodizingTransform transform_;
  IntervalMap map_;
  double tau_;
  double period_;
  int q_;
};

inline TransformedIntegrand build_transformed(SingularIntegrand src,
                                              const PeriodizingTransform& T,
                                              const IntervalMap& M) {
  return TransformedIntegrand(std::move(src), T, M);
}

}  // namespace pvtsi
