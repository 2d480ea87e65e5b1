#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pvtsi/gauss.hpp"
#include "pvtsi/jet.hpp"

namespace pvtsi {

/// Thrown when an iterative solve (tau from t, oracle integration) fails.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sentinel for infinite smoothness / periodization order.
inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

enum class TransformKind { rational, tangent, tanh_ss, korobov, sinp };

inline const char* to_string(TransformKind k) {
  switch (k) {
    case TransformKind::rational: return "rational";
    case TransformKind::tangent: return "tangent";
    case TransformKind::tanh_ss: return "tanh";
    case TransformKind::korobov: return "korobov";
    case TransformKind::sinp: return "sinp";
  }
  return "?";
}

inline TransformKind transform_kind_from_name(const std::string& name) {
  if (name == "rational") return TransformKind::rational;
  if (name == "tangent") return TransformKind::tangent;
  if (name == "tanh") return TransformKind::tanh_ss;
  if (name == "korobov") return TransformKind::korobov;
  if (name == "sinp") return TransformKind::sinp;
  throw std::invalid_argument("unknown transform kind: " + name);
}

/// A periodizing map psi_hat:[0,1]->[0,1] with vanishing endpoint
/// derivatives, plus its shape parameter. psi_hat is symmetric about 1/2
/// and strictly increasing on (0,1).
struct PeriodizingTransform {
  TransformKind kind = TransformKind::rational;
  double p = 10.0;  // shape parameter, > 1 (rational/tangent/korobov/sinp)
  double c = 1.0;   // shape parameter, > 0 (tanh)

  static PeriodizingTransform rational(double p = 10.0) {
    require_p(p);
    return {TransformKind::rational, p, 1.0};
  }
  static PeriodizingTransform tangent(double p = 10.0) {
    require_p(p);
    return {TransformKind::tangent, p, 1.0};
  }
  static PeriodizingTransform tanh_ss(double c = 1.0) {
    if (!(c > 0.0)) throw std::invalid_argument("tanh transform requires c > 0");
    return {TransformKind::tanh_ss, 1.0, c};
  }
  static PeriodizingTransform korobov(double p) {
    require_p(p);
    return {TransformKind::korobov, p, 1.0};
  }
  static PeriodizingTransform sinp(double p) {
    require_p(p);
    return {TransformKind::sinp, p, 1.0};
  }

  static PeriodizingTransform make(TransformKind kind, double p, double c) {
    switch (kind) {
      case TransformKind::rational: return rational(p);
      case TransformKind::tangent: return tangent(p);
      case TransformKind::tanh_ss: return tanh_ss(c);
      case TransformKind::korobov: return korobov(p);
      case TransformKind::sinp: return sinp(p);
    }
    throw std::invalid_argument("bad transform kind");
  }

 private:
  static void require_p(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("transform requires p > 1");
  }
};

/// Affine lifting psi(xi) = a + (b-a) psi_hat((xi-alpha)/(beta-alpha)).
struct IntervalMap {
  double a = 0.0;
  double b = 1.0;
  double alpha = 0.0;
  double beta = 1.0;

  IntervalMap() = default;
  IntervalMap(double a_, double b_, double alpha_ = 0.0, double beta_ = 1.0)
      : a(a_), b(b_), alpha(alpha_), beta(beta_) {
    if (!(a < b) || !(alpha < beta))
      throw std::invalid_argument("IntervalMap: need a < b and alpha < beta");
  }

  double period() const { return beta - alpha; }
};

namespace detail {

inline bool is_integer(double p) { return std::nearbyint(p) == p; }

inline void require_integer_p(const PeriodizingTransform& T) {
  if (!is_integer(T.p))
    throw std::invalid_argument(
        std::string(to_string(T.kind)) + " transform supports integer p only");
}

// theta(1) = B(p, p) = ((p-1)!)^2 / (2p-1)!  for the Korobov map.
inline double korobov_theta1(int p) {
  return std::exp(2.0 * std::lgamma(p) - std::lgamma(2.0 * p));
}

// Closed-form polynomial antiderivative of [u(1-u)]^(p-1), integer p.
inline double korobov_theta(double x, int p) {
  double binom = 1.0;  // C(p-1, j)
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 0; j <= p - 1; ++j) {
    sum += sign * binom * std::pow(x, p + j) / (p + j);
    binom *= static_cast<double>(p - 1 - j) / (j + 1);
    sign = -sign;
  }
  return sum;
}

// theta(x) = int_0^x sin(pi u)^(p-1) du via fixed 32-node panels.
inline double sinp_theta(double x, double p) {
  const int panels = 4;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = x * i / panels;
    const double hi = x * (i + 1) / panels;
    sum += gauss_panel(
        [p](double u) { return std::pow(std::sin(M_PI * u), p - 1.0); }, lo, hi,
        32);
  }
  return sum;
}

}  // namespace detail

/// psi_hat value at u in [0, 1].
inline double psi_hat(const PeriodizingTransform& T, double u) {
  switch (T.kind) {
    case TransformKind::rational: {
      const double up = std::pow(u, T.p);
      return up / (up + std::pow(1.0 - u, T.p));
    }
    case TransformKind::tangent: {
      const double sp = std::pow(std::sin(0.5 * M_PI * u), T.p);
      const double cp = std::pow(std::cos(0.5 * M_PI * u), T.p);
      return sp / (sp + cp);
    }
    case TransformKind::tanh_ss:
      if (u == 0.0) return 0.0;
      if (u == 1.0) return 1.0;
      return 0.5 * std::tanh(T.c * (1.0 / (1.0 - u) - 1.0 / u)) + 0.5;
    case TransformKind::korobov: {
      detail::require_integer_p(T);
      const int p = static_cast<int>(T.p);
      return detail::korobov_theta(u, p) / detail::korobov_theta1(p);
    }
    case TransformKind::sinp:
      detail::require_integer_p(T);
      return detail::sinp_theta(u, T.p) / detail::sinp_theta(1.0, T.p);
  }
  throw std::invalid_argument("bad transform kind");
}

/// Jet of psi_hat at u0 in (0, 1), expansion variable u.
inline Jet psi_hat_jet(const PeriodizingTransform& T, double u0, int K) {
  const Jet u = Jet::variable(u0, K);
  switch (T.kind) {
    case TransformKind::rational: {
      const Jet up = pow(u, T.p);
      return up / (up + pow(1.0 - u, T.p));
    }
    case TransformKind::tangent: {
      const Jet sp = pow(sin(0.5 * M_PI * u), T.p);
      const Jet cp = pow(cos(0.5 * M_PI * u), T.p);
      return sp / (sp + cp);
    }
    case TransformKind::tanh_ss:
      return 0.5 * tanh(T.c * (1.0 / (1.0 - u) - 1.0 / u)) + 0.5;
    case TransformKind::korobov:
    case TransformKind::sinp: {
      detail::require_integer_p(T);
      // psi_hat' has a closed form; integrate its jet termwise and take the
      // constant term from the antiderivative.
      Jet d = u;
      if (T.kind == TransformKind::korobov) {
        const int p = static_cast<int>(T.p);
        d = pow_int(u * (1.0 - u), p - 1) / detail::korobov_theta1(p);
      } else {
        d = pow_int(sin(M_PI * u), static_cast<long long>(T.p) - 1) /
            detail::sinp_theta(1.0, T.p);
      }
      Jet w = Jet::constant(psi_hat(T, u0), u0, K);
      for (int k = 1; k <= K; ++k) w[k] = d[k - 1] / k;
      return w;
    }
  }
  throw std::invalid_argument("bad transform kind");
}

/// Smoothness order r: the number of vanishing endpoint derivatives of
/// psi_hat. r = p-1 for the finite-order kinds (conservatively ceil(p)-1
/// for non-integer p), infinite for the tanh map.
inline int transform_smoothness(const PeriodizingTransform& T) {
  if (T.kind == TransformKind::tanh_ss) return kInfiniteOrder;
  return static_cast<int>(std::ceil(T.p)) - 1;
}

/// Periodization order q for an integrand whose endpoint behavior is
/// (x-a)^c near a and (b-x)^c near b. Smooth endpoints (c = 0 or a
/// non-negative integer) give q = r; otherwise q = ceil(c(r+1) + r).
inline int predict_q(int r, double c) {
  if (c <= -1.0)
    throw std::domain_error("predict_q: endpoint exponent c <= -1 is nonintegrable");
  if (r == kInfiniteOrder) return kInfiniteOrder;
  if (c == 0.0 || (c > 0.0 && detail::is_integer(c))) return r;
  return static_cast<int>(std::ceil(c * (r + 1) + r));
}

/// Jet of psi(xi) = a + (b-a) psi_hat((xi-alpha)/(beta-alpha)) at xi0.
inline Jet transform_jet(const PeriodizingTransform& T, const IntervalMap& M,
                         double xi0, int K) {
  if (!(xi0 > M.alpha && xi0 < M.beta))
    throw std::domain_error("transform_jet: xi0 outside (alpha, beta)");
  const double scale = 1.0 / (M.beta - M.alpha);
  const double u0 = (xi0 - M.alpha) * scale;
  Jet w = psi_hat_jet(T, u0, K);
  double sk = M.b - M.a;
  w[0] = M.a + sk * w[0];
  for (int k = 1; k <= K; ++k) {
    sk *= scale;
    w[k] *= sk;
  }
  return w;
}

namespace detail {

// Safeguarded Newton on psi_hat(u) = th with bisection fallback.
inline double newton_tau_unit(const PeriodizingTransform& T, double th) {
  double lo = 0.0, hi = 1.0;
  double u = th;
  for (int it = 0; it < 100; ++it) {
    const double f = psi_hat(T, u) - th;
    if (std::abs(f) <= 1e-15) return u;
    if (f > 0.0) hi = u; else lo = u;
    double du = 0.0;
    double deriv = 0.0;
    if (T.kind == TransformKind::korobov) {
      const int p = static_cast<int>(T.p);
      deriv = std::pow(u * (1.0 - u), p - 1.0) / korobov_theta1(p);
    } else {
      deriv = std::pow(std::sin(M_PI * u), T.p - 1.0) / sinp_theta(1.0, T.p);
    }
    double next = u;
    if (deriv > 0.0) {
      du = f / deriv;
      next = u - du;
    }
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // psi' ~ 0 near ends
    if (next == u) return u;
    u = next;
  }
  if (std::abs(psi_hat(T, u) - th) <= 1e-14) return u;
  throw SolverError("transform_tau: Newton iteration did not converge");
}

}  // namespace detail

/// Solve psi(tau) = t; closed forms where available, else safeguarded Newton.
inline double transform_tau(const PeriodizingTransform& T, const IntervalMap& M,
                            double t) {
  if (!(t > M.a && t < M.b))
    throw std::domain_error("transform_tau: t outside (a, b)");
  const double th = (t - M.a) / (M.b - M.a);
  double u = 0.0;
  switch (T.kind) {
    case TransformKind::rational: {
      const double r1 = std::pow(th, 1.0 / T.p);
      const double r2 = std::pow(1.0 - th, 1.0 / T.p);
      u = r1 / (r1 + r2);
      break;
    }
    case TransformKind::tangent: {
      const double lambda = std::pow(th / (1.0 - th), 1.0 / T.p);
      u = (2.0 / M_PI) * std::atan(lambda);
      break;
    }
    case TransformKind::tanh_ss: {
      const double lambda = std::log(th / (1.0 - th)) / (2.0 * T.c);
      const double root = std::sqrt(lambda * lambda + 4.0);
      // stable rearrangement of (root + lambda - 2) / (2 lambda); the direct
      // form cancels catastrophically as lambda -> 0
      u = 0.5 + lambda / (2.0 * (root + 2.0));
      break;
    }
    case TransformKind::korobov:
    case TransformKind::sinp:
      detail::require_integer_p(T);
      u = detail::newton_tau_unit(T, th);
      break;
  }
  return M.alpha + (M.beta - M.alpha) * u;
}

}  // namespace pvtsi
