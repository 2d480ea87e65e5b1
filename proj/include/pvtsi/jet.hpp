#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pvtsi {

inline constexpr int kMaxJetOrder = 16;

/// Truncated Taylor series of a scalar function about a point.
///
/// Coefficients are stored in Taylor form, c_k = u^{(k)}(center)/k!, so
/// c_0 is the function value. Arithmetic between two jets requires equal
/// centers and orders; mixing with plain doubles treats them as constants.
class Jet {
 public:
  Jet(double center, std::vector<double> coeffs)
      : center_(center), c_(std::move(coeffs)) {
    if (c_.empty() || static_cast<int>(c_.size()) > kMaxJetOrder + 1)
      throw std::invalid_argument("Jet: order must be in [0, 16]");
  }

  static Jet constant(double value, double center, int order) {
    check_order(order);
    std::vector<double> c(static_cast<size_t>(order) + 1, 0.0);
    c[0] = value;
    return Jet(center, std::move(c));
  }

  /// Jet of the identity function: (x0, 1, 0, ..., 0).
  static Jet variable(double x0, int order) {
    check_order(order);
    std::vector<double> c(static_cast<size_t>(order) + 1, 0.0);
    c[0] = x0;
    if (order >= 1) c[1] = 1.0;
    return Jet(x0, std::move(c));
  }

  double center() const { return center_; }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  double value() const { return c_[0]; }

  double operator[](int k) const { return c_[static_cast<size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<size_t>(k)]; }

  /// k-th derivative at the center, c_k * k!.
  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c_[static_cast<size_t>(k)] * f;
  }

  Jet truncated(int order) const {
    if (order > this->order())
      throw std::invalid_argument("Jet::truncated: order exceeds jet order");
    return Jet(center_, std::vector<double>(c_.begin(), c_.begin() + order + 1));
  }

  Jet& operator+=(const Jet& v) {
    check_compatible(v);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += v.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& v) {
    check_compatible(v);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= v.c_[k];
    return *this;
  }
  Jet& operator+=(double s) { c_[0] += s; return *this; }
  Jet& operator-=(double s) { c_[0] -= s; return *this; }
  Jet& operator*=(double s) {
    for (double& ck : c_) ck *= s;
    return *this;
  }
  Jet& operator/=(double s) { return *this *= 1.0 / s; }

  friend Jet operator+(Jet u, const Jet& v) { return u += v; }
  friend Jet operator-(Jet u, const Jet& v) { return u -= v; }
  friend Jet operator+(Jet u, double s) { return u += s; }
  friend Jet operator+(double s, Jet u) { return u += s; }
  friend Jet operator-(Jet u, double s) { return u -= s; }
  friend Jet operator-(double s, const Jet& u) {
    Jet w = -u;
    w[0] += s;
    return w;
  }
  friend Jet operator*(Jet u, double s) { return u *= s; }
  friend Jet operator*(double s, Jet u) { return u *= s; }
  friend Jet operator/(Jet u, double s) { return u /= s; }

  friend Jet operator-(const Jet& u) {
    Jet w = u;
    for (int k = 0; k <= w.order(); ++k) w[k] = -w[k];
    return w;
  }

  /// Cauchy-product truncation.
  friend Jet operator*(const Jet& u, const Jet& v) {
    u.check_compatible(v);
    const int K = u.order();
    Jet w = Jet::constant(0.0, u.center_, K);
    for (int k = 0; k <= K; ++k) {
      double s = 0.0;
      for (int i = 0; i <= k; ++i) s += u[i] * v[k - i];
      w[k] = s;
    }
    return w;
  }

  /// Power-series division; requires v[0] != 0.
  friend Jet operator/(const Jet& u, const Jet& v) {
    u.check_compatible(v);
    if (v[0] == 0.0)
      throw std::domain_error("Jet division by zero constant term");
    const int K = u.order();
    Jet w = Jet::constant(0.0, u.center_, K);
    for (int k = 0; k <= K; ++k) {
      double s = u[k];
      for (int j = 0; j < k; ++j) s -= w[j] * v[k - j];
      w[k] = s / v[0];
    }
    return w;
  }

  friend Jet operator/(double s, const Jet& v) {
    return Jet::constant(s, v.center_, v.order()) / v;
  }

 private:
  static void check_order(int order) {
    if (order < 0 || order > kMaxJetOrder)
      throw std::invalid_argument("Jet: order must be in [0, 16]");
  }
  void check_compatible(const Jet& v) const {
    if (center_ != v.center_ || c_.size() != v.c_.size())
      throw std::invalid_argument("Jet: center/order mismatch");
  }

  double center_;
  std::vector<double> c_;
};

inline Jet exp(const Jet& u) {
  const int K = u.order();
  Jet w = Jet::constant(std::exp(u[0]), u.center(), K);
  for (int k = 1; k <= K; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * u[j] * w[k - j];
    w[k] = s / k;
  }
  return w;
}

inline Jet log(const Jet& u) {
  if (u[0] <= 0.0) throw std::domain_error("Jet log: nonpositive constant term");
  const int K = u.order();
  Jet w = Jet::constant(std::log(u[0]), u.center(), K);
  for (int k = 1; k <= K; ++k) {
    double s = k * u[k];
    for (int j = 1; j < k; ++j) s -= j * w[j] * u[k - j];
    w[k] = s / (k * u[0]);
  }
  return w;
}

inline Jet sqrt(const Jet& u) {
  if (u[0] <= 0.0)
    throw std::domain_error("Jet sqrt: nonpositive constant term");
  const int K = u.order();
  Jet w = Jet::constant(std::sqrt(u[0]), u.center(), K);
  for (int k = 1; k <= K; ++k) {
    double s = u[k];
    for (int j = 1; j < k; ++j) s -= w[j] * w[k - j];
    w[k] = s / (2.0 * w[0]);
  }
  return w;
}

namespace detail {
// sin and cos propagate jointly: k s_k = sum j a_j c_{k-j}, k c_k = -sum j a_j s_{k-j}.
inline void sincos_jet(const Jet& u, Jet& s, Jet& c) {
  const int K = u.order();
  s = Jet::constant(std::sin(u[0]), u.center(), K);
  c = Jet::constant(std::cos(u[0]), u.center(), K);
  for (int k = 1; k <= K; ++k) {
    double ss = 0.0, cc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * u[j] * c[k - j];
      cc -= j * u[j] * s[k - j];
    }
    s[k] = ss / k;
    c[k] = cc / k;
  }
}
}  // namespace detail

inline Jet sin(const Jet& u) {
  Jet s = u, c = u;
  detail::sincos_jet(u, s, c);
  return s;
}

inline Jet cos(const Jet& u) {
  Jet s = u, c = u;
  detail::sincos_jet(u, s, c);
  return c;
}

inline Jet tan(const Jet& u) {
  Jet s = u, c = u;
  detail::sincos_jet(u, s, c);
  if (c[0] == 0.0) throw std::domain_error("Jet tan: cos vanishes at center");
  return s / c;
}

/// tanh via w' = (1 - w^2) u'; avoids exp overflow for large |u_0|.
inline Jet tanh(const Jet& u) {
  const int K = u.order();
  Jet w = Jet::constant(std::tanh(u[0]), u.center(), K);
  std::vector<double> sq(static_cast<size_t>(K) + 1, 0.0);  // coeffs of w^2
  sq[0] = w[0] * w[0];
  for (int k = 1; k <= K; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) {
      const int i = k - j;
      const double e = (i == 0) ? 1.0 - sq[0] : -sq[static_cast<size_t>(i)];
      s += j * u[j] * e;
    }
    w[k] = s / k;
    // extend coeffs of w^2 to index k now that w_k is known
    double sk = 0.0;
    for (int i = 0; i <= k; ++i) sk += w[i] * w[k - i];
    sq[static_cast<size_t>(k)] = sk;
  }
  return w;
}

/// Integer power by repeated squaring; exact for the rational transform.
inline Jet pow_int(const Jet& u, long long e) {
  if (e < 0) return 1.0 / pow_int(u, -e);
  Jet result = Jet::constant(1.0, u.center(), u.order());
  Jet base = u;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

/// Real power; integer exponents use repeated squaring, otherwise exp(e log u).
inline Jet pow(const Jet& u, double e) {
  const double er = std::nearbyint(e);
  if (er == e && std::abs(e) <= 64.0)
    return pow_int(u, static_cast<long long>(er));
  if (u[0] <= 0.0)
    throw std::domain_error("Jet pow: nonpositive constant term with real exponent");
  return exp(e * log(u));
}

/// Series composition outer(inner) on (inner - inner_0), Horner style.
/// Requires outer.center == inner[0] and equal orders.
inline Jet compose(const Jet& outer, const Jet& inner) {
  if (outer.center() != inner[0])
    throw std::invalid_argument("Jet compose: outer center != inner value");
  if (outer.order() != inner.order())
    throw std::invalid_argument("Jet compose: order mismatch");
  const int K = outer.order();
  Jet z = inner;
  z[0] = 0.0;
  Jet res = Jet::constant(outer[K], inner.center(), K);
  for (int i = K - 1; i >= 0; --i) res = res * z + outer[i];
  return res;
}

}  // namespace pvtsi
