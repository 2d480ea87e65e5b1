#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "pvtsi/integrand.hpp"

namespace pvtsi {

// ---------------------------------------------------------------------------
// Deterministic summation
// ---------------------------------------------------------------------------

enum class SummationMode { pairwise, compensated };

inline SummationMode summation_mode_from_name(const std::string& name) {
  if (name == "pairwise") return SummationMode::pairwise;
  if (name == "compensated") return SummationMode::compensated;
  throw std::invalid_argument("unknown summation mode: " + name);
}

namespace detail {

// Node values near the pole scale like h^-m and mostly cancel, so the
// accumulators run in extended precision; the reduction tree is fixed for
// determinism.
inline long double pairwise_sum(const double* v, size_t n) {
  if (n <= 8) {
    long double s = 0.0L;
    for (size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

inline long double kahan_sum(const double* v, size_t n) {
  long double s = 0.0L, comp = 0.0L;
  for (size_t i = 0; i < n; ++i) {
    const long double y = v[i] - comp;
    const long double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  return s;
}

inline long double accumulate_terms_ld(const std::vector<double>& terms,
                                       SummationMode mode) {
  return mode == SummationMode::pairwise
             ? pairwise_sum(terms.data(), terms.size())
             : kahan_sum(terms.data(), terms.size());
}

}  // namespace detail

inline double accumulate_terms(const std::vector<double>& terms,
                               SummationMode mode) {
  return static_cast<double>(detail::accumulate_terms_ld(terms, mode));
}

// ---------------------------------------------------------------------------
// Constants: Bernoulli numbers, zeta at even integers
// ---------------------------------------------------------------------------

namespace detail {

inline long double bernoulli_even_ld(int k) {
  if (k < 0 || 2 * k > 64)
    throw std::invalid_argument("bernoulli_even: need 0 <= 2k <= 64");
  static std::vector<long double> table;
  if (table.empty()) {
    const int n_max = 64;
    table.assign(n_max + 1, 0.0L);
    table[0] = 1.0L;
    for (int n = 1; n <= n_max; ++n) {
      // B_n = -1/(n+1) sum_{j=0}^{n-1} C(n+1, j) B_j
      long double binom = 1.0L;  // C(n+1, j), starts at j = 0
      long double s = 0.0L;
      for (int j = 0; j < n; ++j) {
        s += binom * table[j];
        binom = binom * (n + 1 - j) / (j + 1);
      }
      table[n] = -s / (n + 1);
    }
  }
  return table[2 * k];
}

}  // namespace detail

/// B_{2k} via the recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0, 2k <= 64.
inline double bernoulli_even(int k) {
  return static_cast<double>(detail::bernoulli_even_ld(k));
}

namespace detail {

inline constexpr long double kPiLong =
    3.141592653589793238462643383279502884L;

inline long double zeta_even_ld(int j) {
  if (j % 2 != 0) throw std::invalid_argument("zeta_even: argument must be even");
  if (j < -64 || j > 64) throw std::invalid_argument("zeta_even: out of range");
  if (j < 0) return 0.0L;
  const int k = j / 2;
  long double fact = 1.0L;
  for (int i = 2; i <= 2 * k; ++i) fact *= i;
  const long double pw = std::pow(2.0L * kPiLong, 2 * k);
  return ((k % 2 == 0) ? -1.0L : 1.0L) * pw * bernoulli_even_ld(k) /
         (2.0L * fact);
}

}  // namespace detail

/// zeta at even integer arguments: zeta(-2k) = 0 for k >= 1, and
/// zeta(2k) = (-1)^{k+1} (2 pi)^{2k} B_{2k} / (2 (2k)!).
inline double zeta_even(int j) {
  return static_cast<double>(detail::zeta_even_ld(j));
}

// ---------------------------------------------------------------------------
// Extrapolation ladder coefficients
// ---------------------------------------------------------------------------

/// Exact fraction, used for the ladder coefficients.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den < 0) { num = -num; den = -den; }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  double value() const { return static_cast<double>(num) / den; }

  friend Rational operator+(Rational a, Rational b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(Rational a, Rational b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(Rational a, Rational b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend Rational operator/(Rational a, Rational b) {
    return Rational(a.num * b.den, a.den * b.num);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

/// Ladder coefficients alpha^(s)_k over base rules at n, 2n, ..., 2^s n.
///
/// Generated by s ratio-2 eliminations of the error powers h^1, h^-1,
/// h^-3, ...: each step combines (T_{2n} - 2^-e T_n) / (1 - 2^-e).
/// The coefficients sum to 1.
inline std::vector<Rational> extrapolation_coeffs(int s) {
  if (s < 0 || s > 8) throw std::invalid_argument("extrapolation_coeffs: 0 <= s <= 8");
  std::vector<Rational> coeffs{Rational(1)};
  for (int step = 0; step < s; ++step) {
    const int e = (step == 0) ? 1 : -(2 * step - 1);
    // weight on T_n is -2^-e/(1-2^-e), on T_{2n} is 1/(1-2^-e)
    Rational two_pow_me = (e >= 0) ? Rational(1, std::int64_t(1) << e)
                                   : Rational(std::int64_t(1) << (-e));
    const Rational denom = Rational(1) - two_pow_me;
    const Rational w_n = (Rational(0) - two_pow_me) / denom;
    const Rational w_2n = Rational(1) / denom;
    std::vector<Rational> next(coeffs.size() + 1, Rational(0));
    for (size_t k = 0; k < coeffs.size(); ++k) {
      next[k] = next[k] + w_n * coeffs[k];
      next[k + 1] = next[k + 1] + w_2n * coeffs[k];
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

// ---------------------------------------------------------------------------
// Correction sums and base rules
// ---------------------------------------------------------------------------

struct RuleConfig {
  int m = 1;
  int s = 0;
  int n = 2;
  SummationMode summation = SummationMode::pairwise;

  void validate() const {
    if (m < 1) throw std::invalid_argument("RuleConfig: m >= 1");
    if (n < 2) throw std::invalid_argument("RuleConfig: n >= 2");
    if (s < 0 || s > (m + 2) / 2)
      throw std::invalid_argument("RuleConfig: need 0 <= s <= floor((m+2)/2)");
  }
};

struct QuadratureResult {
  double value = 0.0;
  int n = 0;
  double h = 0.0;
  int m = 0;
  int s = 0;
  long node_evals = 0;
};

/// One term of the correction sum: coefficient on a G-jet coefficient times
/// a power of h. Exposed so the term count (r+1, after the zeta shortcut)
/// is checkable.
struct CorrectionTerm {
  int jet_index;    // k: multiplies G^{(k)}(tau)/k!
  double zeta;      // zeta(2r-2i)
  int h_power;      // -2r+2i+1
};

inline std::vector<CorrectionTerm> correction_terms(int m) {
  if (m < 1) throw std::invalid_argument("correction_terms: m >= 1");
  std::vector<CorrectionTerm> terms;
  const int r = (m % 2 == 0) ? m / 2 : (m - 1) / 2;
  for (int i = 0; i <= r; ++i) {
    const int k = (m % 2 == 0) ? 2 * i : 2 * i + 1;
    terms.push_back({k, zeta_even(2 * r - 2 * i), -2 * r + 2 * i + 1});
  }
  return terms;
}

/// The subtracted correction of the base rule:
///   2 sum_i G^{(k_i)}(tau)/k_i! zeta(2r-2i) h^{-2r+2i+1},
/// k_i even for even m, odd for odd m.
namespace detail {

inline long double correction_sum_ld(int m, const Jet& g_jet, long double h) {
  if (h <= 0.0L) throw std::invalid_argument("correction_sum: h > 0");
  const int r = (m % 2 == 0) ? m / 2 : (m - 1) / 2;
  long double total = 0.0L;
  for (const CorrectionTerm& term : correction_terms(m)) {
    if (term.jet_index > g_jet.order())
      throw std::invalid_argument("correction_sum: G jet order too low");
    const int i = (m % 2 == 0) ? term.jet_index / 2 : (term.jet_index - 1) / 2;
    total += 2.0L * static_cast<long double>(g_jet[term.jet_index]) *
             zeta_even_ld(2 * r - 2 * i) * std::pow(h, term.h_power);
  }
  return total;
}

}  // namespace detail

inline double correction_sum(int m, const Jet& g_jet, double h) {
  return static_cast<double>(detail::correction_sum_ld(m, g_jet, h));
}

namespace detail {

// Grid value of the periodic extension at tau + offset*h, offset in (0, n).
// Offsets past beta wrap to tau - (n - offset) h, evaluated directly to keep
// full precision near the pole.
inline double grid_value(const TransformedIntegrand& TI, double offset,
                         double h, double n) {
  const double xi = TI.tau() + offset * h;
  const double beta = TI.map().beta;
  if (xi > beta && std::abs(xi - beta) > 1e-14 * TI.period())
    return TI.periodic_F(TI.tau() - (n - offset) * h);
  return TI.periodic_F(xi);
}

// Base rule at extended precision; trap and correction are large and nearly
// cancelling, so the subtraction happens before rounding to double.
inline long double t_hat_0_ld(const TransformedIntegrand& TI, int m, int n,
                              SummationMode mode) {
  if (n < 2) throw std::invalid_argument("t_hat_0: n >= 2");
  if (m != TI.source().m)
    throw std::invalid_argument("t_hat_0: m mismatch with integrand");
  const double h = TI.period() / n;
  std::vector<double> terms(static_cast<size_t>(n) - 1);
  for (int j = 1; j <= n - 1; ++j)
    terms[static_cast<size_t>(j) - 1] = grid_value(TI, j, h, n);
  const long double trap =
      static_cast<long double>(h) * accumulate_terms_ld(terms, mode);
  const Jet g_jet = TI.G_jet(m);
  return trap - correction_sum_ld(m, g_jet, h);
}

}  // namespace detail

/// Base rule: h sum_{j=1}^{n-1} F(tau + jh) minus the correction sum.
inline QuadratureResult t_hat_0(const TransformedIntegrand& TI, int m, int n,
                                SummationMode mode = SummationMode::pairwise) {
  QuadratureResult res;
  res.value = static_cast<double>(detail::t_hat_0_ld(TI, m, n, mode));
  res.n = n;
  res.h = TI.period() / n;
  res.m = m;
  res.s = 0;
  res.node_evals = n - 1;
  return res;
}

namespace detail {

// h sum_{j=1}^{n} F(tau + jh - h/2), without extra prefactors.
inline long double midpoint_sum(const TransformedIntegrand& TI, int n,
                                SummationMode mode, long& evals) {
  const double h = TI.period() / n;
  std::vector<double> terms(static_cast<size_t>(n));
  for (int j = 1; j <= n; ++j)
    terms[static_cast<size_t>(j) - 1] = grid_value(TI, j - 0.5, h, n);
  evals += n;
  return static_cast<long double>(h) * accumulate_terms_ld(terms, mode);
}

}  // namespace detail

/// Published midpoint closed forms for m = 1..4.
inline QuadratureResult t_hat_mid(const TransformedIntegrand& TI, int m,
                                  int level, int n,
                                  SummationMode mode = SummationMode::pairwise) {
  if (m != TI.source().m)
    throw std::invalid_argument("t_hat_mid: m mismatch with integrand");
  if (m < 1 || m > 4)
    throw std::invalid_argument("t_hat_mid: closed forms published for m = 1..4");
  const int max_level = (m == 1) ? 1 : (m == 4) ? 3 : 2;
  if (level < 0 || level > max_level)
    throw std::invalid_argument("t_hat_mid: unsupported (m, level)");
  if (level == 0) return t_hat_0(TI, m, n, mode);

  const double h = TI.period() / n;
  long evals = 0;
  QuadratureResult res;
  res.n = n;
  res.h = h;
  res.m = m;
  res.s = level;

  const long double hl = h;
  // pi^2 and pi^4 expressed through the same zeta constants the base-rule
  // corrections use, so the ladder/midpoint identity holds to working
  // precision and not just to the precision of the constants.
  const long double pi2 = 6.0L * detail::zeta_even_ld(2);
  const long double pi4 = 90.0L * detail::zeta_even_ld(4);
  const long double s0 = detail::midpoint_sum(TI, n, mode, evals);
  long double value = 0.0L;
  switch (m) {
    case 1:
      value = s0;
      break;
    case 2: {
      const long double g0 = TI.G_jet(0)[0];
      if (level == 1) value = s0 - pi2 * g0 / hl;
      else value = 2.0L * s0 - detail::midpoint_sum(TI, 2 * n, mode, evals);
      break;
    }
    case 3: {
      if (level == 1) {
        const long double g1 = TI.G_jet(1).derivative(1);
        value = s0 - pi2 * g1 / hl;
      } else {
        value = 2.0L * s0 - detail::midpoint_sum(TI, 2 * n, mode, evals);
      }
      break;
    }
    case 4: {
      const Jet g = TI.G_jet(2);
      if (level == 1) {
        value = s0 - (pi4 / 3.0L) * g[0] / (hl * hl * hl) -
                (pi2 / 2.0L) * static_cast<long double>(g.derivative(2)) / hl;
      } else if (level == 2) {
        value = 2.0L * s0 - detail::midpoint_sum(TI, 2 * n, mode, evals) +
                2.0L * pi4 * g[0] / (hl * hl * hl);
      } else {
        const long double s1 = detail::midpoint_sum(TI, 2 * n, mode, evals);
        const long double s2 = detail::midpoint_sum(TI, 4 * n, mode, evals);
        value = (16.0L / 7.0L) * s0 - (10.0L / 7.0L) * s1 + (1.0L / 7.0L) * s2;
      }
      break;
    }
    default:
      break;
  }
  res.value = static_cast<double>(value);
  res.node_evals = evals;
  return res;
}

/// Top-level estimator: the Richardson ladder over base rules at
/// n, 2n, ..., 2^s n with the exact alpha coefficients.
inline QuadratureResult hfp_estimate(const TransformedIntegrand& TI,
                                     const RuleConfig& cfg) {
  cfg.validate();
  const std::vector<Rational> alpha = extrapolation_coeffs(cfg.s);
  QuadratureResult res;
  res.n = cfg.n;
  res.h = TI.period() / cfg.n;
  res.m = cfg.m;
  res.s = cfg.s;
  long double value = 0.0L;
  for (size_t k = 0; k < alpha.size(); ++k) {
    const int nk = cfg.n << k;
    const long double base = detail::t_hat_0_ld(TI, cfg.m, nk, cfg.summation);
    value += (static_cast<long double>(alpha[k].num) / alpha[k].den) * base;
    res.node_evals += nk - 1;
  }
  res.value = static_cast<double>(value);
  return res;
}

}  // namespace pvtsi
