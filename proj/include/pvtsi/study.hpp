#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "pvtsi/oracle.hpp"
#include "pvtsi/quadrature.hpp"

namespace pvtsi {

/// Configuration for a convergence study over an n-doubling ladder.
///
/// Either `example` names a library case, or `poly_coeffs` defines an inline
/// integrand g(x) = sum_i c_i x^i with pole order `m` on (0, 1).
struct StudyConfig {
  std::string example;               // empty for inline integrand
  std::vector<double> poly_coeffs;   // inline g, lowest degree first
  int m = 1;                         // pole order (inline case)
  std::string transform = "rational";
  double p = 10.0;
  double c = 1.0;
  double t = 0.3;
  std::vector<int> s_levels = {0, 1};
  int n0 = 2;
  int doublings = 10;
  std::string format = "csv";        // csv | markdown
  SummationMode summation = SummationMode::pairwise;

  void validate() const {
    if (example.empty() && poly_coeffs.empty())
      throw std::invalid_argument(
          "study config: give an example name or inline poly coefficients");
    if (!example.empty() && poly_coeffs.empty()) {
      bool known = false;
      for (const char* n : kExampleNames) known = known || example == n;
      if (!known)
        throw std::invalid_argument("study config: unknown example: " + example);
    }
    const int m_eff = effective_m();
    if (m_eff < 1) throw std::invalid_argument("study config: m >= 1");
    if (s_levels.empty())
      throw std::invalid_argument("study config: at least one s level");
    for (int s : s_levels)
      if (s < 0 || s > (m_eff + 2) / 2)
        throw std::invalid_argument(
            "study config: s levels must lie in [0, floor((m+2)/2)]");
    if (n0 < 2) throw std::invalid_argument("study config: n0 >= 2");
    if (doublings < 1 || doublings > 14)
      throw std::invalid_argument("study config: 1 <= doublings <= 14");
    if (!(t > 0.0 && t < 1.0))
      throw std::invalid_argument("study config: t must lie in (0, 1)");
    if (format != "csv" && format != "markdown")
      throw std::invalid_argument("study config: format is csv or markdown");
    transform_kind_from_name(transform);  // throws on bad name
  }

  int effective_m() const {
    if (example.empty()) return m;
    return example_library(example).integrand.m;
  }
};

struct ConvergenceRow {
  int k = 0;
  int n = 0;
  std::vector<double> approximations;   // one per s level
  std::vector<double> relative_errors;  // one per s level
};

struct ConvergenceReport {
  StudyConfig config;
  double exact_value = 0.0;
  std::string exact_source;  // "printed" or "oracle"
  std::vector<ConvergenceRow> rows;
  double wall_seconds = 0.0;
};

namespace detail {

inline SingularIntegrand study_integrand(const StudyConfig& cfg) {
  if (!cfg.example.empty()) return example_library(cfg.example, cfg.t).integrand;
  const std::vector<double> coeffs = cfg.poly_coeffs;
  const auto g = [coeffs](auto x) {
    auto acc = 0.0 * x + coeffs.back();
    for (size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
  };
  return SingularIntegrand(g, cfg.t, cfg.m, 0.0, 1.0);
}

}  // namespace detail

/// Run the doubling ladder and record relative errors against the exact
/// value: the printed closed form for library examples, otherwise the oracle.
inline ConvergenceReport run_study(const StudyConfig& cfg) {
  cfg.validate();
  ConvergenceReport report;
  report.config = cfg;

  const SingularIntegrand src = detail::study_integrand(cfg);
  if (!cfg.example.empty()) {
    report.exact_value = example_library(cfg.example, cfg.t).exact_value_at(cfg.t);
    report.exact_source = "printed";
  } else {
    report.exact_value = hfp_closed_form(src);
    report.exact_source = "oracle";
  }

  const PeriodizingTransform T = PeriodizingTransform::make(
      transform_kind_from_name(cfg.transform), cfg.p, cfg.c);
  const TransformedIntegrand TI(src, T, IntervalMap(src.a, src.b));

  for (int k = 0; k < cfg.doublings; ++k) {
    ConvergenceRow row;
    row.k = k;
    row.n = cfg.n0 << k;
    for (int s : cfg.s_levels) {
      RuleConfig rule{src.m, s, row.n, cfg.summation};
      const double approx = hfp_estimate(TI, rule).value;
      row.approximations.push_back(approx);
      row.relative_errors.push_back(std::abs(approx - report.exact_value) /
                                    std::abs(report.exact_value));
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace detail {

inline std::string sci4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace detail

/// csv: header `k,n,err_s{level},...`; markdown: a table in the style of the
/// published convergence tables.
inline std::string emit_report(const ConvergenceReport& r,
                               const std::string& fmt) {
  std::ostringstream out;
  const std::vector<int>& levels = r.config.s_levels;
  if (fmt == "csv") {
    out << "k,n";
    for (int s : levels) out << ",err_s" << s;
    out << "\n";
    for (const ConvergenceRow& row : r.rows) {
      out << row.k << "," << row.n;
      for (double e : row.relative_errors) out << "," << detail::sci4(e);
      out << "\n";
    }
    return out.str();
  }
  if (fmt != "markdown")
    throw std::invalid_argument("emit_report: format is csv or markdown");

  const int m = r.config.effective_m();
  out << "| k | n |";
  for (int s : levels) out << " E^(" << s << ")_{" << m << ",n} |";
  out << "\n|---|---|";
  for (size_t i = 0; i < levels.size(); ++i) out << "---|";
  out << "\n";
  for (const ConvergenceRow& row : r.rows) {
    out << "| " << row.k << " | " << row.n << " |";
    for (double e : row.relative_errors) out << " " << detail::sci4(e) << " |";
    out << "\n";
  }
  return out.str();
}

}  // namespace pvtsi
