// pvtsi — convergence-study runner and one-shot estimator for Hadamard
// finite-part integrals with interior poles.
//
//   pvtsi study --example poly_m1 --transform rational --p 10 --t 0.3 \
//               --s 0,1 --n0 2 --doublings 10 --format csv [--config file.json]
//   pvtsi eval  --example poly_m1 --transform rational --p 10 --n 256 --s 1
//
// Exit codes: 0 success, 2 validation error, 3 solver/oracle failure.
// Environment: PVTSI_SUMMATION in {pairwise, compensated} selects the node
// summation mode (flag/config take precedence only if explicitly set).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pvtsi/pvtsi.hpp"

namespace {

using nlohmann::json;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    size_t pos = 0;
    const int v = std::stoi(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad integer: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad number: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// Flags shared by both subcommands; string-typed fields keep "was it set"
// information so CLI flags can override the JSON config.
struct CliOptions {
  std::string config_path;
  std::string example;
  std::string poly;
  int m = 0;
  std::string transform;
  double p = 0.0;
  double c = 0.0;
  double t = 0.0;
  std::string s_list;
  int n0 = 0;
  int doublings = 0;
  int n = 0;  // eval only
  std::string format;
  std::string summation;
};

void add_common_flags(CLI::App* app, CliOptions& o) {
  app->add_option("--config", o.config_path, "JSON config file");
  app->add_option("--example", o.example,
                  "library example name (cheb_m1..3, poly_m1..3)");
  app->add_option("--poly", o.poly,
                  "inline integrand: polynomial coefficients c0,c1,... on (0,1)");
  app->add_option("--m", o.m, "pole order for --poly integrands");
  app->add_option("--transform", o.transform,
                  "rational | tangent | tanh | korobov | sinp");
  app->add_option("--p", o.p, "transform shape parameter p");
  app->add_option("--c", o.c, "tanh transform parameter c");
  app->add_option("--t", o.t, "pole location in (0, 1)");
  app->add_option("--summation", o.summation, "pairwise | compensated");
}

void apply_config_file(const CliOptions& o, pvtsi::StudyConfig& cfg) {
  if (o.config_path.empty()) return;
  std::ifstream in(o.config_path);
  if (!in) throw std::invalid_argument("cannot open config: " + o.config_path);
  json j = json::parse(in);
  if (j.contains("example")) cfg.example = j["example"].get<std::string>();
  if (j.contains("poly")) cfg.poly_coeffs = j["poly"].get<std::vector<double>>();
  if (j.contains("m")) cfg.m = j["m"].get<int>();
  if (j.contains("transform")) cfg.transform = j["transform"].get<std::string>();
  if (j.contains("p")) cfg.p = j["p"].get<double>();
  if (j.contains("c")) cfg.c = j["c"].get<double>();
  if (j.contains("t")) cfg.t = j["t"].get<double>();
  if (j.contains("s")) cfg.s_levels = j["s"].get<std::vector<int>>();
  if (j.contains("n0")) cfg.n0 = j["n0"].get<int>();
  if (j.contains("doublings")) cfg.doublings = j["doublings"].get<int>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  if (j.contains("summation"))
    cfg.summation =
        pvtsi::summation_mode_from_name(j["summation"].get<std::string>());
}

// Precedence: built-in defaults < PVTSI_SUMMATION env < config file < flags.
pvtsi::StudyConfig build_config(const CLI::App* app, const CliOptions& o) {
  pvtsi::StudyConfig cfg;
  if (const char* env = std::getenv("PVTSI_SUMMATION"))
    cfg.summation = pvtsi::summation_mode_from_name(env);
  apply_config_file(o, cfg);
  // not every flag exists on both subcommands
  const auto set = [&](const char* flag) {
    const CLI::Option* opt = app->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  if (set("--example")) cfg.example = o.example;
  if (set("--poly")) {
    cfg.poly_coeffs = parse_double_list(o.poly);
    cfg.example.clear();
  }
  if (set("--m")) cfg.m = o.m;
  if (set("--transform")) cfg.transform = o.transform;
  if (set("--p")) cfg.p = o.p;
  if (set("--c")) cfg.c = o.c;
  if (set("--t")) cfg.t = o.t;
  if (set("--s")) cfg.s_levels = parse_int_list(o.s_list);
  if (set("--n0")) cfg.n0 = o.n0;
  if (set("--doublings")) cfg.doublings = o.doublings;
  if (set("--format")) cfg.format = o.format;
  if (set("--summation"))
    cfg.summation = pvtsi::summation_mode_from_name(o.summation);
  return cfg;
}

int run_study_command(const CLI::App* app, const CliOptions& o) {
  pvtsi::StudyConfig cfg = build_config(app, o);
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  pvtsi::ConvergenceReport report = pvtsi::run_study(cfg);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::fputs(pvtsi::emit_report(report, cfg.format).c_str(), stdout);
  std::fprintf(stderr, "# exact (%s): %.17g, wall %.3fs\n",
               report.exact_source.c_str(), report.exact_value,
               report.wall_seconds);
  return 0;
}

int run_eval_command(const CLI::App* app, const CliOptions& o) {
  pvtsi::StudyConfig cfg = build_config(app, o);
  // reuse the study validator on a one-row ladder
  cfg.n0 = (o.n > 0) ? o.n : 256;
  cfg.doublings = 1;
  if (cfg.s_levels.size() > 1) cfg.s_levels = {cfg.s_levels.back()};
  cfg.validate();
  if (cfg.s_levels.size() != 1)
    throw std::invalid_argument("eval takes a single --s level");

  const pvtsi::SingularIntegrand src = [&] {
    if (!cfg.example.empty())
      return pvtsi::example_library(cfg.example, cfg.t).integrand;
    return pvtsi::detail::study_integrand(cfg);
  }();
  const pvtsi::PeriodizingTransform T = pvtsi::PeriodizingTransform::make(
      pvtsi::transform_kind_from_name(cfg.transform), cfg.p, cfg.c);
  const pvtsi::TransformedIntegrand TI(src, T,
                                       pvtsi::IntervalMap(src.a, src.b));
  pvtsi::RuleConfig rule{src.m, cfg.s_levels[0], cfg.n0, cfg.summation};
  const pvtsi::QuadratureResult res = pvtsi::hfp_estimate(TI, rule);
  std::printf("%.17g\n", res.value);
  std::fprintf(stderr, "# m=%d s=%d n=%d h=%.6g evals=%zu\n", res.m, res.s,
               res.n, res.h, static_cast<size_t>(res.node_evals));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hadamard finite-part quadrature via periodizing transforms"};
  app.require_subcommand(1);

  CliOptions study_opts, eval_opts;
  CLI::App* study = app.add_subcommand("study", "run a convergence study");
  add_common_flags(study, study_opts);
  study->add_option("--s", study_opts.s_list,
                    "comma-separated extrapolation levels, e.g. 0,1");
  study->add_option("--n0", study_opts.n0, "base panel count");
  study->add_option("--doublings", study_opts.doublings, "ladder length");
  study->add_option("--format", study_opts.format, "csv | markdown");

  CLI::App* eval = app.add_subcommand("eval", "one-shot estimate");
  add_common_flags(eval, eval_opts);
  eval->add_option("--s", eval_opts.s_list, "extrapolation level");
  eval->add_option("--n", eval_opts.n, "panel count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (study->parsed()) return run_study_command(study, study_opts);
    return run_eval_command(eval, eval_opts);
  } catch (const pvtsi::SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  } catch (const pvtsi::OracleError& e) {
    std::fprintf(stderr, "oracle error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return 2;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "config parse error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
