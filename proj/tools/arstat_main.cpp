// arstat: stationarity analysis and simulation for geometric-coefficient AR(k)
// models. Subcommands: analyze, bound, simulate, fit, adf, grid, appendix.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "arstat/appendix.hpp"
#include "arstat/bounds.hpp"
#include "arstat/econotest.hpp"
#include "arstat/grid.hpp"
#include "arstat/ingest.hpp"
#include "arstat/model.hpp"
#include "arstat/report.hpp"
#include "arstat/simulate.hpp"

namespace {

using namespace arstat;

constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty numeric list: '" + text + "'");
  return out;
}

HeaderMode parse_header_mode(const std::string& text) {
  if (text == "auto") return HeaderMode::automatic;
  if (text == "yes") return HeaderMode::yes;
  if (text == "no") return HeaderMode::no;
  throw std::invalid_argument("--header must be one of auto|yes|no");
}

int default_workers() {
  if (const char* env = std::getenv("ARSTAT_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 0;  // auto
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  return file;
}

struct CsvInputFlags {
  std::string path;
  std::string column;
  std::string header = "auto";

  void attach(CLI::App* cmd) {
    cmd->add_option("--input", path, "input CSV file")->required();
    cmd->add_option("--column", column, "value column (header name or 0-based index)");
    cmd->add_option("--header", header, "header handling: auto|yes|no")
        ->check(CLI::IsMember({"auto", "yes", "no"}));
  }

  LoadResult load() const {
    LoadOptions options;
    options.value_column = column;
    options.header = parse_header_mode(header);
    return load_csv(path, options);
  }
};

int cmd_analyze(double beta, double delta, int k, double epsilon2, double tol, bool machine) {
  const AnalysisReport report = analyze(GeometricARSpec{beta, delta, k, epsilon2}, tol);
  if (machine)
    render_machine(report, std::cout);
  else
    render_human(report, std::cout);
  return report.exit_code();
}

int cmd_bound(double delta, int k, std::optional<double> beta, bool machine) {
  GeometricARSpec spec{beta.value_or(0.0), delta, k, 1e-8};
  if (!beta) {
    // Evaluate the delta bound at the boundary coefficient when none is given.
    spec.beta = 1.0;
  }
  spec.epsilon2 = std::min(1e-8, spec.beta * std::pow(delta, k - 2) / 2.0);
  validate(spec);
  const double kap = kappa(spec, k);
  const double upper = 1.0 / (kap + 1.0);
  const double lower = -1.0 / (k + kap);
  const double beta_for_delta_bound = beta.value_or(upper);

  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("delta", fmt6(delta));
  kv.emplace_back("k", std::to_string(k));
  kv.emplace_back("kappa_k", fmt6(kap));
  kv.emplace_back("beta_upper", fmt6(upper));
  kv.emplace_back("beta_lower", fmt6(lower));
  kv.emplace_back("delta_bound_at_beta", fmt6(beta_for_delta_bound));
  if (k >= 3 && beta_for_delta_bound > 0.0 && beta_for_delta_bound < 1.0) {
    const DeltaLowerBound db = delta_lower_bound(beta_for_delta_bound, k);
    kv.emplace_back("delta_lower", db.vacuous ? "none (vacuous)" : fmt6(db.value));
  } else {
    kv.emplace_back("delta_lower", "none (k = 2 or beta outside (0,1))");
  }
  if (machine) {
    for (const auto& [key, value] : kv) std::cout << key << '=' << value << '\n';
  } else {
    for (const auto& [key, value] : kv) std::cout << key << " = " << value << '\n';
    std::cout << "note: kappa_k = ||R||_F * cond2(X); X has unit-norm eigenvector columns"
                 " with an orthonormal basis of the zero eigenspace\n";
  }
  return 0;
}

int cmd_simulate(std::optional<double> beta, std::optional<double> delta, int k,
                 const std::string& coeffs_text, int n, int burn_in, double sd,
                 std::uint64_t seed, bool uniform, const std::string& initial_text,
                 double guard, const std::string& out_path) {
  SimulationConfig config;
  if (!coeffs_text.empty()) {
    config.coefficients = parse_double_list(coeffs_text);
  } else {
    if (!beta || !delta)
      throw std::invalid_argument("simulate needs either --coeffs or --beta/--delta/--k");
    config.coefficients = build_coefficients(GeometricARSpec{*beta, *delta, k, 1e-8}).b;
  }
  config.n_steps = n;
  config.burn_in = burn_in >= 0 ? burn_in : 10 * static_cast<int>(config.coefficients.size());
  config.innovation_sd = sd;
  config.seed = seed;
  config.innovation = uniform ? Innovation::uniform : Innovation::gaussian;
  config.explosion_guard = guard;
  if (!initial_text.empty()) config.initial_values = parse_double_list(initial_text);

  const SimulationResult result = simulate(config);
  std::ofstream file;
  write_csv(result.series, open_output(file, out_path));
  std::cerr << "simulate: n=" << result.series.size() << " seed=" << seed
            << " innovation=" << to_string(config.innovation)
            << (result.explosive ? " explosive=yes (run truncated at the guard)" : "") << '\n';
  return 0;
}

int cmd_fit(const CsvInputFlags& input, int k, bool no_intercept, bool machine) {
  const LoadResult loaded = input.load();
  const OLSFit fit = fit_ar(loaded.series, k, !no_intercept);
  std::vector<std::pair<std::string, std::string>> kv;
  for (std::size_t i = 0; i < fit.coefficients.size(); ++i) {
    kv.emplace_back("b" + std::to_string(i + 1), fmt6(fit.coefficients[i]));
    kv.emplace_back("se_b" + std::to_string(i + 1), fmt6(fit.standard_errors[i]));
  }
  if (fit.intercept) {
    kv.emplace_back("intercept", fmt6(*fit.intercept));
    kv.emplace_back("se_intercept", fmt6(fit.standard_errors.back()));
  }
  kv.emplace_back("residual_variance", fmt6(fit.residual_variance));
  kv.emplace_back("n_used", std::to_string(fit.n_used));
  kv.emplace_back("rank_deficient", fit.rank_deficient ? "yes" : "no");
  kv.emplace_back("rows_skipped", std::to_string(loaded.diagnostics.rows_skipped));
  for (const auto& [key, value] : kv)
    std::cout << key << (machine ? "=" : " = ") << value << '\n';
  if (fit.rank_deficient)
    std::cerr << "fit: design matrix is rank deficient; minimum-norm solution reported\n";
  return 0;
}

int cmd_adf(const CsvInputFlags& input, int max_lags, bool machine) {
  const LoadResult loaded = input.load();
  const ADFResult result = adf_test(loaded.series, max_lags);
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("statistic", fmt6(result.statistic));
  kv.emplace_back("lags_used", std::to_string(result.lags_used));
  kv.emplace_back("category", to_string(result.category));
  kv.emplace_back("cv_1pct", fmt6(result.critical_values.cv1));
  kv.emplace_back("cv_5pct", fmt6(result.critical_values.cv5));
  kv.emplace_back("cv_10pct", fmt6(result.critical_values.cv10));
  kv.emplace_back("n_used", std::to_string(result.n_used));
  for (const auto& [key, value] : kv)
    std::cout << key << (machine ? "=" : " = ") << value << '\n';
  if (!machine)
    std::cout << "mapping: t<=cv(1%) highly-strong, t<=cv(5%) moderate, t<=cv(10%) weak,"
                 " else non-stationary\n";
  return 0;
}

int cmd_grid(const GridConfig& config, const std::string& out_path) {
  const std::vector<GridRow> rows = run_grid(config);
  std::ofstream file;
  grid_to_csv(rows, open_output(file, out_path));
  return 0;
}

int cmd_appendix(const CsvInputFlags& input, const AppendixConfig& config,
                 const std::string& forecast_out, bool machine) {
  const LoadResult loaded = input.load();
  const AppendixReport report = run_appendix(loaded.series, config);
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("window", std::to_string(config.window));
  kv.emplace_back("horizon", std::to_string(config.horizon));
  kv.emplace_back("k", std::to_string(config.k));
  kv.emplace_back("delta", fmt6(config.delta));
  kv.emplace_back("diff_ar1_coefficient", fmt6(report.diff_ar1_coefficient));
  kv.emplace_back("diff_ar1_below_one", report.diff_ar1_below_one ? "yes" : "no");
  for (std::size_t i = 0; i < report.unconstrained.coefficients.size(); ++i)
    kv.emplace_back("ols_b" + std::to_string(i + 1), fmt6(report.unconstrained.coefficients[i]));
  kv.emplace_back("ols_intercept", fmt6(report.unconstrained.intercept.value_or(0.0)));
  kv.emplace_back("geometric_scale", fmt6(report.geometric_scale));
  kv.emplace_back("rmse_unconstrained", fmt6(report.rmse_unconstrained));
  kv.emplace_back("rmse_geometric", fmt6(report.rmse_geometric));
  kv.emplace_back("rmse_ratio_geometric_over_unconstrained", fmt6(report.ratio));
  for (const auto& [key, value] : kv)
    std::cout << key << (machine ? "=" : " = ") << value << '\n';

  if (!forecast_out.empty()) {
    std::ofstream out(forecast_out);
    if (!out) throw IoError("cannot open '" + forecast_out + "' for writing");
    out << "t,actual,forecast_geometric,forecast_unconstrained\n";
    for (int i = 0; i < report.actual.size(); ++i)
      out << i << ',' << fmt17(report.actual.values[i]) << ','
          << fmt17(report.forecast_geometric.values[i]) << ','
          << fmt17(report.forecast_unconstrained.values[i]) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stationarity analysis for geometric-coefficient AR(k) models"};
  app.require_subcommand(1);

  // analyze
  double beta = 0.0, delta = 0.0, epsilon2 = 1e-8, tol = 1e-9;
  int k = 5;
  bool machine = false;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "run all three stationarity tests");
  analyze_cmd->add_option("--beta", beta, "coefficient beta")->required();
  analyze_cmd->add_option("--delta", delta, "decay factor delta")->required();
  analyze_cmd->add_option("--k", k, "model order")->required();
  analyze_cmd->add_option("--epsilon2", epsilon2, "truncation floor")->capture_default_str();
  analyze_cmd->add_option("--tol", tol, "borderline tolerance on the root modulus")->capture_default_str();
  analyze_cmd->add_flag("--machine", machine, "key=value output");

  // bound
  double bound_delta = 0.0;
  int bound_k = 5;
  double bound_beta = -1.0;
  bool bound_machine = false;
  CLI::App* bound_cmd = app.add_subcommand("bound", "theorem bounds for (delta, k)");
  bound_cmd->add_option("--delta", bound_delta, "decay factor delta")->required();
  bound_cmd->add_option("--k", bound_k, "model order")->required();
  bound_cmd->add_option("--beta", bound_beta, "beta for the delta lower bound (default: beta_upper)");
  bound_cmd->add_flag("--machine", bound_machine, "key=value output");

  // simulate
  double sim_beta = -1.0, sim_delta = -1.0, sim_sd = 1.0, sim_guard = 1e12;
  int sim_k = 5, sim_n = 0, sim_burn = -1;
  std::uint64_t sim_seed = 0;
  bool sim_uniform = false;
  std::string sim_coeffs, sim_initial, sim_out;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "simulate an AR(k) sample path");
  sim_cmd->add_option("--beta", sim_beta, "coefficient beta");
  sim_cmd->add_option("--delta", sim_delta, "decay factor delta");
  sim_cmd->add_option("--k", sim_k, "model order")->capture_default_str();
  sim_cmd->add_option("--coeffs", sim_coeffs, "explicit comma-separated coefficients b_1..b_k");
  sim_cmd->add_option("--n", sim_n, "number of samples to emit")->required();
  sim_cmd->add_option("--burn-in", sim_burn, "burn-in samples (default 10k)");
  sim_cmd->add_option("--sd", sim_sd, "innovation standard deviation")->capture_default_str();
  sim_cmd->add_option("--seed", sim_seed, "random seed")->capture_default_str();
  sim_cmd->add_flag("--uniform", sim_uniform, "uniform innovations instead of gaussian");
  sim_cmd->add_option("--initial", sim_initial, "comma-separated initial values, oldest first");
  sim_cmd->add_option("--guard", sim_guard, "explosion guard on |pi(t)|")->capture_default_str();
  sim_cmd->add_option("--out", sim_out, "output CSV path (default stdout)");

  // fit
  CsvInputFlags fit_input;
  int fit_k = 5;
  bool fit_no_intercept = false, fit_machine = false;
  CLI::App* fit_cmd = app.add_subcommand("fit", "least-squares AR(k) fit");
  fit_input.attach(fit_cmd);
  fit_cmd->add_option("--k", fit_k, "autoregression order")->capture_default_str();
  fit_cmd->add_flag("--no-intercept", fit_no_intercept, "drop the intercept");
  fit_cmd->add_flag("--machine", fit_machine, "key=value output");

  // adf
  CsvInputFlags adf_input;
  int adf_lags = 8;
  bool adf_machine = false;
  CLI::App* adf_cmd = app.add_subcommand("adf", "augmented Dickey-Fuller unit-root test");
  adf_input.attach(adf_cmd);
  adf_cmd->add_option("--max-lags", adf_lags, "maximum lag order for AIC selection")->capture_default_str();
  adf_cmd->add_flag("--machine", adf_machine, "key=value output");

  // grid
  GridConfig grid_config;
  grid_config.workers = default_workers();
  std::string grid_betas, grid_deltas, grid_out;
  CLI::App* grid_cmd = app.add_subcommand("grid", "stationarity sweep over a (beta, delta) grid");
  grid_cmd->add_option("--betas", grid_betas, "comma-separated beta values");
  grid_cmd->add_option("--deltas", grid_deltas, "comma-separated delta values");
  grid_cmd->add_option("--k", grid_config.k, "model order")->capture_default_str();
  grid_cmd->add_option("--replications", grid_config.replications, "simulations per cell")->capture_default_str();
  grid_cmd->add_option("--seed", grid_config.seed, "master seed")->capture_default_str();
  grid_cmd->add_option("--n", grid_config.n_steps, "samples per simulation")->capture_default_str();
  grid_cmd->add_option("--burn-in", grid_config.burn_in, "burn-in samples (default 10k)");
  grid_cmd->add_option("--sd", grid_config.innovation_sd, "innovation standard deviation")->capture_default_str();
  grid_cmd->add_option("--max-lags", grid_config.adf_max_lags, "ADF max lags")->capture_default_str();
  grid_cmd->add_option("--guard", grid_config.explosion_guard, "explosion guard")->capture_default_str();
  grid_cmd->add_option("--workers", grid_config.workers,
                       "worker threads (default: ARSTAT_WORKERS or all cores)");
  grid_cmd->add_option("--out", grid_out, "output CSV path (default stdout)");

  // appendix
  CsvInputFlags appendix_input;
  AppendixConfig appendix_config;
  std::string appendix_forecast_out;
  bool appendix_machine = false;
  CLI::App* appendix_cmd =
      app.add_subcommand("appendix", "windowed fit-and-forecast comparison on a series");
  appendix_input.attach(appendix_cmd);
  appendix_cmd->add_option("--window", appendix_config.window, "fit window length")->capture_default_str();
  appendix_cmd->add_option("--horizon", appendix_config.horizon, "forecast horizon")->capture_default_str();
  appendix_cmd->add_option("--k", appendix_config.k, "autoregression order")->capture_default_str();
  appendix_cmd->add_option("--delta", appendix_config.delta, "geometric decay factor")->capture_default_str();
  appendix_cmd->add_option("--forecast-out", appendix_forecast_out,
                           "write (t, actual, forecasts) CSV for plotting");
  appendix_cmd->add_flag("--machine", appendix_machine, "key=value output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand(analyze_cmd))
      return cmd_analyze(beta, delta, k, epsilon2, tol, machine);
    if (app.got_subcommand(bound_cmd))
      return cmd_bound(bound_delta, bound_k,
                       bound_beta > 0.0 ? std::optional<double>(bound_beta) : std::nullopt,
                       bound_machine);
    if (app.got_subcommand(sim_cmd))
      return cmd_simulate(sim_beta > 0 ? std::optional<double>(sim_beta) : std::nullopt,
                          sim_delta > 0 ? std::optional<double>(sim_delta) : std::nullopt, sim_k,
                          sim_coeffs, sim_n, sim_burn, sim_sd, sim_seed, sim_uniform, sim_initial,
                          sim_guard, sim_out);
    if (app.got_subcommand(fit_cmd)) return cmd_fit(fit_input, fit_k, fit_no_intercept, fit_machine);
    if (app.got_subcommand(adf_cmd)) return cmd_adf(adf_input, adf_lags, adf_machine);
    if (app.got_subcommand(grid_cmd)) {
      if (!grid_betas.empty()) grid_config.betas = parse_double_list(grid_betas);
      if (!grid_deltas.empty()) grid_config.deltas = parse_double_list(grid_deltas);
      return cmd_grid(grid_config, grid_out);
    }
    if (app.got_subcommand(appendix_cmd))
      return cmd_appendix(appendix_input, appendix_config, appendix_forecast_out,
                          appendix_machine);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
