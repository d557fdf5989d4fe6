// riviv: outlier-resistant, weak-instrument-robust inference for the linear
// IV model. Subcommands: test, confset, power, sensitivity.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "riviv/cli.hpp"
#include "riviv/errors.hpp"

namespace {

using nlohmann::json;

riviv::GridSpec parse_grid(const std::string& spec) {
  riviv::GridSpec grid;
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 == std::string::npos ? 0 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw riviv::InputError("--grid expects lo:hi:points, got '" + spec + "'");
  try {
    grid.lo = std::stod(spec.substr(0, c1));
    grid.hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    grid.points = std::stoi(spec.substr(c2 + 1));
  } catch (const std::exception&) {
    throw riviv::InputError("--grid expects lo:hi:points, got '" + spec + "'");
  }
  const double probe = std::max(
      1e6, 10.0 * std::max(std::fabs(grid.lo), std::fabs(grid.hi)));
  grid.tail_probe = {-probe, probe};
  grid.validate();
  return grid;
}

riviv::EstimatorKind parse_estimator(const std::string& name) {
  if (name == "ls") return riviv::EstimatorKind::LS;
  if (name == "mallows") return riviv::EstimatorKind::MallowsHuber;
  throw riviv::InputError("--estimator must be ls or mallows, got '" + name +
                          "'");
}

void write_report(const json& report, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw riviv::InputError("cannot write '" + path + "'");
  out << report.dump(2) << '\n';
}

void apply_scenario_preset(riviv::ScenarioConfig& cfg, const std::string& name) {
  if (name == "baseline") {
    cfg.contamination = riviv::Contamination::None;
  } else if (name == "outlier-y") {
    cfg.contamination = riviv::Contamination::OutlierY;
  } else if (name == "outlier-yz") {
    cfg.contamination = riviv::Contamination::OutlierYZ;
  } else if (name == "t3") {
    cfg.contamination = riviv::Contamination::T3Errors;
  } else {
    throw riviv::InputError(
        "--scenario must be baseline, outlier-y, outlier-yz or t3");
  }
}

void load_power_config(const std::string& path, riviv::PowerArgs& args) {
  std::ifstream in(path);
  if (!in) throw riviv::InputError("cannot open config '" + path + "'");
  json cfg;
  try {
    in >> cfg;
  } catch (const json::parse_error& e) {
    throw riviv::InputError("config '" + path + "': " + e.what());
  }
  auto& sc = args.cfg;
  if (cfg.contains("n")) sc.n = cfg["n"].get<int>();
  if (cfg.contains("k")) sc.k = cfg["k"].get<int>();
  if (cfg.contains("pi")) sc.pi = cfg["pi"].get<double>();
  if (cfg.contains("rho")) sc.rho = cfg["rho"].get<double>();
  if (cfg.contains("reps")) sc.reps = cfg["reps"].get<int>();
  if (cfg.contains("alpha")) sc.alpha = cfg["alpha"].get<double>();
  if (cfg.contains("sims")) sc.sims = cfg["sims"].get<int>();
  if (cfg.contains("seed")) sc.seed = cfg["seed"].get<std::uint64_t>();
  if (cfg.contains("intercept")) sc.intercept = cfg["intercept"].get<bool>();
  if (cfg.contains("contamination"))
    sc.contamination =
        riviv::contamination_from_string(cfg["contamination"].get<std::string>());
  if (cfg.contains("beta_grid"))
    args.beta_grid = cfg["beta_grid"].get<std::vector<double>>();
  if (cfg.contains("tests")) {
    args.tests.clear();
    for (const auto& label : cfg["tests"])
      args.tests.push_back(riviv::TestSpec::from_label(label.get<std::string>()));
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Outlier-resistant weak-instrument-robust IV inference"};
  app.require_subcommand(1);

  // Shared CSV/schema flags.
  riviv::DataSchema schema;
  std::string estimator_name = "mallows";
  std::string test_name = "rclr";
  double alpha = 0.05;
  int sims = 100000;
  std::uint64_t seed = 0;
  std::string out_json;

  const auto add_schema_flags = [&](CLI::App* cmd) {
    cmd->add_option("--csv", schema.csv_path, "input CSV file")->required();
    cmd->add_option("--y", schema.y_col, "outcome column")->required();
    cmd->add_option("--x", schema.x_col, "endogenous regressor column")
        ->required();
    cmd->add_option("--z", schema.z_cols, "instrument columns (comma separated)")
        ->required()
        ->delimiter(',');
    cmd->add_option("--w", schema.w_cols, "control columns (comma separated)")
        ->delimiter(',');
    cmd->add_flag("--intercept,!--no-intercept", schema.intercept,
                  "include an intercept (default on)");
  };

  // --- test ---
  auto* cmd_test = app.add_subcommand("test", "test H0: beta = beta0");
  double beta0 = 0.0;
  add_schema_flags(cmd_test);
  cmd_test->add_option("--beta0", beta0, "hypothesized beta (default 0)");
  cmd_test->add_option("--alpha", alpha, "test size (default 0.05)");
  cmd_test->add_option("--test", test_name, "rar|rk|rw|rclr (default rclr)");
  cmd_test->add_option("--estimator", estimator_name,
                       "ls|mallows (default mallows)");
  cmd_test->add_option("--sims", sims, "CLR critical-value draws");
  cmd_test->add_option("--seed", seed, "RNG seed");
  cmd_test->add_option("--out", out_json, "write JSON report here");

  // --- confset ---
  auto* cmd_confset = app.add_subcommand("confset", "test-inversion confidence set");
  std::string grid_spec;
  add_schema_flags(cmd_confset);
  cmd_confset->add_option("--alpha", alpha, "1 - confidence level");
  cmd_confset->add_option("--test", test_name, "rar|rk|rw|rclr");
  cmd_confset->add_option("--estimator", estimator_name, "ls|mallows");
  cmd_confset->add_option("--grid", grid_spec, "beta0 grid as lo:hi:points");
  cmd_confset->add_option("--sims", sims, "CLR critical-value draws");
  cmd_confset->add_option("--seed", seed, "RNG seed");
  cmd_confset->add_option("--out", out_json, "write JSON report here");

  // --- power ---
  auto* cmd_power = app.add_subcommand("power", "Monte Carlo size/power study");
  riviv::PowerArgs power_args;
  std::string scenario = "baseline";
  std::string config_path;
  std::string beta_grid_spec;
  std::vector<std::string> test_labels;
  cmd_power->add_option("--config", config_path, "JSON scenario config");
  cmd_power->add_option("--scenario", scenario,
                        "baseline|outlier-y|outlier-yz|t3");
  auto* opt_n = cmd_power->add_option("--n", power_args.cfg.n, "sample size");
  auto* opt_k = cmd_power->add_option("--k", power_args.cfg.k, "instruments");
  auto* opt_pi = cmd_power->add_option("--pi", power_args.cfg.pi,
                                       "first-stage strength");
  auto* opt_rho = cmd_power->add_option("--rho", power_args.cfg.rho,
                                        "error correlation");
  auto* opt_reps = cmd_power->add_option("--reps", power_args.cfg.reps,
                                         "replications");
  auto* opt_alpha = cmd_power->add_option("--alpha", power_args.cfg.alpha,
                                          "test size");
  auto* opt_sims = cmd_power->add_option("--sims", power_args.cfg.sims,
                                         "CLR draws per replication");
  auto* opt_seed = cmd_power->add_option("--seed", power_args.cfg.seed,
                                         "RNG seed");
  cmd_power->add_flag("--intercept,!--no-intercept", power_args.cfg.intercept,
                      "include an intercept in the fits (default on)");
  cmd_power->add_option("--beta-grid", beta_grid_spec,
                        "true-beta grid as lo:hi:points");
  cmd_power->add_option("--tests", test_labels,
                        "tests, e.g. ls_rclr,mallows_rclr")
      ->delimiter(',');
  cmd_power->add_option("--threads", power_args.threads,
                        "worker threads (0 = all cores)");
  cmd_power->add_option("--out-csv", power_args.out_csv,
                        "write the power-curve CSV here");
  cmd_power->add_option("--out", out_json, "write JSON report here");

  // --- sensitivity ---
  auto* cmd_sens = app.add_subcommand("sensitivity",
                                      "LS vs Mallows contamination probe");
  std::vector<double> probe_z, probe_w, magnitudes = {1e2, 1e3, 1e4};
  double probe_x = 0.0, t_frac = 0.02;
  add_schema_flags(cmd_sens);
  cmd_sens->add_option("--probe-z", probe_z, "probe instrument values")
      ->required()
      ->delimiter(',');
  cmd_sens->add_option("--probe-w", probe_w, "probe control values")
      ->delimiter(',');
  cmd_sens->add_option("--probe-x", probe_x, "probe x value");
  cmd_sens->add_option("--magnitudes", magnitudes,
                       "probe y magnitudes (comma separated)")
      ->delimiter(',');
  cmd_sens->add_option("--t", t_frac, "contamination fraction in (0, 0.5)");
  cmd_sens->add_option("--out", out_json, "write JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // --help exits 0, any parse problem is input error
  }

  json report;
  if (app.got_subcommand(cmd_test)) {
    riviv::TestArgs args;
    args.schema = schema;
    args.beta0 = beta0;
    args.estimator = parse_estimator(estimator_name);
    args.test = riviv::stat_kind_from_string(test_name);
    args.alpha = alpha;
    args.sims = sims;
    args.seed = seed;
    report = riviv::cmd_test(args);
    const auto& out = report["outputs"];
    std::cout << "test " << test_name << " (" << estimator_name
              << "), H0: beta = " << beta0 << "\n"
              << "  statistic      " << out["statistic"].get<double>() << "\n"
              << "  critical value " << out["critical_value"].get<double>()
              << "  (alpha = " << alpha << ")\n"
              << "  p-value        " << out["p_value"].get<double>() << "\n"
              << "  decision       " << out["decision"].get<std::string>()
              << "\n";
  } else if (app.got_subcommand(cmd_confset)) {
    riviv::ConfsetArgs args;
    args.schema = schema;
    args.estimator = parse_estimator(estimator_name);
    args.test = riviv::stat_kind_from_string(test_name);
    args.alpha = alpha;
    if (!grid_spec.empty()) args.grid = parse_grid(grid_spec);
    args.sims = sims;
    args.seed = seed;
    report = riviv::cmd_confset(args);
    const auto& set = report["outputs"]["confidence_set"];
    std::cout << 100.0 * (1.0 - alpha) << "% " << test_name
              << " confidence set (" << estimator_name << "):\n  "
              << set["notation"].get<std::string>() << "\n";
    if (set["empty"].get<bool>())
      std::cerr << "warning: every grid point was rejected; the set is empty "
                   "(a legitimate outcome under misspecification)\n";
  } else if (app.got_subcommand(cmd_power)) {
    if (!config_path.empty()) {
      // Parsed flag values are already in power_args; the config file fills
      // whatever was not given on the command line.
      riviv::PowerArgs file_args;
      load_power_config(config_path, file_args);
      if (!opt_n->count()) power_args.cfg.n = file_args.cfg.n;
      if (!opt_k->count()) power_args.cfg.k = file_args.cfg.k;
      if (!opt_pi->count()) power_args.cfg.pi = file_args.cfg.pi;
      if (!opt_rho->count()) power_args.cfg.rho = file_args.cfg.rho;
      if (!opt_reps->count()) power_args.cfg.reps = file_args.cfg.reps;
      if (!opt_alpha->count()) power_args.cfg.alpha = file_args.cfg.alpha;
      if (!opt_sims->count()) power_args.cfg.sims = file_args.cfg.sims;
      if (!opt_seed->count()) power_args.cfg.seed = file_args.cfg.seed;
      if (!cmd_power->count("--intercept"))
        power_args.cfg.intercept = file_args.cfg.intercept;
      if (!cmd_power->count("--scenario"))
        power_args.cfg.contamination = file_args.cfg.contamination;
      power_args.beta_grid = file_args.beta_grid;
      power_args.tests = file_args.tests;
    }
    if (cmd_power->count("--scenario"))
      apply_scenario_preset(power_args.cfg, scenario);
    if (!beta_grid_spec.empty()) {
      const riviv::GridSpec g = parse_grid(beta_grid_spec);
      power_args.beta_grid = g.values();
    }
    if (!test_labels.empty()) {
      power_args.tests.clear();
      for (const auto& label : test_labels)
        power_args.tests.push_back(riviv::TestSpec::from_label(label));
    }
    report = riviv::cmd_power(power_args);
    std::cout << "power study: "
              << report["inputs"]["contamination"].get<std::string>()
              << ", pi = " << power_args.cfg.pi
              << ", reps = " << power_args.cfg.reps << "\n";
    std::cout << "beta";
    for (const auto& label : report["inputs"]["tests"])
      std::cout << '\t' << label.get<std::string>();
    std::cout << '\n';
    const auto& curve = report["outputs"]["curve"];
    const std::size_t n_tests = report["inputs"]["tests"].size();
    const std::size_t n_betas = curve.size() / n_tests;
    for (std::size_t b = 0; b < n_betas; ++b) {
      std::cout << curve[b]["beta"].get<double>();
      for (std::size_t t = 0; t < n_tests; ++t)
        std::cout << '\t'
                  << curve[t * n_betas + b]["rejection_rate"].get<double>();
      std::cout << '\n';
    }
  } else if (app.got_subcommand(cmd_sens)) {
    riviv::SensitivityArgs args;
    args.schema = schema;
    args.probe_z = Eigen::Map<riviv::Vec>(probe_z.data(), probe_z.size());
    args.probe_w = Eigen::Map<riviv::Vec>(probe_w.data(), probe_w.size());
    args.probe_x = probe_x;
    args.magnitudes = magnitudes;
    args.t = t_frac;
    report = riviv::cmd_sensitivity(args);
    std::cout << "magnitude\tls\tmallows\n";
    for (const auto& row : report["outputs"]["displacement"])
      std::cout << row["magnitude"].get<double>() << '\t'
                << row["ls"].get<double>() << '\t'
                << row["mallows"].get<double>() << '\n';
  }

  write_report(report, out_json);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const riviv::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const riviv::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return 2;
  }
}
