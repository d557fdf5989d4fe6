#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "riviv/confset.hpp"
#include "riviv/dataset.hpp"
#include "riviv/sensitivity.hpp"
#include "riviv/simulation.hpp"

namespace riviv {

inline constexpr const char* kVersion = "0.1.0";

/// Column mapping from a CSV file onto the IV model.
struct DataSchema {
  std::string csv_path;
  std::string y_col;
  std::string x_col;
  std::vector<std::string> z_cols;
  std::vector<std::string> w_cols;
  bool intercept = true;
};

/// Load and validate; missing or non-numeric cells and unknown columns all
/// throw with the offending row/column identified.
Dataset load_dataset(const DataSchema& schema);

nlohmann::json schema_to_json(const DataSchema& schema);

struct TestArgs {
  DataSchema schema;
  double beta0 = 0.0;
  EstimatorKind estimator = EstimatorKind::MallowsHuber;
  StatKind test = StatKind::RCLR;
  double alpha = 0.05;
  int sims = 100000;
  std::uint64_t seed = 0;
};

struct ConfsetArgs {
  DataSchema schema;
  EstimatorKind estimator = EstimatorKind::MallowsHuber;
  StatKind test = StatKind::RCLR;
  double alpha = 0.05;
  std::optional<GridSpec> grid;  // default derived from the fit
  int sims = 100000;
  std::uint64_t seed = 0;
};

struct PowerArgs {
  ScenarioConfig cfg;
  std::vector<double> beta_grid;  // empty -> default_beta_grid(cfg.pi)
  std::vector<TestSpec> tests;    // empty -> {ls_rclr, mallows_rclr}
  int threads = 0;
  std::string out_csv;  // power-curve CSV artifact path, optional
};

struct SensitivityArgs {
  DataSchema schema;
  Vec probe_z;
  Vec probe_w;
  double probe_x = 0.0;
  std::vector<double> magnitudes = {1e2, 1e3, 1e4};  // probe y values
  double t = 0.02;
};

/// Each command returns a RunReport: inputs echo (schema/config, seed,
/// version), outputs, and timing. Re-running with the echoed inputs
/// reproduces the outputs exactly. Output files are only written after the
/// whole computation succeeded.
nlohmann::json cmd_test(const TestArgs& args);
nlohmann::json cmd_confset(const ConfsetArgs& args);
nlohmann::json cmd_power(const PowerArgs& args);
nlohmann::json cmd_sensitivity(const SensitivityArgs& args);

}  // namespace riviv
