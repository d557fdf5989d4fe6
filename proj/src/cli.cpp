#include "riviv/cli.hpp"

#include <chrono>
#include <fstream>

#include "riviv/csv.hpp"
#include "riviv/errors.hpp"
#include "riviv/reduced_form.hpp"

namespace riviv {

namespace {

using nlohmann::json;

class Timer {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::string estimator_name(EstimatorKind kind) {
  return kind == EstimatorKind::LS ? "ls" : "mallows";
}

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json fit_summary(const ReducedFormFit& fit) {
  return {{"method", estimator_name(fit.method)},
          {"n", fit.n},
          {"k", fit.k},
          {"delta_hat", vec_to_json(fit.delta_hat)},
          {"pi_hat", vec_to_json(fit.pi_hat)},
          {"scale_y", fit.fit_y.scale},
          {"scale_x", fit.fit_x.scale},
          {"converged_y", fit.fit_y.converged},
          {"converged_x", fit.fit_x.converged},
          {"iterations_y", fit.fit_y.iterations},
          {"iterations_x", fit.fit_x.iterations}};
}

json set_to_json(const ConfidenceSet& set) {
  json intervals = json::array();
  for (const auto& iv : set.intervals) {
    json j;
    j["lower"] = iv.lo_unbounded ? json("-inf") : json(iv.lo);
    j["upper"] = iv.hi_unbounded ? json("inf") : json(iv.hi);
    intervals.push_back(j);
  }
  return {{"level", set.level},
          {"test", to_string(set.test_kind)},
          {"intervals", intervals},
          {"notation", set.format()},
          {"empty", set.empty()}};
}

void check_sample_size(const Dataset& ds) {
  if (ds.n() <= ds.n_controls() + ds.k() + 1)
    throw InputError("dataset: need n > p + k + 1 (n=" +
                     std::to_string(ds.n()) + ", p=" +
                     std::to_string(ds.n_controls()) + ", k=" +
                     std::to_string(ds.k()) + ")");
}

// Rank-deficiency reports carry a design-column index; name the column.
ReducedFormFit fit_named(const Dataset& ds, const DataSchema& schema,
                         EstimatorKind estimator) {
  try {
    return fit_reduced_form(ds, estimator);
  } catch (const RankDeficient& e) {
    std::vector<std::string> names;
    if (schema.intercept) names.emplace_back("(intercept)");
    names.insert(names.end(), schema.w_cols.begin(), schema.w_cols.end());
    names.insert(names.end(), schema.z_cols.begin(), schema.z_cols.end());
    if (e.column_index >= 0 &&
        e.column_index < static_cast<int>(names.size()))
      throw RankDeficient(std::string(e.what()) + " [column '" +
                              names[e.column_index] + "']",
                          e.column_index);
    throw;
  }
}

}  // namespace

Dataset load_dataset(const DataSchema& schema) {
  if (schema.y_col.empty() || schema.x_col.empty() || schema.z_cols.empty())
    throw SchemaError("schema: --y, --x and at least one --z column required");
  const CsvTable table = CsvTable::read_file(schema.csv_path);

  Dataset ds;
  ds.y = table.column(schema.y_col);
  ds.x = table.column(schema.x_col);
  ds.Z.resize(table.rows(), schema.z_cols.size());
  for (std::size_t j = 0; j < schema.z_cols.size(); ++j)
    ds.Z.col(j) = table.column(schema.z_cols[j]);
  ds.W.resize(table.rows(), schema.w_cols.size());
  for (std::size_t j = 0; j < schema.w_cols.size(); ++j)
    ds.W.col(j) = table.column(schema.w_cols[j]);
  ds.include_intercept = schema.intercept;
  ds.validate();
  return ds;
}

json schema_to_json(const DataSchema& schema) {
  return {{"csv", schema.csv_path},     {"y", schema.y_col},
          {"x", schema.x_col},          {"z", schema.z_cols},
          {"w", schema.w_cols},         {"intercept", schema.intercept}};
}

json cmd_test(const TestArgs& args) {
  Timer timer;
  const Dataset ds = load_dataset(args.schema);
  check_sample_size(ds);
  const ReducedFormFit fit = fit_named(ds, args.schema, args.estimator);
  RngStream rng(args.seed, 0);
  const TestOutcome outcome =
      run_test(fit, args.beta0, args.test, args.alpha, args.sims, rng);

  json report;
  report["version"] = kVersion;
  report["command"] = "test";
  report["inputs"] = {{"schema", schema_to_json(args.schema)},
                      {"beta0", args.beta0},
                      {"estimator", estimator_name(args.estimator)},
                      {"test", to_string(args.test)},
                      {"alpha", args.alpha},
                      {"sims", args.sims},
                      {"seed", args.seed}};
  report["outputs"] = {{"statistic", outcome.stat.value},
                       {"w_tilde", outcome.stat.w_tilde},
                       {"critical_value", outcome.critical},
                       {"p_value", outcome.p_value},
                       {"decision", outcome.reject ? "reject" : "accept"},
                       {"fit", fit_summary(fit)}};
  report["timing_ms"] = timer.elapsed_ms();
  return report;
}

json cmd_confset(const ConfsetArgs& args) {
  Timer timer;
  const Dataset ds = load_dataset(args.schema);
  check_sample_size(ds);
  const ReducedFormFit fit = fit_named(ds, args.schema, args.estimator);
  const GridSpec grid = args.grid ? *args.grid : GridSpec::default_for(fit);
  RngStream rng(args.seed, 0);
  const ConfidenceSet set =
      invert_test_fitted(fit, args.test, args.alpha, grid, args.sims, rng);

  json report;
  report["version"] = kVersion;
  report["command"] = "confset";
  report["inputs"] = {{"schema", schema_to_json(args.schema)},
                      {"estimator", estimator_name(args.estimator)},
                      {"test", to_string(args.test)},
                      {"alpha", args.alpha},
                      {"grid", {{"lo", grid.lo},
                                {"hi", grid.hi},
                                {"points", grid.points},
                                {"tail_probe", grid.tail_probe}}},
                      {"sims", args.sims},
                      {"seed", args.seed}};
  report["outputs"] = {{"confidence_set", set_to_json(set)},
                       {"fit", fit_summary(fit)}};
  report["timing_ms"] = timer.elapsed_ms();
  return report;
}

json cmd_power(const PowerArgs& args) {
  Timer timer;
  const std::vector<double> grid =
      args.beta_grid.empty() ? default_beta_grid(args.cfg.pi) : args.beta_grid;
  std::vector<TestSpec> tests = args.tests;
  if (tests.empty())
    tests = {{EstimatorKind::LS, StatKind::RCLR},
             {EstimatorKind::MallowsHuber, StatKind::RCLR}};

  const PowerCurve curve = power_curve(args.cfg, grid, tests, args.threads);

  json curve_json = json::array();
  for (std::size_t t = 0; t < tests.size(); ++t)
    for (std::size_t b = 0; b < grid.size(); ++b) {
      const PowerCell& cell = curve.at(t, b);
      curve_json.push_back({{"beta", grid[b]},
                            {"test", tests[t].label()},
                            {"rejection_rate", cell.rate},
                            {"mc_se", cell.mc_se},
                            {"valid", cell.valid}});
    }
  json test_labels = json::array();
  for (const auto& t : tests) test_labels.push_back(t.label());

  long long failures = 0;
  for (const long long f : curve.failures) failures += f;

  json report;
  report["version"] = kVersion;
  report["command"] = "power";
  report["inputs"] = {{"n", args.cfg.n},
                      {"k", args.cfg.k},
                      {"pi", args.cfg.pi},
                      {"rho", args.cfg.rho},
                      {"contamination", to_string(args.cfg.contamination)},
                      {"reps", args.cfg.reps},
                      {"alpha", args.cfg.alpha},
                      {"sims", args.cfg.sims},
                      {"intercept", args.cfg.intercept},
                      {"seed", args.cfg.seed},
                      {"beta_grid", grid},
                      {"tests", test_labels},
                      {"threads", args.threads}};
  report["outputs"] = {{"curve", curve_json}, {"failed_replications", failures}};
  report["timing_ms"] = timer.elapsed_ms();

  if (!args.out_csv.empty()) {
    std::ofstream out(args.out_csv);
    if (!out) throw InputError("cannot write '" + args.out_csv + "'");
    out << curve.to_csv();
  }
  return report;
}

json cmd_sensitivity(const SensitivityArgs& args) {
  Timer timer;
  const Dataset ds = load_dataset(args.schema);
  check_sample_size(ds);

  ProbePoint probe;
  probe.x = args.probe_x;
  probe.z = args.probe_z;
  probe.w = args.probe_w;
  if (probe.z.size() != ds.Z.cols())
    throw InputError("sensitivity: --probe-z needs " +
                     std::to_string(ds.Z.cols()) + " values");
  if (probe.w.size() != ds.W.cols())
    throw InputError("sensitivity: --probe-w needs " +
                     std::to_string(ds.W.cols()) + " values");

  json rows = json::array();
  rows.push_back({{"magnitude", 0.0}, {"ls", 0.0}, {"mallows", 0.0}});
  for (const double m : args.magnitudes) {
    probe.y = m;
    const double ls = sensitivity_curve(EstimatorKind::LS, ds, probe,
                                        {args.t})[0];
    const double mallows = sensitivity_curve(EstimatorKind::MallowsHuber, ds,
                                             probe, {args.t})[0];
    rows.push_back({{"magnitude", m}, {"ls", ls}, {"mallows", mallows}});
  }

  json report;
  report["version"] = kVersion;
  report["command"] = "sensitivity";
  report["inputs"] = {{"schema", schema_to_json(args.schema)},
                      {"probe_z", vec_to_json(args.probe_z)},
                      {"probe_w", vec_to_json(args.probe_w)},
                      {"probe_x", args.probe_x},
                      {"magnitudes", args.magnitudes},
                      {"t", args.t}};
  report["outputs"] = {{"displacement", rows}};
  report["timing_ms"] = timer.elapsed_ms();
  return report;
}

}  // namespace riviv
