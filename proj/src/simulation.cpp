#include "riviv/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "riviv/errors.hpp"
#include "riviv/reduced_form.hpp"

namespace riviv {

std::string to_string(Contamination c) {
  switch (c) {
    case Contamination::None: return "none";
    case Contamination::OutlierY: return "outlier_y";
    case Contamination::OutlierYZ: return "outlier_yz";
    case Contamination::T3Errors: return "t3";
  }
  return "?";
}

Contamination contamination_from_string(const std::string& name) {
  if (name == "none") return Contamination::None;
  if (name == "outlier_y") return Contamination::OutlierY;
  if (name == "outlier_yz") return Contamination::OutlierYZ;
  if (name == "t3") return Contamination::T3Errors;
  throw InputError("unknown contamination '" + name +
                   "' (expected none, outlier_y, outlier_yz or t3)");
}

void ScenarioConfig::validate() const {
  if (k < 1) throw InputError("scenario: k must be >= 1");
  if (n <= k + 1) throw InputError("scenario: need n > k + 1");
  if (reps < 1) throw InputError("scenario: reps must be >= 1");
  if (!(std::fabs(rho) < 1.0)) throw InputError("scenario: |rho| must be < 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InputError("scenario: alpha must lie in (0, 1)");
  if (contamination == Contamination::T3Errors && n < 50)
    throw InputError("scenario: T3Errors needs n >= 50");
}

Dataset generate_baseline(const ScenarioConfig& cfg, RngStream& rng) {
  cfg.validate();
  Dataset ds;
  ds.y.resize(cfg.n);
  ds.x.resize(cfg.n);
  ds.Z.resize(cfg.n, cfg.k);
  ds.W.resize(cfg.n, 1);
  ds.include_intercept = cfg.intercept;
  for (int i = 0; i < cfg.n; ++i) {
    double zsum = 0.0;
    for (int j = 0; j < cfg.k; ++j) {
      ds.Z(i, j) = rng.normal();
      zsum += ds.Z(i, j);
    }
    const double w = rng.normal();
    ds.W(i, 0) = w;
    const bool heavy = cfg.contamination == Contamination::T3Errors && i < 50;
    const auto [u, v] =
        heavy ? bivariate_t3(rng, cfg.rho) : bivariate_normal(rng, cfg.rho);
    ds.x[i] = w + cfg.pi * zsum + v;
    ds.y[i] = cfg.beta * ds.x[i] + 2.0 * w + u;
  }
  return ds;
}

Dataset apply_contamination(const Dataset& data, Contamination kind) {
  Dataset out = data;
  switch (kind) {
    case Contamination::None:
    case Contamination::T3Errors:
      break;
    case Contamination::OutlierY:
      out.y[0] = 20.0;
      break;
    case Contamination::OutlierYZ:
      out.y[0] = 20.0;
      out.Z(0, 0) = 5.0;
      break;
  }
  return out;
}

Dataset generate_scenario(const ScenarioConfig& cfg, RngStream& rng) {
  return apply_contamination(generate_baseline(cfg, rng), cfg.contamination);
}

std::string TestSpec::label() const {
  return (estimator == EstimatorKind::LS ? std::string("ls_")
                                         : std::string("mallows_")) +
         to_string(stat);
}

TestSpec TestSpec::from_label(const std::string& label) {
  TestSpec spec;
  std::string rest;
  if (label.rfind("ls_", 0) == 0) {
    spec.estimator = EstimatorKind::LS;
    rest = label.substr(3);
  } else if (label.rfind("mallows_", 0) == 0) {
    spec.estimator = EstimatorKind::MallowsHuber;
    rest = label.substr(8);
  } else {
    throw InputError("test label '" + label +
                     "' must start with ls_ or mallows_");
  }
  spec.stat = stat_kind_from_string(rest);
  return spec;
}

std::vector<double> default_beta_grid(double pi) {
  const double half_width = std::fabs(pi) >= 0.5 ? 1.0 : 4.0;
  std::vector<double> grid(41);
  for (int i = 0; i < 41; ++i)
    grid[i] = -half_width + 2.0 * half_width * i / 40.0;
  grid[20] = 0.0;
  return grid;
}

std::string PowerCurve::to_csv() const {
  std::ostringstream os;
  os.precision(10);
  os << "beta,test,rejection_rate,mc_se\n";
  for (std::size_t b = 0; b < beta_grid.size(); ++b)
    for (std::size_t t = 0; t < tests.size(); ++t) {
      const PowerCell& cell = cells[t][b];
      os << beta_grid[b] << ',' << tests[t].label() << ',' << cell.rate << ','
         << cell.mc_se << '\n';
    }
  return os.str();
}

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

struct TallyBlock {
  std::vector<std::vector<long long>> rejections;  // [test][beta]
  std::vector<std::vector<long long>> valid;
  std::vector<long long> failures;
  std::vector<long long> nonconverged;

  TallyBlock(std::size_t n_tests, std::size_t n_betas)
      : rejections(n_tests, std::vector<long long>(n_betas, 0)),
        valid(n_tests, std::vector<long long>(n_betas, 0)),
        failures(n_betas, 0),
        nonconverged(n_betas, 0) {}

  void merge(const TallyBlock& other) {
    for (std::size_t t = 0; t < rejections.size(); ++t)
      for (std::size_t b = 0; b < rejections[t].size(); ++b) {
        rejections[t][b] += other.rejections[t][b];
        valid[t][b] += other.valid[t][b];
      }
    for (std::size_t b = 0; b < failures.size(); ++b) {
      failures[b] += other.failures[b];
      nonconverged[b] += other.nonconverged[b];
    }
  }
};

}  // namespace

PowerCurve power_curve(const ScenarioConfig& cfg,
                       const std::vector<double>& beta_grid,
                       const std::vector<TestSpec>& tests, int threads) {
  cfg.validate();
  if (beta_grid.empty()) throw InputError("power_curve: empty beta grid");
  if (tests.empty()) throw InputError("power_curve: no tests requested");

  const bool need_ls = std::any_of(tests.begin(), tests.end(), [](auto& t) {
    return t.estimator == EstimatorKind::LS;
  });
  const bool need_mallows = std::any_of(tests.begin(), tests.end(), [](auto& t) {
    return t.estimator == EstimatorKind::MallowsHuber;
  });
  const bool need_clr = std::any_of(tests.begin(), tests.end(), [](auto& t) {
    return t.stat == StatKind::RCLR;
  });
  if (need_clr && cfg.sims < 10000)
    throw InputError("power_curve: RCLR tests require sims >= 10^4");

  const std::size_t n_betas = beta_grid.size();
  const std::size_t n_tests = tests.size();
  const long long total_jobs =
      static_cast<long long>(n_betas) * static_cast<long long>(cfg.reps);

  const int n_threads = resolve_threads(threads);
  std::vector<TallyBlock> blocks(n_threads, TallyBlock(n_tests, n_betas));
  std::atomic<long long> next_job{0};

  auto worker = [&](int tid) {
    TallyBlock& tally = blocks[tid];
    for (;;) {
      const long long job = next_job.fetch_add(1);
      if (job >= total_jobs) break;
      const auto b = static_cast<std::size_t>(job / cfg.reps);
      const auto rep = static_cast<std::uint64_t>(job % cfg.reps);

      ScenarioConfig rep_cfg = cfg;
      rep_cfg.beta = beta_grid[b];
      RngStream rng(cfg.seed,
                    static_cast<std::uint64_t>(b) *
                            static_cast<std::uint64_t>(cfg.reps) +
                        rep);
      try {
        const Dataset ds = generate_scenario(rep_cfg, rng);
        ClrSims draws;
        if (need_clr) draws = ClrSims::draw(rng, cfg.k, cfg.sims);

        ReducedFormFit fit_ls_rf, fit_m_rf;
        if (need_ls) fit_ls_rf = fit_reduced_form(ds, EstimatorKind::LS);
        if (need_mallows) {
          fit_m_rf = fit_reduced_form(ds, EstimatorKind::MallowsHuber, cfg.huber);
          if (!fit_m_rf.fit_y.converged || !fit_m_rf.fit_x.converged)
            ++tally.nonconverged[b];
        }
        // Evaluate every test before tallying so a throw counts the whole
        // replication as one failure.
        std::vector<char> rejects(n_tests);
        for (std::size_t t = 0; t < n_tests; ++t) {
          const ReducedFormFit& fit =
              tests[t].estimator == EstimatorKind::LS ? fit_ls_rf : fit_m_rf;
          rejects[t] = run_test_with_draws(
                           fit, 0.0, tests[t].stat, cfg.alpha,
                           tests[t].stat == StatKind::RCLR ? &draws : nullptr)
                           .reject;
        }
        for (std::size_t t = 0; t < n_tests; ++t) {
          ++tally.valid[t][b];
          if (rejects[t]) ++tally.rejections[t][b];
        }
      } catch (const NumericalError&) {
        ++tally.failures[b];
      }
    }
  };

  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  TallyBlock total(n_tests, n_betas);
  for (const auto& blk : blocks) total.merge(blk);

  long long total_failures = 0;
  for (const long long f : total.failures) total_failures += f;
  if (static_cast<double>(total_failures) >
      0.01 * static_cast<double>(total_jobs)) {
    std::ostringstream os;
    os << "power_curve: " << total_failures << " of " << total_jobs
       << " replications failed (>1%); per-beta failures:";
    for (std::size_t b = 0; b < n_betas; ++b)
      if (total.failures[b] > 0)
        os << " beta=" << beta_grid[b] << ":" << total.failures[b];
    throw NumericalError(os.str());
  }

  PowerCurve curve;
  curve.beta_grid = beta_grid;
  curve.tests = tests;
  curve.failures = total.failures;
  curve.nonconverged = total.nonconverged;
  curve.cells.assign(n_tests, std::vector<PowerCell>(n_betas));
  for (std::size_t t = 0; t < n_tests; ++t)
    for (std::size_t b = 0; b < n_betas; ++b) {
      PowerCell& cell = curve.cells[t][b];
      cell.rejections = total.rejections[t][b];
      cell.valid = total.valid[t][b];
      if (cell.valid > 0) {
        cell.rate = static_cast<double>(cell.rejections) /
                    static_cast<double>(cell.valid);
        cell.mc_se = std::sqrt(cell.rate * (1.0 - cell.rate) /
                               static_cast<double>(cell.valid));
      }
    }
  return curve;
}

GdIndependenceReport gd_independence_diagnostic(const ScenarioConfig& cfg,
                                                EstimatorKind estimator,
                                                int threads) {
  cfg.validate();
  if (cfg.contamination != Contamination::None)
    throw InputError("gd_independence_diagnostic: contamination must be none");

  const int k = cfg.k;
  const double beta0 = cfg.beta;  // null hypothesis holds
  Mat gmat = Mat::Zero(cfg.reps, k);
  Mat dmat = Mat::Zero(cfg.reps, k);
  Mat omega_rows = Mat::Zero(cfg.reps, k * k);  // per-rep plug-in, row-major
  std::vector<char> ok(cfg.reps, 0);

  const int n_threads = resolve_threads(threads);
  std::atomic<long long> next_rep{0};
  auto worker = [&]() {
    for (;;) {
      const long long rep = next_rep.fetch_add(1);
      if (rep >= cfg.reps) break;
      RngStream rng(cfg.seed, static_cast<std::uint64_t>(rep));
      try {
        const Dataset ds = generate_scenario(cfg, rng);
        const ReducedFormFit fit = fit_reduced_form(ds, estimator, cfg.huber);
        const double root_n = std::sqrt(static_cast<double>(fit.n));
        gmat.row(rep) = root_n * g_stat(fit, beta0).transpose();
        dmat.row(rep) = root_n * d_stat(fit, beta0).transpose();
        const Mat om = omega(fit, beta0);
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b) omega_rows(rep, a * k + b) = om(a, b);
        ok[rep] = 1;
      } catch (const NumericalError&) {
      }
    }
  };

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  Mat omega_sum = Mat::Zero(k, k);
  for (int r = 0; r < cfg.reps; ++r)
    if (ok[r])
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) omega_sum(a, b) += omega_rows(r, a * k + b);

  // Compact to successful replications.
  long long n_ok = 0;
  for (int r = 0; r < cfg.reps; ++r)
    if (ok[r]) {
      gmat.row(n_ok) = gmat.row(r);
      dmat.row(n_ok) = dmat.row(r);
      ++n_ok;
    }
  if (n_ok < 2)
    throw NumericalError("gd_independence_diagnostic: too few replications");
  const auto r = static_cast<double>(n_ok);
  const Mat g = gmat.topRows(n_ok);
  const Mat d = dmat.topRows(n_ok);

  GdIndependenceReport report;
  report.reps = static_cast<int>(n_ok);
  report.failures = cfg.reps - static_cast<int>(n_ok);
  report.mean_g = g.colwise().mean().transpose();
  report.mean_d = d.colwise().mean().transpose();
  const Mat gc = g.rowwise() - report.mean_g.transpose();
  const Mat dc = d.rowwise() - report.mean_d.transpose();
  report.se_mean_g.resize(k);
  report.se_mean_d.resize(k);
  for (int j = 0; j < k; ++j) {
    report.se_mean_g[j] = std::sqrt(gc.col(j).squaredNorm() / (r - 1.0) / r);
    report.se_mean_d[j] = std::sqrt(dc.col(j).squaredNorm() / (r - 1.0) / r);
  }
  report.cross_cov = gc.transpose() * dc / r;
  report.var_g = gc.transpose() * gc / r;
  report.omega_avg = omega_sum / r;

  report.cross_se = Mat::Zero(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      const Vec prod = gc.col(a).cwiseProduct(dc.col(b));
      const double mean_prod = prod.mean();
      const double var_prod =
          (prod.array() - mean_prod).square().sum() / (r - 1.0);
      report.cross_se(a, b) = std::sqrt(var_prod / r);
    }
  return report;
}

}  // namespace riviv
