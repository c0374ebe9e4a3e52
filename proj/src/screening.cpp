#include "mug/screening.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <numeric>

#include "mug/core.hpp"

namespace mug {

namespace {

// stream tags for the per-iteration grouping draws
constexpr std::uint64_t kGroupingStream = 0x67726f7570ULL;

int ceil_div(int a, int b) { return (a + b - 1) / b; }

void warn(const std::string& message) { std::cerr << "[mug] warning: " << message << "\n"; }

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::mug: return "mug";
    case Method::sis: return "sis";
    case Method::lcv: return "lcv";
    case Method::mug_plus_lcv: return "mug_plus_lcv";
    case Method::lasso_only: return "lasso_only";
  }
  return "unknown";
}

void MugConfig::validate() const {
  if (big_k < 0) throw ConfigError("mug.big_k must be >= 0");
  if (m_max < 1) throw ConfigError("mug.m_max must be >= 1");
  solver.validate();
}

std::vector<ScreeningResult> mug_screen_snapshots(const DesignProblem& problem, const MugConfig& config,
                                                  const std::vector<int>& ks) {
  config.validate();
  verify_normalized(problem);
  if (ks.empty()) throw ConfigError("mug_screen: no K values requested");
  if (!std::is_sorted(ks.begin(), ks.end())) throw ConfigError("mug_screen: K values must be ascending");
  if (ks.front() < 0) throw ConfigError("mug_screen: K must be >= 0");

  const int n = problem.n();
  const int p = problem.p();
  if (p <= n) {
    warn("p <= n: the cardinality bound gives no reduction; screening proceeds anyway");
  }

  const auto started = std::chrono::steady_clock::now();
  const auto elapsed = [&started] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  const double lip = lipschitz_constant(problem);

  // Stage 0: lasso path, support of size n (or the largest reachable).
  const Grouping singles = singleton_grouping(p);
  const PathResult path0 = solve_path(problem, singles, config.solver, lip);
  if (path0.unconverged_points == static_cast<int>(path0.lambdas.size())) {
    throw SolverError("stage-0 lasso path: no grid point converged");
  }
  auto [lambda0, stage0] = select_support_of_size(path0, singles, n);

  SupportSet running = stage0;
  std::vector<int> sizes{running.size()};
  std::vector<double> lambdas{lambda0};

  // Group size cap that keeps the number of groups above n.
  int m_eff = config.m_max;
  if (p > n) {
    while (m_eff > 1 && ceil_div(p, m_eff) <= n) --m_eff;
  } else {
    m_eff = 1;
  }
  if (m_eff != config.m_max) {
    warn("m_max reduced from " + std::to_string(config.m_max) + " to " + std::to_string(m_eff) +
         " so that every grouping has more than n groups");
  }

  std::vector<ScreeningResult> snapshots;
  auto snapshot = [&](Method method) {
    ScreeningResult res;
    res.method = method;
    res.estimate = running;
    res.per_iteration_sizes = sizes;
    res.lambdas_used = lambdas;
    res.elapsed_s = elapsed();
    res.m_max_effective = m_eff;
    snapshots.push_back(std::move(res));
  };

  std::size_t next_k = 0;
  while (next_k < ks.size() && ks[next_k] == 0) {
    snapshot(Method::mug);
    ++next_k;
  }

  const int max_k = ks.back();
  for (int i = 1; i <= max_k; ++i) {
    CounterRng rng = derive_trial_rng(config.seed, kGroupingStream, static_cast<std::uint64_t>(i));
    Grouping grouping;
    for (int attempt = 0;; ++attempt) {
      grouping = (config.strategy == GroupingKind::random) ? random_grouping(p, m_eff, rng)
                                                           : adaptive_grouping(p, m_eff, running, rng);
      if (grouping.d() > n || p <= n) break;
      if (attempt >= 8) {
        // cannot happen once m_eff satisfies ceil(p / m_eff) > n
        throw SolverError("could not draw a grouping with more than n groups");
      }
    }

    const PathResult path = solve_path(problem, grouping, config.solver, lip);
    if (path.unconverged_points == static_cast<int>(path.lambdas.size())) {
      throw SolverError("group-lasso path at iteration " + std::to_string(i) + ": no grid point converged");
    }
    auto [lambda_i, selected] = select_support_of_size(path, grouping, n);
    running = intersect(running, selected);
    sizes.push_back(running.size());
    lambdas.push_back(lambda_i);

    while (next_k < ks.size() && ks[next_k] == i) {
      snapshot(Method::mug);
      ++next_k;
    }
  }
  return snapshots;
}

ScreeningResult mug_screen(const DesignProblem& problem, const MugConfig& config) {
  return mug_screen_snapshots(problem, config, {config.big_k}).front();
}

SupportSet mug_generic(const DesignProblem& problem, const GroupSelector& selector,
                       const std::vector<Grouping>& groupings) {
  if (groupings.empty()) throw EmptyListError("mug_generic: no groupings given");
  std::vector<SupportSet> estimates;
  estimates.reserve(groupings.size());
  for (const auto& grouping : groupings) {
    validate_grouping(grouping);
    estimates.push_back(selector(problem, grouping));
  }
  return intersect_supports(estimates);
}

ScreeningResult sis_screen(const DesignProblem& problem, int target_cardinality) {
  verify_normalized(problem);
  const int p = problem.p();
  if (target_cardinality < 1 || target_cardinality > p) {
    throw ConfigError("sis target cardinality must be in [1, p]");
  }
  const Eigen::VectorXd omega = (problem.x.transpose() * problem.y).cwiseAbs();
  std::vector<int> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  // stable sort keeps the lower index first on ties
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return omega[a] > omega[b]; });
  order.resize(static_cast<std::size_t>(target_cardinality));

  ScreeningResult res;
  res.method = Method::sis;
  res.estimate = SupportSet(std::move(order));
  res.per_iteration_sizes = {res.estimate.size()};
  return res;
}

ScreeningResult lcv_screen(const DesignProblem& problem, const LcvConfig& config, CounterRng& rng) {
  verify_normalized(problem);
  config.solver.validate();
  if (!(config.folds_fraction > 0.0 && config.folds_fraction < 1.0)) {
    throw ConfigError("lcv.folds_fraction must be in (0, 1)");
  }
  if (config.repeats < 1) throw ConfigError("lcv.repeats must be >= 1");

  const int n = problem.n();
  const int p = problem.p();
  const int n_train = static_cast<int>(std::llround(config.folds_fraction * n));
  const int n_test = n - n_train;
  if (n_train < 2 || n_test < 2) {
    throw DegenerateSplitError("lcv split leaves fewer than 2 rows (train " + std::to_string(n_train) + ", test " +
                               std::to_string(n_test) + ")");
  }

  std::vector<double> grid = config.lambda_grid;
  if (grid.empty()) {
    const double lambda_max = compute_lambda_max(problem, singleton_grouping(p));
    if (lambda_max <= 0.0) {
      grid = {0.0};
    } else {
      const int C = config.solver.grid_size;
      for (int i = 0; i < C; ++i) {
        grid.push_back(lambda_max * std::pow(config.solver.lambda_min_ratio, static_cast<double>(i) / (C - 1)));
      }
    }
  }

  std::vector<double> error(grid.size(), 0.0);
  std::vector<int> rows(static_cast<std::size_t>(n));
  std::iota(rows.begin(), rows.end(), 0);

  for (int rep = 0; rep < config.repeats; ++rep) {
    rng.shuffle(rows);
    Eigen::MatrixXd x_train(n_train, p), x_test(n_test, p);
    Eigen::VectorXd y_train(n_train), y_test(n_test);
    for (int i = 0; i < n_train; ++i) {
      x_train.row(i) = problem.x.row(rows[static_cast<std::size_t>(i)]);
      y_train[i] = problem.y[rows[static_cast<std::size_t>(i)]];
    }
    for (int i = 0; i < n_test; ++i) {
      x_test.row(i) = problem.x.row(rows[static_cast<std::size_t>(n_train + i)]);
      y_test[i] = problem.y[rows[static_cast<std::size_t>(n_train + i)]];
    }

    // The subsample breaks the unit-norm assumption, so the training block is
    // re-normalized; predictions map back through the scale factors.
    NormalizeResult norm = normalize_columns(make_problem(std::move(x_train), std::move(y_train)));
    std::optional<Eigen::VectorXd> warm;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      SolverSolution sol = solve_lasso(norm.problem, grid[gi], config.solver, warm);
      warm = sol.beta;
      const Eigen::VectorXd original_scale_beta = norm.scales.cwiseProduct(sol.beta);
      error[gi] += (y_test - x_test * original_scale_beta).squaredNorm() / n_test;
    }
  }

  std::size_t best = 0;
  for (std::size_t gi = 1; gi < grid.size(); ++gi) {
    if (error[gi] < error[best]) best = gi;  // ties keep the larger lambda
  }

  // refit on the full data at the chosen lambda, warm-starting down the grid
  std::optional<Eigen::VectorXd> warm;
  SolverSolution chosen;
  for (std::size_t gi = 0; gi <= best; ++gi) {
    chosen = solve_lasso(problem, grid[gi], config.solver, warm);
    warm = chosen.beta;
  }

  std::vector<int> support;
  for (int j = 0; j < p; ++j) {
    if (chosen.beta[j] != 0.0) support.push_back(j);
  }

  ScreeningResult res;
  res.method = Method::lcv;
  res.estimate = SupportSet(std::move(support));
  res.per_iteration_sizes = {res.estimate.size()};
  res.lambdas_used = {grid[best]};
  return res;
}

ScreeningResult intersect_results(const ScreeningResult& a, const ScreeningResult& b, Method method) {
  ScreeningResult res;
  res.method = method;
  res.estimate = intersect(a.estimate, b.estimate);
  res.per_iteration_sizes = {res.estimate.size()};
  res.lambdas_used = a.lambdas_used;
  res.lambdas_used.insert(res.lambdas_used.end(), b.lambdas_used.begin(), b.lambdas_used.end());
  return res;
}

ScreeningResult mug_plus_lcv(const DesignProblem& problem, const MugConfig& mug_config, const LcvConfig& lcv_config,
                             CounterRng& lcv_rng) {
  const ScreeningResult mug_res = mug_screen(problem, mug_config);
  const ScreeningResult lcv_res = lcv_screen(problem, lcv_config, lcv_rng);
  return intersect_results(mug_res, lcv_res, Method::mug_plus_lcv);
}

}  // namespace mug
