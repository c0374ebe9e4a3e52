#include "mug/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "mug/core.hpp"
#include "mug/rng.hpp"

namespace mug {

namespace {

Eigen::VectorXd group_weights(const Grouping& g) {
  Eigen::VectorXd w(g.d());
  for (int j = 0; j < g.d(); ++j) {
    w[j] = std::sqrt(static_cast<double>(g.groups[static_cast<std::size_t>(j)].size()));
  }
  return w;
}

double group_norm(const Eigen::VectorXd& v, const std::vector<int>& members) {
  double sq = 0.0;
  for (int j : members) sq += v[j] * v[j];
  return std::sqrt(sq);
}

// residual from the correlation vector c = X^T (y - X beta) / n
double kkt_from_correlation(const Eigen::VectorXd& c, const Eigen::VectorXd& beta, double lambda, const Grouping& g,
                            const Eigen::VectorXd& weights) {
  double worst = 0.0;
  for (int gi = 0; gi < g.d(); ++gi) {
    const auto& members = g.groups[static_cast<std::size_t>(gi)];
    const double target = lambda * weights[gi];
    const double norm_b = group_norm(beta, members);
    double res;
    if (norm_b == 0.0) {
      res = std::max(0.0, group_norm(c, members) - target);
    } else {
      double sq = 0.0;
      for (int j : members) {
        const double diff = c[j] - target * beta[j] / norm_b;
        sq += diff * diff;
      }
      res = std::sqrt(sq);
    }
    worst = std::max(worst, res);
  }
  return worst;
}

// block soft-threshold of u with per-group threshold thresh * sqrt(|G_j|)
void block_prox(const Eigen::VectorXd& u, double thresh, const Grouping& g, const Eigen::VectorXd& weights,
                Eigen::VectorXd& out) {
  for (int gi = 0; gi < g.d(); ++gi) {
    const auto& members = g.groups[static_cast<std::size_t>(gi)];
    const double cut = thresh * weights[gi];
    const double norm_u = group_norm(u, members);
    if (norm_u <= cut) {
      for (int j : members) out[j] = 0.0;
    } else {
      const double scale = 1.0 - cut / norm_u;
      for (int j : members) out[j] = scale * u[j];
    }
  }
}

void check_problem_and_lambda(const DesignProblem& pb, double lambda) {
  if (!pb.normalized) throw DataError("solver requires a column-normalized design");
  if (lambda < 0.0) throw ConfigError("lambda must be nonnegative");
  if (!(lambda == lambda)) throw ConfigError("lambda is NaN");
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw ConfigError("solver.tolerance must be > 0");
  if (max_iterations < 1) throw ConfigError("solver.max_iterations must be >= 1");
  if (grid_size < 2) throw ConfigError("solver.grid_size must be >= 2");
  if (!(lambda_min_ratio > 0.0 && lambda_min_ratio < 1.0)) {
    throw ConfigError("solver.lambda_min_ratio must be in (0, 1)");
  }
}

double group_penalty(const Eigen::VectorXd& beta, const Grouping& grouping) {
  if (beta.size() != grouping.p) {
    throw DimensionMismatchError("beta has " + std::to_string(beta.size()) + " entries, grouping covers " +
                                 std::to_string(grouping.p));
  }
  double total = 0.0;
  for (const auto& members : grouping.groups) {
    total += std::sqrt(static_cast<double>(members.size())) * group_norm(beta, members);
  }
  return total;
}

double objective_value(const DesignProblem& problem, const Grouping& grouping, const Eigen::VectorXd& beta,
                       double lambda) {
  const Eigen::VectorXd resid = problem.y - problem.x * beta;
  return 0.5 * resid.squaredNorm() / problem.n() + lambda * group_penalty(beta, grouping);
}

double compute_lambda_max(const DesignProblem& problem, const Grouping& grouping) {
  if (grouping.p != problem.p()) throw DimensionMismatchError("grouping does not match the design dimension");
  const Eigen::VectorXd c = problem.x.transpose() * problem.y / problem.n();
  double worst = 0.0;
  for (const auto& members : grouping.groups) {
    worst = std::max(worst, group_norm(c, members) / std::sqrt(static_cast<double>(members.size())));
  }
  return worst;
}

double lipschitz_constant(const DesignProblem& problem, int steps) {
  const int p = problem.p();
  CounterRng rng(0x5ca1ab1e0ddba11ULL);
  Eigen::VectorXd v(p);
  for (int j = 0; j < p; ++j) v[j] = rng.normal();
  v.normalize();
  Eigen::VectorXd w(p);
  double lam = 0.0;
  for (int it = 0; it < steps; ++it) {
    w.noalias() = problem.x.transpose() * (problem.x * v);
    w /= problem.n();
    lam = w.norm();
    if (lam == 0.0) return 1e-12;
    v = w / lam;
  }
  return lam;
}

double kkt_residual(const DesignProblem& problem, const Grouping& grouping, const Eigen::VectorXd& beta,
                    double lambda) {
  const Eigen::VectorXd c = problem.x.transpose() * (problem.y - problem.x * beta) / problem.n();
  return kkt_from_correlation(c, beta, lambda, grouping, group_weights(grouping));
}

double kkt_check(const DesignProblem& problem, const Grouping& grouping, const SolverSolution& solution) {
  return kkt_residual(problem, grouping, solution.beta, solution.lambda);
}

SolverSolution solve_group_lasso(const DesignProblem& problem, const Grouping& grouping, double lambda,
                                 const SolverConfig& config, const std::optional<Eigen::VectorXd>& warm_start,
                                 double lipschitz_hint) {
  config.validate();
  check_problem_and_lambda(problem, lambda);
  validate_grouping(grouping);
  if (grouping.p != problem.p()) throw DimensionMismatchError("grouping does not match the design dimension");
  if (warm_start && warm_start->size() != problem.p()) {
    throw DimensionMismatchError("warm start has wrong length");
  }

  const int n = problem.n();
  const int p = problem.p();
  const Eigen::VectorXd weights = group_weights(grouping);
  // Power iteration approaches the top eigenvalue from below; the inflation
  // keeps 1/L a valid descent step.
  const double lip = std::max((lipschitz_hint > 0.0 ? lipschitz_hint : lipschitz_constant(problem)), 1e-12);
  const double step = 1.0 / (lip * (1.0 + 1e-3));

  SolverSolution sol;
  sol.lambda = lambda;
  Eigen::VectorXd beta = warm_start ? *warm_start : Eigen::VectorXd::Zero(p);
  Eigen::VectorXd fitted(n), resid(n), c(p), u(p), beta_next(p);

  double res = std::numeric_limits<double>::infinity();
  int it = 0;
  bool converged = false;

  if (!config.use_fista) {
    for (; it < config.max_iterations; ++it) {
      fitted.noalias() = problem.x * beta;
      resid = problem.y - fitted;
      c.noalias() = problem.x.transpose() * resid;
      c /= n;
      res = kkt_from_correlation(c, beta, lambda, grouping, weights);
      if (config.track_objective) {
        sol.objective_trace.push_back(0.5 * resid.squaredNorm() / n + lambda * group_penalty(beta, grouping));
      }
      if (res <= config.tolerance) {
        converged = true;
        break;
      }
      u = beta + step * c;
      block_prox(u, step * lambda, grouping, weights, beta_next);
      beta.swap(beta_next);
    }
  } else {
    // FISTA with gradient-based adaptive restart; the KKT certificate is
    // evaluated at the iterate, not the extrapolation point.
    Eigen::VectorXd z = beta;
    double t = 1.0;
    constexpr int kCheckInterval = 5;
    for (; it < config.max_iterations; ++it) {
      fitted.noalias() = problem.x * z;
      resid = problem.y - fitted;
      c.noalias() = problem.x.transpose() * resid;
      c /= n;
      u = z + step * c;
      block_prox(u, step * lambda, grouping, weights, beta_next);
      const Eigen::VectorXd diff = beta_next - beta;
      if ((z - beta_next).dot(diff) > 0.0) {
        t = 1.0;
        z = beta_next;
      } else {
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        z = beta_next + ((t - 1.0) / t_next) * diff;
        t = t_next;
      }
      beta.swap(beta_next);
      if (config.track_objective) {
        sol.objective_trace.push_back(objective_value(problem, grouping, beta, lambda));
      }
      if ((it + 1) % kCheckInterval == 0 || it + 1 == config.max_iterations) {
        res = kkt_residual(problem, grouping, beta, lambda);
        if (res <= config.tolerance) {
          converged = true;
          ++it;
          break;
        }
      }
    }
  }

  if (!std::isfinite(res) || (!converged && !config.use_fista)) {
    res = kkt_residual(problem, grouping, beta, lambda);
    converged = res <= config.tolerance;
  }
  sol.beta = std::move(beta);
  sol.kkt_residual = res;
  sol.iterations = it;
  sol.converged = converged;
  sol.objective = objective_value(problem, grouping, sol.beta, lambda);
  return sol;
}

SolverSolution solve_lasso(const DesignProblem& problem, double lambda, const SolverConfig& config,
                           const std::optional<Eigen::VectorXd>& warm_start) {
  config.validate();
  check_problem_and_lambda(problem, lambda);
  if (warm_start && warm_start->size() != problem.p()) {
    throw DimensionMismatchError("warm start has wrong length");
  }

  const int n = problem.n();
  const int p = problem.p();
  SolverSolution sol;
  sol.lambda = lambda;

  Eigen::VectorXd beta = warm_start ? *warm_start : Eigen::VectorXd::Zero(p);
  Eigen::VectorXd resid = problem.y;
  if (warm_start && beta.squaredNorm() > 0.0) resid -= problem.x * beta;

  const auto soft = [](double z, double cut) {
    if (z > cut) return z - cut;
    if (z < -cut) return z + cut;
    return 0.0;
  };

  double res = std::numeric_limits<double>::infinity();
  int sweep = 0;
  bool converged = false;
  Eigen::VectorXd c(p);
  for (; sweep < config.max_iterations; ++sweep) {
    c.noalias() = problem.x.transpose() * resid;
    c /= n;
    res = 0.0;
    for (int j = 0; j < p; ++j) {
      const double rj = (beta[j] != 0.0) ? std::abs(c[j] - lambda * (beta[j] > 0 ? 1.0 : -1.0))
                                         : std::max(0.0, std::abs(c[j]) - lambda);
      res = std::max(res, rj);
    }
    if (config.track_objective) {
      sol.objective_trace.push_back(0.5 * resid.squaredNorm() / n + lambda * beta.lpNorm<1>());
    }
    if (res <= config.tolerance) {
      converged = true;
      break;
    }
    // A1 normalization makes each coordinate update a single soft-threshold.
    for (int j = 0; j < p; ++j) {
      const double zj = problem.x.col(j).dot(resid) / n + beta[j];
      const double bj = soft(zj, lambda);
      const double delta = bj - beta[j];
      if (delta != 0.0) {
        resid -= problem.x.col(j) * delta;
        beta[j] = bj;
      }
    }
  }

  sol.beta = std::move(beta);
  sol.kkt_residual = res;
  sol.iterations = sweep;
  sol.converged = converged;
  sol.objective = objective_value(problem, singleton_grouping(p), sol.beta, lambda);
  return sol;
}

PathResult solve_path(const DesignProblem& problem, const Grouping& grouping, const SolverConfig& config,
                      double lipschitz_hint) {
  config.validate();
  validate_grouping(grouping);
  const double lambda_max = compute_lambda_max(problem, grouping);

  const bool singleton = std::all_of(grouping.groups.begin(), grouping.groups.end(),
                                     [](const auto& g) { return g.size() == 1; });

  PathResult path;
  const auto record = [&](SolverSolution&& sol) {
    std::vector<int> active;
    for (int gi = 0; gi < grouping.d(); ++gi) {
      if (group_norm(sol.beta, grouping.groups[static_cast<std::size_t>(gi)]) > 0.0) active.push_back(gi);
    }
    path.lambdas.push_back(sol.lambda);
    path.group_support_sizes.push_back(static_cast<int>(active.size()));
    path.group_supports.push_back(std::move(active));
    if (!sol.converged) ++path.unconverged_points;
    path.solutions.push_back(std::move(sol));
  };

  if (lambda_max <= 0.0) {
    // y is orthogonal to every column; the path degenerates to beta = 0.
    record(singleton ? solve_lasso(problem, 0.0, config) : solve_group_lasso(problem, grouping, 0.0, config));
    return path;
  }

  const double lip = (!singleton && lipschitz_hint <= 0.0) ? lipschitz_constant(problem) : lipschitz_hint;
  const int C = config.grid_size;
  std::optional<Eigen::VectorXd> warm;
  for (int i = 0; i < C; ++i) {
    const double lambda = lambda_max * std::pow(config.lambda_min_ratio, static_cast<double>(i) / (C - 1));
    SolverSolution sol = singleton ? solve_lasso(problem, lambda, config, warm)
                                   : solve_group_lasso(problem, grouping, lambda, config, warm, lip);
    warm = sol.beta;
    record(std::move(sol));
  }

  // nested-support monitor over all grid pairs (larger lambda first)
  for (std::size_t i = 0; i < path.group_supports.size(); ++i) {
    for (std::size_t j = i + 1; j < path.group_supports.size(); ++j) {
      if (!std::includes(path.group_supports[j].begin(), path.group_supports[j].end(),
                         path.group_supports[i].begin(), path.group_supports[i].end())) {
        ++path.nested_support_violations;
      }
    }
  }
  return path;
}

std::pair<double, SupportSet> select_support_of_size(const PathResult& path, const Grouping& grouping, int target) {
  if (path.lambdas.empty()) throw EmptyListError("select_support_of_size: empty path");
  if (target < 1) throw ConfigError("select_support_of_size: target must be >= 1");

  const int points = static_cast<int>(path.lambdas.size());
  int best = -1;
  for (int i = 0; i < points; ++i) {
    const int size = path.group_support_sizes[static_cast<std::size_t>(i)];
    if (size >= target && (best < 0 || size < path.group_support_sizes[static_cast<std::size_t>(best)])) {
      best = i;  // ties keep the earlier grid point, i.e. the larger lambda
    }
  }
  if (best < 0) {
    for (int i = 0; i < points; ++i) {
      const int size = path.group_support_sizes[static_cast<std::size_t>(i)];
      if (best < 0 || size > path.group_support_sizes[static_cast<std::size_t>(best)]) best = i;
    }
  }
  return {path.lambdas[static_cast<std::size_t>(best)],
          group_support_to_variables(grouping, path.group_supports[static_cast<std::size_t>(best)])};
}

}  // namespace mug
