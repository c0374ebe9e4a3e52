#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mug/types.hpp"

namespace mug {

struct SolverConfig {
  double tolerance = 1e-7;        // KKT residual threshold
  int max_iterations = 50000;
  int grid_size = 100;            // number of path points C
  double lambda_min_ratio = 1e-3;
  bool use_fista = false;         // accelerated proximal gradient for group fits
  bool track_objective = false;   // record the per-iteration objective

  void validate() const;
};

struct PathResult {
  std::vector<double> lambdas;  // strictly decreasing
  std::vector<SolverSolution> solutions;
  std::vector<int> group_support_sizes;
  std::vector<std::vector<int>> group_supports;  // selected group indices per point
  // Grid pairs lambda_1 <= lambda_2 whose supports are not nested,
  // support(lambda_2) ⊆ support(lambda_1); an observable check of the
  // monotone-path assumption, recorded rather than enforced.
  int nested_support_violations = 0;
  int unconverged_points = 0;
};

// Weighted (1,2)-norm of beta: sum_j sqrt(|G_j|) * ||beta_{G_j}||_2.
double group_penalty(const Eigen::VectorXd& beta, const Grouping& grouping);

// (1/2n) ||y - X beta||_2^2 + lambda * group_penalty(beta)
double objective_value(const DesignProblem& problem, const Grouping& grouping, const Eigen::VectorXd& beta,
                       double lambda);

// Smallest penalty for which beta = 0 is optimal:
// max_j ||X_{G_j}^T y||_2 / (n sqrt(|G_j|)).
double compute_lambda_max(const DesignProblem& problem, const Grouping& grouping);

// Largest eigenvalue of X^T X / n, estimated with `steps` power iterations.
double lipschitz_constant(const DesignProblem& problem, int steps = 200);

// Optimality residual at (beta, lambda): with c = X^T (y - X beta) / n and
// w_j = sqrt(|G_j|), the max over groups of
//   max(0, ||c_G|| - lambda w_j)                      for inactive groups,
//   ||c_G - lambda w_j beta_G / ||beta_G|| ||         for active groups.
// Zero iff beta solves the group-lasso program at lambda.
double kkt_residual(const DesignProblem& problem, const Grouping& grouping, const Eigen::VectorXd& beta,
                    double lambda);

double kkt_check(const DesignProblem& problem, const Grouping& grouping, const SolverSolution& solution);

// Proximal gradient with block soft-thresholding, step 1/L. A non-converged
// fit returns the best iterate with converged = false. `lipschitz_hint > 0`
// skips the power-iteration estimate.
SolverSolution solve_group_lasso(const DesignProblem& problem, const Grouping& grouping, double lambda,
                                 const SolverConfig& config,
                                 const std::optional<Eigen::VectorXd>& warm_start = std::nullopt,
                                 double lipschitz_hint = 0.0);

// Cyclic coordinate descent with exact updates (requires normalized columns).
SolverSolution solve_lasso(const DesignProblem& problem, double lambda, const SolverConfig& config,
                           const std::optional<Eigen::VectorXd>& warm_start = std::nullopt);

// Warm-started solve over a geometric grid of `grid_size` values from
// lambda_max down to lambda_max * lambda_min_ratio. Singleton groupings
// dispatch to the coordinate-descent lasso.
PathResult solve_path(const DesignProblem& problem, const Grouping& grouping, const SolverConfig& config,
                      double lipschitz_hint = 0.0);

// Among grid points whose group-support size reaches `target`, picks the one
// with the smallest size (ties resolve to the largest lambda); when no point
// reaches the target, falls back to the point maximizing the support size.
// Returns the chosen lambda and the variable-level expansion of its support.
std::pair<double, SupportSet> select_support_of_size(const PathResult& path, const Grouping& grouping, int target);

}  // namespace mug
