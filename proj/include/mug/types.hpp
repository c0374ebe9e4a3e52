#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mug/errors.hpp"

namespace mug {

// Sorted, duplicate-free set of variable indices. Indices are 0-based inside
// the library and converted to 1-based at every user-facing boundary.
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::vector<int> indices);  // sorts, deduplicates, rejects negatives

  static SupportSet full(int p);  // {0, ..., p-1}

  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(int j) const;
  bool subset_of(const SupportSet& other) const;
  const std::vector<int>& indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<int> indices_;
};

// Observed pair of the linear model y = X beta + w, X of size n-by-p.
// `normalized` records that every column satisfies ||X_j||_2^2 / n = 1.
struct DesignProblem {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  bool normalized = false;

  int n() const { return static_cast<int>(x.rows()); }
  int p() const { return static_cast<int>(x.cols()); }
};

// Shape-checked constructor.
DesignProblem make_problem(Eigen::MatrixXd x, Eigen::VectorXd y, bool normalized = false);

// Sparse coefficient vector used to simulate observations, together with the
// quantities screening is evaluated against.
struct GroundTruth {
  Eigen::VectorXd beta_star;
  SupportSet support;     // indices of the nonzero entries
  int k = 0;              // |support|
  double beta_min = 0.0;  // smallest |beta_star[j]| over the support, 0 when k = 0
  double sigma = 0.0;     // noise standard deviation
};

GroundTruth make_ground_truth(Eigen::VectorXd beta_star, double sigma);

// Partition of {0, ..., p-1} into disjoint groups of size at most m_max.
struct Grouping {
  std::vector<std::vector<int>> groups;
  int p = 0;
  int m_max = 1;

  int d() const { return static_cast<int>(groups.size()); }
};

// Throws DataError unless `g.groups` partitions {0..p-1} with every group
// size in [1, m_max].
void validate_grouping(const Grouping& g);

Grouping singleton_grouping(int p);

// One (group-)lasso fit.
struct SolverSolution {
  Eigen::VectorXd beta;
  double lambda = 0.0;
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  // Objective value at the start of each iteration; populated only when
  // SolverConfig::track_objective is set.
  std::vector<double> objective_trace;
};

}  // namespace mug
