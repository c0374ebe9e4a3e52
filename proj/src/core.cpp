#include "mug/core.hpp"

#include <algorithm>
#include <cmath>

namespace mug {

SupportSet::SupportSet(std::vector<int> indices) : indices_(std::move(indices)) {
  for (int j : indices_) {
    if (j < 0) throw DataError("support index must be nonnegative, got " + std::to_string(j));
  }
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

SupportSet SupportSet::full(int p) {
  std::vector<int> all(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) all[static_cast<std::size_t>(j)] = j;
  return SupportSet(std::move(all));
}

bool SupportSet::contains(int j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

bool SupportSet::subset_of(const SupportSet& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(), indices_.end());
}

DesignProblem make_problem(Eigen::MatrixXd x, Eigen::VectorXd y, bool normalized) {
  if (x.rows() < 1 || x.cols() < 1) throw DimensionMismatchError("design matrix must be at least 1x1");
  if (y.size() != x.rows()) {
    throw DimensionMismatchError("y has " + std::to_string(y.size()) + " entries but X has " +
                                 std::to_string(x.rows()) + " rows");
  }
  return DesignProblem{std::move(x), std::move(y), normalized};
}

GroundTruth make_ground_truth(Eigen::VectorXd beta_star, double sigma) {
  if (sigma < 0) throw ConfigError("sigma must be nonnegative");
  std::vector<int> nz;
  double beta_min = 0.0;
  for (int j = 0; j < beta_star.size(); ++j) {
    const double a = std::abs(beta_star[j]);
    if (a > 0.0) {
      nz.push_back(j);
      beta_min = (beta_min == 0.0) ? a : std::min(beta_min, a);
    }
  }
  GroundTruth truth;
  truth.beta_star = std::move(beta_star);
  truth.support = SupportSet(std::move(nz));
  truth.k = truth.support.size();
  truth.beta_min = beta_min;
  truth.sigma = sigma;
  return truth;
}

void validate_grouping(const Grouping& g) {
  if (g.p < 1) throw DataError("grouping over an empty index set");
  if (g.m_max < 1) throw DataError("grouping m_max must be at least 1");
  std::vector<int> seen;
  seen.reserve(static_cast<std::size_t>(g.p));
  for (const auto& group : g.groups) {
    if (group.empty() || static_cast<int>(group.size()) > g.m_max) {
      throw DataError("group size " + std::to_string(group.size()) + " outside [1, " + std::to_string(g.m_max) + "]");
    }
    seen.insert(seen.end(), group.begin(), group.end());
  }
  std::sort(seen.begin(), seen.end());
  if (static_cast<int>(seen.size()) != g.p) {
    throw DataError("grouping covers " + std::to_string(seen.size()) + " slots, expected " + std::to_string(g.p));
  }
  for (int j = 0; j < g.p; ++j) {
    if (seen[static_cast<std::size_t>(j)] != j) throw DataError("grouping is not a partition of the index set");
  }
}

Grouping singleton_grouping(int p) {
  Grouping g;
  g.p = p;
  g.m_max = 1;
  g.groups.reserve(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) g.groups.push_back({j});
  return g;
}

Eigen::VectorXd normalize_columns_inplace(Eigen::MatrixXd& x) {
  const auto n = static_cast<double>(x.rows());
  Eigen::VectorXd scales(x.cols());
  for (int j = 0; j < x.cols(); ++j) {
    const double norm = x.col(j).norm();
    if (norm == 0.0) throw ZeroColumnError(j + 1);
    const double s = std::sqrt(n) / norm;
    x.col(j) *= s;
    scales[j] = s;
  }
  return scales;
}

NormalizeResult normalize_columns(const DesignProblem& problem) {
  NormalizeResult out;
  out.problem.x = problem.x;
  out.scales = normalize_columns_inplace(out.problem.x);
  out.problem.y = problem.y;
  out.problem.normalized = true;
  return out;
}

bool satisfies_normalization(const Eigen::MatrixXd& x, double tol) {
  const auto n = static_cast<double>(x.rows());
  for (int j = 0; j < x.cols(); ++j) {
    if (std::abs(x.col(j).squaredNorm() / n - 1.0) > tol) return false;
  }
  return true;
}

void verify_normalized(const DesignProblem& problem) {
  if (!problem.normalized || !satisfies_normalization(problem.x)) {
    throw DataError("design matrix is not column-normalized; normalize_columns must run first");
  }
}

SupportSet intersect(const SupportSet& a, const SupportSet& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return SupportSet(std::move(out));
}

SupportSet intersect_supports(const std::vector<SupportSet>& sets) {
  if (sets.empty()) throw EmptyListError("intersect_supports: no sets given");
  SupportSet acc = sets.front();
  for (std::size_t i = 1; i < sets.size(); ++i) acc = intersect(acc, sets[i]);
  return acc;
}

SupportSet group_support_to_variables(const Grouping& grouping, const std::vector<int>& selected_groups) {
  std::vector<int> vars;
  for (int gi : selected_groups) {
    if (gi < 0 || gi >= grouping.d()) throw BadGroupIndexError(gi + 1, grouping.d());
    const auto& members = grouping.groups[static_cast<std::size_t>(gi)];
    vars.insert(vars.end(), members.begin(), members.end());
  }
  return SupportSet(std::move(vars));
}

}  // namespace mug
