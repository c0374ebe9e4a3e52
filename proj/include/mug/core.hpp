#pragma once

#include <vector>

#include "mug/types.hpp"

namespace mug {

struct NormalizeResult {
  DesignProblem problem;
  Eigen::VectorXd scales;  // s_j = sqrt(n) / ||X_j||_2
};

// Rescales every column so that ||X_j||_2^2 / n = 1. Coefficients fitted on
// the scaled matrix map back to the original matrix as scales.cwiseProduct(beta).
// Throws ZeroColumnError for an all-zero column.
Eigen::VectorXd normalize_columns_inplace(Eigen::MatrixXd& x);

NormalizeResult normalize_columns(const DesignProblem& problem);

// True when every column satisfies | ||X_j||_2^2 / n - 1 | <= tol.
bool satisfies_normalization(const Eigen::MatrixXd& x, double tol = 1e-10);

// Throws DataError when `problem.normalized` is unset or the columns fail the
// normalization check.
void verify_normalized(const DesignProblem& problem);

SupportSet intersect(const SupportSet& a, const SupportSet& b);

// Intersection of all sets; throws EmptyListError on an empty list.
SupportSet intersect_supports(const std::vector<SupportSet>& sets);

// Union of the member variables of the selected groups (0-based group indices
// into grouping.groups). Throws BadGroupIndexError for an out-of-range index.
SupportSet group_support_to_variables(const Grouping& grouping, const std::vector<int>& selected_groups);

}  // namespace mug
