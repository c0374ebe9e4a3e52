#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mug/grouping.hpp"
#include "mug/solvers.hpp"
#include "mug/types.hpp"

namespace mug {

enum class Method { mug, sis, lcv, mug_plus_lcv, lasso_only };

std::string to_string(Method method);

struct MugConfig {
  int big_k = 50;  // number of groupings K
  int m_max = 2;
  GroupingKind strategy = GroupingKind::adaptive;
  SolverConfig solver;
  std::uint64_t seed = 0;

  void validate() const;
};

struct ScreeningResult {
  Method method = Method::mug;
  SupportSet estimate;
  // Running |S-bar| after the lasso stage and after each intersection;
  // non-increasing for MuG by construction.
  std::vector<int> per_iteration_sizes;
  std::vector<double> lambdas_used;
  double elapsed_s = 0.0;      // solver time spent up to this result
  int m_max_effective = 0;     // group-size cap after enforcing d > n
};

// Tuning-free screening: a lasso path selects a support of size n (or the
// largest reachable), then K group-lasso paths over fresh groupings each
// select n groups whose variables are intersected into the running estimate.
ScreeningResult mug_screen(const DesignProblem& problem, const MugConfig& config);

// Same run observed at several K values (ascending); the iteration sequence
// is shared, so snapshots[i] equals mug_screen at big_k = ks[i] with the same
// seed. Used by sweep harnesses to avoid re-solving shared prefixes.
std::vector<ScreeningResult> mug_screen_snapshots(const DesignProblem& problem, const MugConfig& config,
                                                  const std::vector<int>& ks);

// The abstract framework: apply a group-level selection algorithm to each
// grouping and intersect the variable-level supports.
using GroupSelector = std::function<SupportSet(const DesignProblem&, const Grouping&)>;
SupportSet mug_generic(const DesignProblem& problem, const GroupSelector& selector,
                       const std::vector<Grouping>& groupings);

// Keeps the target_cardinality largest entries of |X^T y|; ties resolve to
// the lower index.
ScreeningResult sis_screen(const DesignProblem& problem, int target_cardinality);

struct LcvConfig {
  double folds_fraction = 0.7;  // fraction of rows used for training
  int repeats = 50;
  std::vector<double> lambda_grid;  // empty: geometric grid from lambda_max per solver config
  SolverConfig solver;
};

// Repeated random train/test splits; the lambda minimizing mean held-out
// squared error is refit on the full data and its support returned.
ScreeningResult lcv_screen(const DesignProblem& problem, const LcvConfig& config, CounterRng& rng);

ScreeningResult intersect_results(const ScreeningResult& a, const ScreeningResult& b, Method method);

ScreeningResult mug_plus_lcv(const DesignProblem& problem, const MugConfig& mug_config, const LcvConfig& lcv_config,
                             CounterRng& lcv_rng);

}  // namespace mug
