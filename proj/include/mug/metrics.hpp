#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mug/types.hpp"

namespace mug {

// FPR = |est \ truth| / |est|, FNR = |truth \ est| / |truth|.
// Empty denominators: an empty estimate has FPR 0; an empty truth has FNR 0.
std::pair<double, double> compute_fpr_fnr(const SupportSet& estimate, const SupportSet& truth);

struct TrialRecord {
  std::string method;
  int big_k = 0;
  int m_max = 0;
  double beta_min = 0.0;
  int trial = 0;
  int cardinality = 0;
  double fpr = 0.0;
  double fnr = 0.0;
  bool contains_truth = false;
  double wall_time_s = 0.0;
};

struct SummaryRow {
  std::string method;
  int big_k = 0;
  int m_max = 0;
  double beta_min = 0.0;
  double fpr_mean = 0.0;
  double fpr_std = 0.0;
  double fnr_mean = 0.0;
  double fnr_std = 0.0;
  double card_mean = 0.0;
  double containment_rate = 0.0;
  int trials = 0;
};

// Mean / sample standard deviation (n-1) per (method, K, m, beta_min) key.
// Records are canonically ordered first, so the output does not depend on the
// input permutation. Throws DataError on empty input.
std::vector<SummaryRow> aggregate(std::vector<TrialRecord> records);

}  // namespace mug
