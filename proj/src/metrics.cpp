#include "mug/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "mug/core.hpp"

namespace mug {

std::pair<double, double> compute_fpr_fnr(const SupportSet& estimate, const SupportSet& truth) {
  const int common = intersect(estimate, truth).size();
  const double fpr = estimate.empty() ? 0.0 : static_cast<double>(estimate.size() - common) / estimate.size();
  const double fnr = truth.empty() ? 0.0 : static_cast<double>(truth.size() - common) / truth.size();
  return {fpr, fnr};
}

namespace {

auto record_key(const TrialRecord& r) {
  return std::tie(r.method, r.big_k, r.m_max, r.beta_min, r.trial, r.fpr, r.fnr, r.cardinality);
}

double mean_of(const std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x;
  return total / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double sq = 0.0;
  for (double x : v) sq += (x - mean) * (x - mean);
  return std::sqrt(sq / static_cast<double>(v.size() - 1));
}

}  // namespace

std::vector<SummaryRow> aggregate(std::vector<TrialRecord> records) {
  if (records.empty()) throw DataError("aggregate: no records");
  std::sort(records.begin(), records.end(),
            [](const TrialRecord& a, const TrialRecord& b) { return record_key(a) < record_key(b); });

  std::vector<SummaryRow> rows;
  std::size_t start = 0;
  while (start < records.size()) {
    std::size_t stop = start;
    const auto& head = records[start];
    const auto same_group = [&](const TrialRecord& r) {
      return r.method == head.method && r.big_k == head.big_k && r.m_max == head.m_max && r.beta_min == head.beta_min;
    };
    std::vector<double> fprs, fnrs, cards;
    int contained = 0;
    while (stop < records.size() && same_group(records[stop])) {
      fprs.push_back(records[stop].fpr);
      fnrs.push_back(records[stop].fnr);
      cards.push_back(static_cast<double>(records[stop].cardinality));
      contained += records[stop].contains_truth ? 1 : 0;
      ++stop;
    }
    SummaryRow row;
    row.method = head.method;
    row.big_k = head.big_k;
    row.m_max = head.m_max;
    row.beta_min = head.beta_min;
    row.fpr_mean = mean_of(fprs);
    row.fpr_std = sample_std(fprs, row.fpr_mean);
    row.fnr_mean = mean_of(fnrs);
    row.fnr_std = sample_std(fnrs, row.fnr_mean);
    row.card_mean = mean_of(cards);
    row.trials = static_cast<int>(stop - start);
    row.containment_rate = static_cast<double>(contained) / row.trials;
    rows.push_back(std::move(row));
    start = stop;
  }
  return rows;
}

}  // namespace mug
