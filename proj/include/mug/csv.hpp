#pragma once

#include <string>
#include <vector>

#include "mug/metrics.hpp"

namespace mug {

// Shortest representation that round-trips exactly.
std::string format_double(double value);

// trials.csv: method,K,m,trial,cardinality,fpr,fnr,contains_truth
// (plus a beta_min column when `with_beta_min` is set, used by the
// beta-min sweep). Rows must already be in their final order.
void write_trials_csv(const std::string& path, const std::vector<TrialRecord>& records, bool with_beta_min = false);

// timings.csv: method,K,m,trial,wall_time_s. Kept apart from trials.csv so
// that the reproducibility guarantee stays byte-exact.
void write_timings_csv(const std::string& path, const std::vector<TrialRecord>& records);

// summary.csv: method,K,m,fpr_mean,fpr_std,fnr_mean,fnr_std,card_mean,containment_rate,trials
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows, bool with_beta_min = false);

// Reads either trials.csv flavor back (header-driven).
std::vector<TrialRecord> read_trials_csv(const std::string& path);

std::vector<SummaryRow> read_summary_csv(const std::string& path);

}  // namespace mug
