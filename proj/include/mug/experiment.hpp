#pragma once

#include <string>
#include <vector>

#include "mug/csv.hpp"
#include "mug/datagen.hpp"
#include "mug/screening.hpp"

namespace mug {

struct ExperimentConfig {
  SimSpec sim;
  std::vector<std::string> methods = {"mug", "sis", "lcv", "mug_plus_lcv"};
  MugConfig mug;
  std::vector<int> k_sweep = {0, 10, 25, 50};
  std::vector<int> m_sweep;
  std::vector<double> beta_min_sweep;
  int trials = 50;
  std::string output_dir = ".";
  std::uint64_t master_seed = 1;
  int threads = 0;  // 0: hardware concurrency
  LcvConfig lcv;
  // fig3 protocol: one (X, w, beta) instance shared by every trial; only the
  // grouping draws vary, optionally once per grouping strategy.
  bool fixed_design = false;
  bool compare_strategies = false;

  void validate() const;
};

// Experiment presets mirroring the reported studies: fig3, ind_a..c,
// top_a..c, rl_a, rl_b, m_sweep, bmin_sweep.
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

// Overlays a JSON document onto `config`. Unknown keys and type mismatches
// raise ConfigError naming the offending field.
void apply_config_json(ExperimentConfig& config, const std::string& json_text, const std::string& source_name);

struct RunArtifacts {
  std::vector<TrialRecord> records;  // final CSV order
  std::vector<SummaryRow> summary;
  std::string trials_path;
  std::string summary_path;
  std::string timings_path;
};

// One record per (method, K, trial); SIS cardinality is matched to MuG per
// trial. Writes trials.csv, summary.csv, and timings.csv under output_dir.
RunArtifacts run_k_sweep(const ExperimentConfig& config);

// Group-size sweep at a single K (k_sweep must hold exactly one value).
RunArtifacts run_m_sweep(const ExperimentConfig& config);

// Sweeps the magnitude of one perturbed support entry; design, noise, and the
// remaining entries stay fixed within a trial. Adds a beta_min column.
RunArtifacts run_beta_min_sweep(const ExperimentConfig& config);

struct ScreenFileOptions {
  std::vector<std::string> methods = {"mug", "sis", "lcv", "mug_plus_lcv"};
  MugConfig mug;
  LcvConfig lcv;
  int sis_target = 0;  // 0: match the MuG cardinality, or min(n, p) without MuG
  bool header = false;
  std::string output_dir = ".";
  std::uint64_t seed = 1;
};

struct ScreenFileOutput {
  std::vector<std::string> method_names;
  std::vector<ScreeningResult> results;
  std::string supports_path;
  int n = 0;
  int p = 0;
};

// Screens user-supplied (X, y) CSV files and writes supports.csv with the
// selected 1-based indices per method.
ScreenFileOutput screen_file(const std::string& x_csv, const std::string& y_csv, const ScreenFileOptions& options);

}  // namespace mug
