#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "mug/experiment.hpp"

using namespace mug;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir.string();
}

ExperimentConfig small_config(const std::string& out) {
  ExperimentConfig cfg;
  cfg.sim.design = DesignKind::ind;
  cfg.sim.p = 40;
  cfg.sim.n = 12;
  cfg.sim.k = 3;
  cfg.sim.sigma = 0.3;
  cfg.sim.beta_min_magnitude = 1.0;
  cfg.mug.m_max = 2;
  cfg.mug.solver.tolerance = 1e-7;
  cfg.mug.solver.grid_size = 40;
  cfg.mug.solver.use_fista = true;
  cfg.lcv.solver = cfg.mug.solver;
  cfg.lcv.repeats = 5;
  cfg.k_sweep = {0, 2, 4};
  cfg.trials = 3;
  cfg.master_seed = 9001;
  cfg.output_dir = out;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("k-sweep output is byte-identical across worker counts") {
  ExperimentConfig one = small_config(temp_dir("mug_exp_t1"));
  one.threads = 1;
  ExperimentConfig two = small_config(temp_dir("mug_exp_t2"));
  two.threads = 2;

  const RunArtifacts a = run_k_sweep(one);
  const RunArtifacts b = run_k_sweep(two);
  CHECK(slurp(a.trials_path) == slurp(b.trials_path));
  CHECK(slurp(a.summary_path) == slurp(b.summary_path));
}

TEST_CASE("k-sweep rows satisfy the per-record invariants") {
  const RunArtifacts artifacts = run_k_sweep(small_config(temp_dir("mug_exp_inv")));

  std::map<std::pair<std::string, int>, std::map<int, int>> cardinality;  // (method, trial) -> K -> |S|
  for (const auto& r : artifacts.records) {
    CHECK(r.fpr >= 0.0);
    CHECK(r.fpr <= 1.0);
    CHECK(r.fnr >= 0.0);
    CHECK(r.fnr <= 1.0);
    CHECK(r.contains_truth == (r.fnr == 0.0));  // k > 0 in this config
    cardinality[{r.method, r.trial}][r.big_k] = r.cardinality;
  }

  // the running intersection can only shrink with K
  for (const auto& [key, by_k] : cardinality) {
    if (key.first != "mug") continue;
    int previous = INT_MAX;
    for (const auto& [k_value, card] : by_k) {
      CHECK(card <= previous);
      previous = card;
    }
  }

  // matched-cardinality protocol: SIS mirrors MuG per trial and K
  for (const auto& [key, by_k] : cardinality) {
    if (key.first != "sis") continue;
    for (const auto& [k_value, card] : by_k) {
      CHECK(card == cardinality[{"mug", key.second}][k_value]);
    }
  }

  // mug estimates never exceed n
  for (const auto& r : artifacts.records) {
    if (r.method == "mug") CHECK(r.cardinality <= 12);
  }
}

TEST_CASE("summary equals a recomputation from trials.csv") {
  const RunArtifacts artifacts = run_k_sweep(small_config(temp_dir("mug_exp_sum")));
  const auto records = read_trials_csv(artifacts.trials_path);
  REQUIRE(records.size() == artifacts.records.size());
  const auto summary = aggregate(records);
  const auto written = read_summary_csv(artifacts.summary_path);
  REQUIRE(summary.size() == written.size());
  for (std::size_t i = 0; i < summary.size(); ++i) {
    CHECK(written[i].method == summary[i].method);
    CHECK(written[i].big_k == summary[i].big_k);
    CHECK(std::abs(written[i].fpr_mean - summary[i].fpr_mean) <= 1e-12);
    CHECK(std::abs(written[i].fpr_std - summary[i].fpr_std) <= 1e-12);
    CHECK(std::abs(written[i].fnr_mean - summary[i].fnr_mean) <= 1e-12);
    CHECK(std::abs(written[i].card_mean - summary[i].card_mean) <= 1e-12);
    CHECK(written[i].trials == summary[i].trials);
  }
}

TEST_CASE("a degenerate sweep produces exactly the lasso-stage row per trial") {
  ExperimentConfig cfg = small_config(temp_dir("mug_exp_deg"));
  cfg.methods = {"mug"};
  cfg.k_sweep = {0};
  cfg.trials = 1;
  const RunArtifacts artifacts = run_k_sweep(cfg);
  REQUIRE(artifacts.records.size() == 1);
  CHECK(artifacts.records[0].method == "mug");
  CHECK(artifacts.records[0].big_k == 0);

  // the same stage under the lasso_only label matches it exactly
  ExperimentConfig lasso = cfg;
  lasso.methods = {"lasso_only"};
  lasso.output_dir = temp_dir("mug_exp_deg2");
  const RunArtifacts lasso_artifacts = run_k_sweep(lasso);
  REQUIRE(lasso_artifacts.records.size() == 1);
  CHECK(lasso_artifacts.records[0].cardinality == artifacts.records[0].cardinality);
  CHECK(lasso_artifacts.records[0].fpr == artifacts.records[0].fpr);
  CHECK(lasso_artifacts.records[0].fnr == artifacts.records[0].fnr);
}

TEST_CASE("the fixed-design protocol reuses one instance across trials") {
  ExperimentConfig cfg = small_config(temp_dir("mug_exp_fixed"));
  cfg.fixed_design = true;
  cfg.methods = {"lasso_only"};
  cfg.k_sweep = {0};
  cfg.trials = 3;
  const RunArtifacts artifacts = run_k_sweep(cfg);
  REQUIRE(artifacts.records.size() == 3);
  // stage 0 has no grouping randomness, so every repetition is identical
  for (const auto& r : artifacts.records) {
    CHECK(r.cardinality == artifacts.records[0].cardinality);
    CHECK(r.fpr == artifacts.records[0].fpr);
  }
}

TEST_CASE("m sweep: rows per m value, single-K restriction enforced") {
  ExperimentConfig cfg = small_config(temp_dir("mug_exp_m"));
  cfg.methods = {"mug"};
  cfg.k_sweep = {2};
  cfg.m_sweep = {1, 2, 3};
  cfg.trials = 2;
  const RunArtifacts artifacts = run_m_sweep(cfg);
  CHECK(artifacts.records.size() == 6);  // 3 m-values x 2 trials

  ExperimentConfig bad = cfg;
  bad.k_sweep = {0, 2};
  CHECK_THROWS_AS(run_m_sweep(bad), ConfigError);
  bad = cfg;
  bad.m_sweep = {};
  CHECK_THROWS_AS(run_m_sweep(bad), ConfigError);
}

TEST_CASE("beta_min sweep: detectability improves with the perturbed magnitude") {
  ExperimentConfig cfg = small_config(temp_dir("mug_exp_b"));
  cfg.sim.p = 60;
  cfg.sim.n = 20;
  cfg.sim.k = 3;
  cfg.sim.beta_min_magnitude = 2.0;  // base magnitude of the unperturbed entries
  cfg.sim.sigma = 0.5;
  cfg.methods = {"mug"};
  cfg.k_sweep = {3};
  cfg.beta_min_sweep = {0.05, 2.0};
  cfg.trials = 8;
  const RunArtifacts artifacts = run_beta_min_sweep(cfg);

  double fnr_weak = -1.0, fnr_strong = -1.0;
  for (const auto& row : artifacts.summary) {
    if (row.beta_min == 0.05) fnr_weak = row.fnr_mean;
    if (row.beta_min == 2.0) fnr_strong = row.fnr_mean;
  }
  REQUIRE(fnr_weak >= 0.0);
  REQUIRE(fnr_strong >= 0.0);
  CHECK(fnr_strong <= fnr_weak);
  CHECK(fnr_strong <= 0.15);

  // the sweep column is part of both CSV schemas
  CHECK(slurp(artifacts.trials_path).substr(0, 40).find("beta_min") != std::string::npos);
  CHECK(slurp(artifacts.summary_path).substr(0, 40).find("beta_min") != std::string::npos);
}

TEST_CASE("config json overlays presets and rejects unknown keys") {
  ExperimentConfig cfg = preset("ind_a");
  CHECK(cfg.sim.p == 1000);
  CHECK(cfg.sim.n == 100);
  CHECK(cfg.sim.k == 10);
  apply_config_json(cfg, R"({"trials": 7, "sim": {"n": 50}, "mug": {"m_max": 3}})", "inline");
  CHECK(cfg.trials == 7);
  CHECK(cfg.sim.n == 50);
  CHECK(cfg.mug.m_max == 3);

  CHECK_THROWS_AS(apply_config_json(cfg, R"({"nope": 1})", "inline"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(cfg, R"({"sim": {"nope": 1}})", "inline"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(cfg, R"({"trials": "many"})", "inline"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(cfg, R"(not json)", "inline"), ConfigError);

  try {
    apply_config_json(cfg, R"({"sim": {"design": "weird"}})", "inline");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("sim.design") != std::string::npos);
  }
}

TEST_CASE("experiment validation errors name their fields") {
  ExperimentConfig cfg = small_config(temp_dir("mug_exp_val"));
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config(temp_dir("mug_exp_val"));
  cfg.methods = {"mug", "bogus"};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config(temp_dir("mug_exp_val"));
  cfg.k_sweep = {};
  CHECK_THROWS_AS(run_k_sweep(cfg), ConfigError);
  cfg = small_config(temp_dir("mug_exp_val"));
  cfg.k_sweep = {-1};
  CHECK_THROWS_AS(run_k_sweep(cfg), ConfigError);
}

TEST_CASE("every preset validates and carries the reported parameters") {
  for (const auto& name : preset_names()) {
    const ExperimentConfig cfg = preset(name);
    CHECK_NOTHROW(cfg.validate());
  }
  const ExperimentConfig fig3 = preset("fig3");
  CHECK(fig3.sim.p == 100);
  CHECK(fig3.sim.n == 30);
  CHECK(fig3.sim.k == 5);
  CHECK(fig3.sim.sigma == 1.0);
  CHECK(fig3.mug.m_max == 2);
  CHECK(fig3.k_sweep == std::vector<int>{50});
  CHECK(fig3.trials == 200);
  CHECK(fig3.fixed_design);
  CHECK(fig3.compare_strategies);

  const ExperimentConfig msweep = preset("m_sweep");
  CHECK(msweep.sim.beta_min_magnitude == 2.0);
  CHECK(msweep.k_sweep == std::vector<int>{100});
  CHECK(msweep.m_sweep == std::vector<int>{2, 3, 4, 5, 6, 7, 8, 9, 10});

  const ExperimentConfig rl = preset("rl_a");
  CHECK(rl.sim.p == 587);
  CHECK(rl.sim.n == 148);
  CHECK(rl.sim.k == 10);

  CHECK_THROWS_AS(preset("unknown"), ConfigError);
}

TEST_CASE("screen_file: y = 0 empties every estimate; shape errors name both files") {
  const std::string dir = temp_dir("mug_exp_screen");
  std::filesystem::create_directories(dir);
  const std::string x_path = dir + "/x.csv";
  const std::string y_path = dir + "/y.csv";
  {
    CounterRng rng(3);
    std::ofstream x_out(x_path);
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 6; ++j) x_out << rng.normal() << (j + 1 < 6 ? ',' : '\n');
    }
    std::ofstream y_out(y_path);
    for (int i = 0; i < 10; ++i) y_out << 0.0 << "\n";
  }

  ScreenFileOptions options;
  options.mug.big_k = 2;
  options.mug.solver.grid_size = 20;
  options.lcv.repeats = 3;
  options.lcv.solver = options.mug.solver;
  options.output_dir = dir;
  const ScreenFileOutput out = screen_file(x_path, y_path, options);
  CHECK(out.n == 10);
  CHECK(out.p == 6);
  for (const auto& res : out.results) CHECK(res.estimate.empty());

  // supports.csv holds only the header when nothing is selected
  const std::string supports = slurp(out.supports_path);
  CHECK(supports == "method,cardinality,index\n");

  const std::string y_short = dir + "/y_short.csv";
  {
    std::ofstream y_out(y_short);
    y_out << "1\n2\n";
  }
  try {
    screen_file(x_path, y_short, options);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string message = e.what();
    CHECK(message.find(x_path) != std::string::npos);
    CHECK(message.find(y_short) != std::string::npos);
  }
}

TEST_CASE("screen_file writes 1-based indices") {
  const std::string dir = temp_dir("mug_exp_screen_idx");
  std::filesystem::create_directories(dir);
  const std::string x_path = dir + "/x.csv";
  const std::string y_path = dir + "/y.csv";
  CounterRng rng(7);
  Eigen::MatrixXd x(12, 5);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 5; ++j) x(i, j) = rng.normal();
  }
  {
    std::ofstream x_out(x_path);
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 5; ++j) x_out << x(i, j) << (j + 1 < 5 ? ',' : '\n');
    }
    std::ofstream y_out(y_path);
    for (int i = 0; i < 12; ++i) y_out << x(i, 2) << "\n";  // signal on 0-based column 2
  }
  ScreenFileOptions options;
  options.methods = {"sis"};
  options.sis_target = 1;
  options.output_dir = dir;
  const ScreenFileOutput out = screen_file(x_path, y_path, options);
  CHECK(slurp(out.supports_path) == "method,cardinality,index\nsis,1,3\n");
}

}  // TEST_SUITE
