#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mug/core.hpp"
#include "mug/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitSolver = 4;

struct CommonFlags {
  std::string config_path;
  std::string preset_name;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int trials = 0;
  int threads = -1;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file; CLI flags override its values");
  cmd->add_option("--preset", flags.preset_name, "experiment preset")
      ->check(CLI::IsMember(mug::preset_names()));
  cmd->add_option("--seed", flags.seed, "master seed")->each([&](const std::string&) { flags.seed_set = true; });
  cmd->add_option("--trials", flags.trials, "Monte-Carlo repetitions");
  cmd->add_option("--threads", flags.threads, "worker threads (0 = all cores)");
  cmd->add_option("--out", flags.out_dir, "output directory");
}

mug::ExperimentConfig resolve_config(const CommonFlags& flags) {
  mug::ExperimentConfig cfg = flags.preset_name.empty() ? mug::ExperimentConfig{} : mug::preset(flags.preset_name);
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw mug::DataError("cannot open " + flags.config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    mug::apply_config_json(cfg, buffer.str(), flags.config_path);
  }
  if (flags.seed_set) cfg.master_seed = flags.seed;
  if (flags.trials > 0) cfg.trials = flags.trials;
  if (flags.threads >= 0) cfg.threads = flags.threads;
  if (!flags.out_dir.empty()) cfg.output_dir = flags.out_dir;
  return cfg;
}

void report_artifacts(const mug::RunArtifacts& artifacts) {
  std::cout << "wrote " << artifacts.trials_path << " (" << artifacts.records.size() << " rows), "
            << artifacts.summary_path << ", " << artifacts.timings_path << "\n";
  for (const auto& row : artifacts.summary) {
    std::cout << "  " << row.method << " K=" << row.big_k << " m=" << row.m_max << ": fpr=" << row.fpr_mean
              << " fnr=" << row.fnr_mean << " |S|=" << row.card_mean << " contain=" << row.containment_rate << " ("
              << row.trials << " trials)\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tuning-free variable screening via multiple groupings of variables"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo K-sweep on synthetic or loaded designs");
  add_common(simulate, flags);

  auto* msweep = app.add_subcommand("msweep", "sweep the maximum group size m at a fixed K");
  add_common(msweep, flags);

  auto* bsweep = app.add_subcommand("bsweep", "sweep the magnitude of one perturbed support entry");
  add_common(bsweep, flags);

  auto* screen = app.add_subcommand("screen", "screen a user-supplied (X, y) pair of CSV files");
  add_common(screen, flags);
  std::string x_csv, y_csv, methods_csv = "mug,sis,lcv,mug_plus_lcv";
  bool header = false;
  int big_k = 50, m_max = 2, sis_target = 0;
  screen->add_option("--x-csv", x_csv, "design matrix CSV, rows = observations")->required();
  screen->add_option("--y-csv", y_csv, "observation vector CSV, one value per row")->required();
  screen->add_option("--methods", methods_csv, "comma-separated: mug,sis,lcv,mug_plus_lcv,lasso_only");
  screen->add_option("--K", big_k, "number of groupings");
  screen->add_option("--m", m_max, "maximum group size");
  screen->add_option("--sis-target", sis_target, "SIS cardinality (default: match MuG)");
  screen->add_flag("--header", header, "first CSV line is a header");

  auto* solve = app.add_subcommand("solve", "one lasso or group-lasso fit with diagnostics");
  add_common(solve, flags);
  std::string solve_x, solve_y;
  double lambda = -1.0;
  int solve_m = 1;
  bool solve_header = false;
  solve->add_option("--x-csv", solve_x, "design matrix CSV")->required();
  solve->add_option("--y-csv", solve_y, "observation vector CSV")->required();
  solve->add_option("--lambda", lambda, "penalty level")->required();
  solve->add_option("--m", solve_m, "group size (1 = lasso, otherwise a random grouping)");
  solve->add_flag("--header", solve_header, "first CSV line is a header");

  auto* report = app.add_subcommand("report", "re-aggregate an existing trials.csv into summary.csv");
  std::string report_trials;
  std::string report_out = ".";
  report->add_option("trials", report_trials, "path to trials.csv")->required();
  report->add_option("--out", report_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (simulate->parsed()) {
      report_artifacts(mug::run_k_sweep(resolve_config(flags)));
    } else if (msweep->parsed()) {
      mug::ExperimentConfig cfg = resolve_config(flags);
      if (flags.preset_name.empty() && cfg.m_sweep.empty()) cfg.m_sweep = {2, 3, 4, 5, 6, 7, 8, 9, 10};
      report_artifacts(mug::run_m_sweep(cfg));
    } else if (bsweep->parsed()) {
      mug::ExperimentConfig cfg = resolve_config(flags);
      if (flags.preset_name.empty() && cfg.beta_min_sweep.empty()) {
        cfg.beta_min_sweep = {0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0};
      }
      report_artifacts(mug::run_beta_min_sweep(cfg));
    } else if (screen->parsed()) {
      const mug::ExperimentConfig cfg = resolve_config(flags);
      mug::ScreenFileOptions options;
      options.methods.clear();
      std::stringstream ss(methods_csv);
      std::string token;
      while (std::getline(ss, token, ',')) {
        if (!token.empty()) options.methods.push_back(token);
      }
      options.mug = cfg.mug;
      options.mug.big_k = big_k;
      options.mug.m_max = m_max;
      options.lcv = cfg.lcv;
      options.sis_target = sis_target;
      options.header = header;
      options.output_dir = cfg.output_dir;
      options.seed = cfg.master_seed;
      const mug::ScreenFileOutput out = mug::screen_file(x_csv, y_csv, options);
      std::cout << "screened n=" << out.n << ", p=" << out.p << "; wrote " << out.supports_path << "\n";
      for (std::size_t i = 0; i < out.results.size(); ++i) {
        std::cout << "  " << out.method_names[i] << ": cardinality " << out.results[i].estimate.size() << "\n";
      }
    } else if (solve->parsed()) {
      const mug::ExperimentConfig cfg = resolve_config(flags);
      const mug::LoadedMatrix loaded = mug::load_design_csv(solve_x, solve_header);
      const Eigen::VectorXd y = mug::load_vector_csv(solve_y, solve_header);
      if (y.size() != loaded.n) {
        throw mug::DataError("row mismatch: " + solve_x + " has " + std::to_string(loaded.n) + " rows but " +
                             solve_y + " has " + std::to_string(y.size()));
      }
      const mug::DesignProblem problem = mug::make_problem(loaded.x, y, true);
      mug::SolverSolution sol;
      if (solve_m <= 1) {
        sol = mug::solve_lasso(problem, lambda, cfg.mug.solver);
      } else {
        auto rng = mug::derive_trial_rng(cfg.master_seed, 0, 0);
        const mug::Grouping grouping = mug::random_grouping(loaded.p, solve_m, rng);
        sol = mug::solve_group_lasso(problem, grouping, lambda, cfg.mug.solver);
      }
      int nonzeros = 0;
      for (int j = 0; j < sol.beta.size(); ++j) nonzeros += sol.beta[j] != 0.0 ? 1 : 0;
      std::cout << "lambda " << sol.lambda << "\nobjective " << sol.objective << "\nkkt_residual "
                << sol.kkt_residual << "\niterations " << sol.iterations << "\nconverged "
                << (sol.converged ? "yes" : "no") << "\nnonzeros " << nonzeros << "\n";
      if (!cfg.output_dir.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        const std::string path = (std::filesystem::path(cfg.output_dir) / "solution.csv").string();
        std::ofstream outf(path);
        if (!outf) throw mug::DataError("cannot write " + path);
        // coefficients are mapped back to the raw (un-normalized) design
        outf << "index,coefficient\n";
        for (int j = 0; j < sol.beta.size(); ++j) {
          outf << (j + 1) << ',' << mug::format_double(loaded.scales[j] * sol.beta[j]) << '\n';
        }
        std::cout << "wrote " << path << "\n";
      }
      if (!sol.converged) return kExitSolver;
    } else if (report->parsed()) {
      const auto records = mug::read_trials_csv(report_trials);
      const auto summary = mug::aggregate(records);
      std::filesystem::create_directories(report_out);
      const bool with_beta_min = [&] {
        for (std::size_t i = 1; i < records.size(); ++i) {
          if (records[i].beta_min != records[0].beta_min) return true;
        }
        return false;
      }();
      const std::string path = (std::filesystem::path(report_out) / "summary.csv").string();
      mug::write_summary_csv(path, summary, with_beta_min);
      std::cout << "wrote " << path << " (" << summary.size() << " rows)\n";
    }
  } catch (const mug::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mug::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const mug::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
