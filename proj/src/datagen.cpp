#include "mug/datagen.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "mug/core.hpp"

namespace mug {

void SimSpec::validate() const {
  if (design != DesignKind::csv) {
    if (n < 1) throw ConfigError("sim.n must be >= 1");
    if (p < 1) throw ConfigError("sim.p must be >= 1");
  }
  if (k < 0 || k > p) throw ConfigError("sim.k must be in [0, p]");
  if (sigma < 0) throw ConfigError("sim.sigma must be >= 0");
  if (design == DesignKind::top && !(std::abs(mu) < 1.0)) throw ConfigError("sim.mu must satisfy |mu| < 1");
  if (design == DesignKind::csv && csv_path.empty()) throw ConfigError("sim.csv_path required for the csv design");
}

Eigen::MatrixXd generate_ind_design(int n, int p, CounterRng& rng) {
  if (n < 1 || p < 1) throw ConfigError("design dimensions must be >= 1");
  Eigen::MatrixXd x(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) x(i, j) = rng.normal();
  }
  normalize_columns_inplace(x);
  return x;
}

Eigen::MatrixXd generate_top_design(int n, int p, double mu, CounterRng& rng) {
  if (n < 1 || p < 1) throw ConfigError("design dimensions must be >= 1");
  if (!(std::abs(mu) < 1.0)) throw ConfigError("Toeplitz parameter must satisfy |mu| < 1");
  const double innovation = std::sqrt(1.0 - mu * mu);
  Eigen::MatrixXd x(n, p);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = rng.normal();
    for (int j = 1; j < p; ++j) x(i, j) = mu * x(i, j - 1) + innovation * rng.normal();
  }
  normalize_columns_inplace(x);
  return x;
}

GroundTruth generate_beta(int p, int k, double magnitude, CounterRng& rng) {
  return generate_beta_perturbed(p, k, magnitude, magnitude, rng);
}

GroundTruth generate_beta_perturbed(int p, int k, double base_magnitude, double perturbed_magnitude,
                                    CounterRng& rng) {
  if (p < 1) throw ConfigError("p must be >= 1");
  if (k < 0 || k > p) throw ConfigError("k must be in [0, p]");
  std::vector<int> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  for (int i = 0; i < k; ++i) {
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    const double magnitude = (i == 0) ? perturbed_magnitude : base_magnitude;
    beta[order[static_cast<std::size_t>(i)]] = sign * magnitude;
  }
  return make_ground_truth(std::move(beta), 0.0);
}

Eigen::VectorXd simulate_observations(const Eigen::MatrixXd& x, const Eigen::VectorXd& beta_star, double sigma,
                                      CounterRng& rng) {
  if (beta_star.size() != x.cols()) {
    throw DimensionMismatchError("beta has " + std::to_string(beta_star.size()) + " entries but X has " +
                                 std::to_string(x.cols()) + " columns");
  }
  if (sigma < 0) throw ConfigError("sigma must be >= 0");
  Eigen::VectorXd y = x * beta_star;
  if (sigma > 0) {
    for (int i = 0; i < y.size(); ++i) y[i] += sigma * rng.normal();
  }
  return y;
}

namespace {

std::vector<std::vector<double>> parse_csv(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);

  std::vector<std::vector<double>> cells;
  std::string line;
  int line_number = 0;
  int expected = -1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header && line_number == 1) continue;
    if (line.empty()) continue;

    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      std::string token = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      const auto first = token.find_first_not_of(" \t");
      const auto last = token.find_last_not_of(" \t");
      token = (first == std::string::npos) ? std::string() : token.substr(first, last - first + 1);

      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw NonNumericCellError(path, static_cast<int>(cells.size()) + 1, static_cast<int>(row.size()) + 1, token);
      }
      row.push_back(value);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }

    if (expected < 0) {
      expected = static_cast<int>(row.size());
    } else if (static_cast<int>(row.size()) != expected) {
      throw RaggedRowsError(path, line_number, static_cast<int>(row.size()), expected);
    }
    cells.push_back(std::move(row));
  }
  if (cells.empty()) throw DataError(path + ": no data rows");
  return cells;
}

}  // namespace

LoadedMatrix load_design_csv(const std::string& path, bool header) {
  const auto cells = parse_csv(path, header);
  LoadedMatrix out;
  out.n = static_cast<int>(cells.size());
  out.p = static_cast<int>(cells.front().size());
  out.x.resize(out.n, out.p);
  for (int i = 0; i < out.n; ++i) {
    for (int j = 0; j < out.p; ++j) out.x(i, j) = cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  out.scales = normalize_columns_inplace(out.x);
  return out;
}

Eigen::VectorXd load_vector_csv(const std::string& path, bool header) {
  const auto cells = parse_csv(path, header);
  if (cells.front().size() != 1) {
    throw DataError(path + ": expected a single column, found " + std::to_string(cells.front().size()));
  }
  Eigen::VectorXd v(static_cast<int>(cells.size()));
  for (std::size_t i = 0; i < cells.size(); ++i) v[static_cast<int>(i)] = cells[i][0];
  return v;
}

}  // namespace mug
