#pragma once

#include <cstdint>
#include <string>

#include "mug/rng.hpp"
#include "mug/types.hpp"

namespace mug {

enum class DesignKind { ind, top, csv };

struct SimSpec {
  DesignKind design = DesignKind::ind;
  int p = 1000;
  int n = 100;
  int k = 10;
  double beta_min_magnitude = 0.5;
  double sigma = 0.5;
  double mu = -0.4;  // Toeplitz parameter, Sigma_ij = mu^|i-j|
  std::uint64_t seed = 0;
  std::string csv_path;
  bool header = false;

  void validate() const;
};

// n-by-p matrix of independent standard normals, column-normalized.
Eigen::MatrixXd generate_ind_design(int n, int p, CounterRng& rng);

// Rows i.i.d. N(0, Sigma) with Sigma_ij = mu^|i-j|, sampled through the AR(1)
// recursion x_1 = z_1, x_j = mu x_{j-1} + sqrt(1 - mu^2) z_j, which is exact
// for this kernel; column-normalized afterwards.
Eigen::MatrixXd generate_top_design(int n, int p, double mu, CounterRng& rng);

// Support drawn uniformly without replacement; nonzero entries all have the
// given magnitude with independent random signs.
GroundTruth generate_beta(int p, int k, double magnitude, CounterRng& rng);

// Same, but one support entry (randomly chosen) is set to perturbed_magnitude
// instead; a zero perturbation removes it from the support.
GroundTruth generate_beta_perturbed(int p, int k, double base_magnitude, double perturbed_magnitude, CounterRng& rng);

// y = X beta + w with w ~ N(0, sigma^2 I).
Eigen::VectorXd simulate_observations(const Eigen::MatrixXd& x, const Eigen::VectorXd& beta_star, double sigma,
                                      CounterRng& rng);

struct LoadedMatrix {
  Eigen::MatrixXd x;       // column-normalized
  Eigen::VectorXd scales;  // map fitted coefficients back to the raw matrix
  int n = 0;
  int p = 0;
};

// Rectangular numeric CSV, rows = observations. Errors carry 1-based row,
// column, and line locations.
LoadedMatrix load_design_csv(const std::string& path, bool header = false);

// One numeric value per line (or a single-column CSV).
Eigen::VectorXd load_vector_csv(const std::string& path, bool header = false);

}  // namespace mug
