#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mug/core.hpp"
#include "mug/datagen.hpp"

using namespace mug;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& contents)
      : path((std::filesystem::temp_directory_path() / name).string()) {
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("datagen") {

TEST_CASE("independent designs are normalized and seed-deterministic") {
  CounterRng a(5), b(5), c(6);
  const Eigen::MatrixXd xa = generate_ind_design(30, 12, a);
  const Eigen::MatrixXd xb = generate_ind_design(30, 12, b);
  const Eigen::MatrixXd xc = generate_ind_design(30, 12, c);
  CHECK(xa.rows() == 30);
  CHECK(xa.cols() == 12);
  CHECK(satisfies_normalization(xa, 1e-10));
  CHECK(xa == xb);
  CHECK(xa != xc);
}

TEST_CASE("toeplitz design at mu = 0 consumes the stream exactly like ind") {
  CounterRng a(9), b(9);
  CHECK(generate_top_design(15, 7, 0.0, a) == generate_ind_design(15, 7, b));
}

TEST_CASE("toeplitz neighbor correlation approaches mu") {
  // mean empirical correlation of adjacent columns over 50 draws at n = 500
  const double mu = -0.4;
  double corr01 = 0.0, corr02 = 0.0;
  const int draws = 50, n = 500;
  CounterRng rng(13);
  for (int rep = 0; rep < draws; ++rep) {
    const Eigen::MatrixXd x = generate_top_design(n, 3, mu, rng);
    corr01 += x.col(0).dot(x.col(1)) / n;
    corr02 += x.col(0).dot(x.col(2)) / n;
  }
  corr01 /= draws;
  corr02 /= draws;
  CHECK(std::abs(corr01 - mu) < 0.05);
  // Sigma_13 = mu^2 = 0.16 two columns apart
  CHECK(std::abs(corr02 - 0.16) < 0.05);
}

TEST_CASE("toeplitz rejects |mu| >= 1") {
  CounterRng rng(1);
  CHECK_THROWS_AS(generate_top_design(5, 5, 1.0, rng), ConfigError);
}

TEST_CASE("sparse coefficients have the requested support size and magnitudes") {
  CounterRng rng(21);
  const GroundTruth t = generate_beta(50, 7, 0.5, rng);
  CHECK(t.k == 7);
  CHECK(t.support.size() == 7);
  CHECK(t.beta_min == 0.5);
  for (int j : t.support) CHECK(std::abs(t.beta_star[j]) == 0.5);

  bool saw_positive = false, saw_negative = false;
  CounterRng srng(22);
  for (int rep = 0; rep < 100; ++rep) {
    const GroundTruth draw = generate_beta(10, 3, 1.0, srng);
    for (int j : draw.support) {
      saw_positive |= draw.beta_star[j] > 0;
      saw_negative |= draw.beta_star[j] < 0;
    }
  }
  CHECK(saw_positive);
  CHECK(saw_negative);

  const GroundTruth empty = generate_beta(10, 0, 1.0, rng);
  CHECK(empty.k == 0);
  CHECK(empty.beta_star.cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(generate_beta(5, 6, 1.0, rng), ConfigError);
}

TEST_CASE("the perturbed variant changes exactly one entry") {
  CounterRng a(31), b(31);
  const GroundTruth base = generate_beta(40, 5, 2.0, a);
  const GroundTruth perturbed = generate_beta_perturbed(40, 5, 2.0, 0.3, b);
  CHECK(perturbed.support == base.support);
  int changed = 0;
  for (int j : base.support) {
    if (std::abs(perturbed.beta_star[j]) == 0.3) {
      ++changed;
      // the sign is kept
      CHECK(perturbed.beta_star[j] * base.beta_star[j] > 0);
    } else {
      CHECK(perturbed.beta_star[j] == base.beta_star[j]);
    }
  }
  CHECK(changed == 1);
  CHECK(perturbed.beta_min == 0.3);

  // a zero perturbation drops the entry from the support
  CounterRng c(31);
  const GroundTruth dropped = generate_beta_perturbed(40, 5, 2.0, 0.0, c);
  CHECK(dropped.k == 4);
  CHECK(dropped.support.subset_of(base.support));
}

TEST_CASE("observations: zero noise is exact, noise variance is calibrated") {
  CounterRng rng(41);
  const Eigen::MatrixXd x = generate_ind_design(12, 4, rng);
  const GroundTruth t = generate_beta(4, 2, 1.0, rng);
  CHECK(simulate_observations(x, t.beta_star, 0.0, rng) == x * t.beta_star);

  const double sigma = 0.5;
  const int big_n = 10000;
  const Eigen::MatrixXd wide = generate_ind_design(big_n, 2, rng);
  const GroundTruth wt = generate_beta(2, 1, 1.0, rng);
  const Eigen::VectorXd y = simulate_observations(wide, wt.beta_star, sigma, rng);
  const Eigen::VectorXd noise = y - wide * wt.beta_star;
  const double mean = noise.mean();
  const double var = (noise.array() - mean).square().sum() / (big_n - 1);
  CHECK(std::abs(var - sigma * sigma) < 0.05 * sigma * sigma);

  CHECK_THROWS_AS(simulate_observations(wide, Eigen::VectorXd::Zero(5), 0.1, rng), DimensionMismatchError);
}

TEST_CASE("csv loader: a 2x2 identity round-trips through the scale factors") {
  const TempFile file("mug_test_identity.csv", "1,0\n0,1\n");
  const LoadedMatrix loaded = load_design_csv(file.path);
  CHECK(loaded.n == 2);
  CHECK(loaded.p == 2);
  // normalization scales both columns by sqrt(2); undoing it restores I
  Eigen::MatrixXd raw = loaded.x;
  for (int j = 0; j < 2; ++j) raw.col(j) /= loaded.scales[j];
  CHECK(raw == Eigen::MatrixXd::Identity(2, 2));
  CHECK(satisfies_normalization(loaded.x, 1e-10));
}

TEST_CASE("csv loader reports ragged rows with their line number") {
  const TempFile file("mug_test_ragged.csv", "1,2,3\n4,5,6\n7,8\n");
  try {
    load_design_csv(file.path);
    FAIL("expected RaggedRowsError");
  } catch (const RaggedRowsError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("csv loader reports non-numeric cells with row and column") {
  const TempFile file("mug_test_nonnum.csv", "1,2\n3,oops\n");
  try {
    load_design_csv(file.path);
    FAIL("expected NonNumericCellError");
  } catch (const NonNumericCellError& e) {
    CHECK(e.row == 2);
    CHECK(e.column == 2);
  }
}

TEST_CASE("csv loader honors the header flag and rejects zero columns") {
  const TempFile with_header("mug_test_header.csv", "a,b\n1,0\n1,1\n");
  const LoadedMatrix loaded = load_design_csv(with_header.path, true);
  CHECK(loaded.n == 2);
  CHECK(loaded.p == 2);

  const TempFile zeros("mug_test_zero.csv", "1,0\n2,0\n");
  CHECK_THROWS_AS(load_design_csv(zeros.path), ZeroColumnError);
  CHECK_THROWS_AS(load_design_csv("/nonexistent/file.csv"), DataError);
}

TEST_CASE("a file of the gene-expression shape reports n=148, p=587") {
  std::string contents;
  contents.reserve(148 * 587 * 6);
  for (int i = 0; i < 148; ++i) {
    for (int j = 0; j < 587; ++j) {
      contents += std::to_string(((i * 31 + j * 17) % 19) - 9.25);
      contents += (j + 1 < 587) ? "," : "\n";
    }
  }
  const TempFile file("mug_test_rl.csv", contents);
  const LoadedMatrix loaded = load_design_csv(file.path);
  CHECK(loaded.n == 148);
  CHECK(loaded.p == 587);
  CHECK(satisfies_normalization(loaded.x, 1e-10));
}

TEST_CASE("vector loader accepts one value per line only") {
  const TempFile good("mug_test_vec.csv", "1.5\n-2\n0.25\n");
  const Eigen::VectorXd v = load_vector_csv(good.path);
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 1.5);
  CHECK(v[1] == -2.0);
  CHECK(v[2] == 0.25);

  const TempFile wide("mug_test_vec_wide.csv", "1,2\n3,4\n");
  CHECK_THROWS_AS(load_vector_csv(wide.path), DataError);
}

TEST_CASE("sim spec validation names bad fields") {
  SimSpec spec;
  spec.k = -1;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = SimSpec{};
  spec.sigma = -0.5;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = SimSpec{};
  spec.design = DesignKind::top;
  spec.mu = 1.0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = SimSpec{};
  spec.design = DesignKind::csv;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
}

}  // TEST_SUITE
