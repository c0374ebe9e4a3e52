#pragma once

#include <cassert>
#include <cstdint>
#include <utility>
#include <vector>

namespace mug {

// Counter-mode generator: every output is a hash of (key, counter), so a key
// fully determines the stream regardless of platform or thread schedule.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64();

  // [0, 1)
  double uniform();

  // standard normal (Box-Muller; the pair's second value is cached)
  double normal();

  // uniform over {0, ..., n-1}, unbiased via rejection
  int uniform_int(int n);

  // Fisher-Yates
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[i], v[static_cast<std::size_t>(uniform_int(i + 1))]);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Collision-resistant key for the stream identified by (master_seed, trial,
// iteration). Distinct triples give unrelated streams.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t iteration);

CounterRng derive_trial_rng(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t iteration);

}  // namespace mug
