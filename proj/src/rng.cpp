#include "mug/rng.hpp"

#include <cmath>
#include <numbers>

namespace mug {

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

std::uint64_t CounterRng::next_u64() { return mix64(key_ + kGolden * ++counter_); }

double CounterRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] keeps the log finite
  const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

int CounterRng::uniform_int(int n) {
  assert(n >= 1);
  const auto bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t draw;
  do {
    draw = next_u64();
  } while (draw >= limit);
  return static_cast<int>(draw % bound);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t iteration) {
  std::uint64_t key = mix64(master_seed + kGolden);
  key = mix64(key ^ (trial + 0xd1b54a32d192ed03ULL));
  key = mix64(key ^ (iteration + 0x8cb92ba72f3d8dd7ULL));
  return key;
}

CounterRng derive_trial_rng(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t iteration) {
  return CounterRng(derive_seed(master_seed, trial, iteration));
}

}  // namespace mug
