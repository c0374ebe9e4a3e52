#pragma once

#include <cstdint>

#include "mug/rng.hpp"
#include "mug/types.hpp"

namespace mug {

enum class GroupingKind { random, adaptive };

struct GroupingStrategy {
  GroupingKind kind = GroupingKind::random;
  int m_max = 2;
  std::uint64_t seed = 0;
};

// Uniform shuffle of {0..p-1} cut into consecutive blocks of size m_max; the
// final block may be smaller.
Grouping random_grouping(int p, int m_max, CounterRng& rng);

// Each group holds at most one element of `current_estimate`, padded with up
// to m_max-1 elements drawn from its complement; once the estimate is
// exhausted the remaining complement is grouped in blocks of size <= m_max.
// When the complement runs out first, leftover estimate elements become
// singletons so that no group ever holds two estimate elements.
Grouping adaptive_grouping(int p, int m_max, const SupportSet& current_estimate, CounterRng& rng);

}  // namespace mug
