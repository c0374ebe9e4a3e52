#include "mug/grouping.hpp"

#include <algorithm>

namespace mug {

namespace {

void check_args(int p, int m_max) {
  if (p < 1) throw ConfigError("grouping requires p >= 1");
  if (m_max < 1) throw ConfigError("grouping requires m_max >= 1");
}

// consecutive blocks of size <= m_max
void cut_blocks(const std::vector<int>& order, int m_max, Grouping& g) {
  for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(m_max)) {
    const std::size_t stop = std::min(order.size(), start + static_cast<std::size_t>(m_max));
    g.groups.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                          order.begin() + static_cast<std::ptrdiff_t>(stop));
  }
}

}  // namespace

Grouping random_grouping(int p, int m_max, CounterRng& rng) {
  check_args(p, m_max);
  std::vector<int> order(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) order[static_cast<std::size_t>(j)] = j;
  rng.shuffle(order);
  Grouping g;
  g.p = p;
  g.m_max = m_max;
  cut_blocks(order, m_max, g);
  return g;
}

Grouping adaptive_grouping(int p, int m_max, const SupportSet& current_estimate, CounterRng& rng) {
  check_args(p, m_max);
  for (int j : current_estimate) {
    if (j >= p) throw DataError("estimate index " + std::to_string(j + 1) + " outside 1.." + std::to_string(p));
  }

  std::vector<int> kept(current_estimate.begin(), current_estimate.end());
  std::vector<int> complement;
  complement.reserve(static_cast<std::size_t>(p) - kept.size());
  for (int j = 0; j < p; ++j) {
    if (!current_estimate.contains(j)) complement.push_back(j);
  }
  rng.shuffle(kept);
  rng.shuffle(complement);

  Grouping g;
  g.p = p;
  g.m_max = m_max;

  std::size_t next = 0;  // cursor into the shuffled complement
  for (int s : kept) {
    std::vector<int> group{s};
    while (static_cast<int>(group.size()) < m_max && next < complement.size()) {
      group.push_back(complement[next++]);
    }
    g.groups.push_back(std::move(group));
  }
  const std::vector<int> rest(complement.begin() + static_cast<std::ptrdiff_t>(next), complement.end());
  cut_blocks(rest, m_max, g);
  return g;
}

}  // namespace mug
