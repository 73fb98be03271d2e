#pragma once

#include <vector>

#include "pellab/pfrac.hpp"

namespace pellab {

/// One period of an s-periodic generalized Jacobi matrix, read cyclically.
struct PeriodData {
  std::vector<PStep> blocks;

  std::size_t size() const { return blocks.size(); }
  const PStep& operator[](std::size_t j) const { return blocks[j % blocks.size()]; }

  friend bool operator==(const PeriodData& a, const PeriodData& b) { return a.blocks == b.blocks; }
};

inline void validate(const PeriodData& period) {
  if (period.blocks.empty()) fail(ErrorKind::InvalidInput, "period needs at least one block");
  for (const auto& b : period.blocks) validate(b);
}

/// Shortest period whose repetition gives the same block sequence.
inline PeriodData minimal_period(const PeriodData& period) {
  const std::size_t s = period.size();
  for (std::size_t d = 1; d <= s; ++d) {
    if (s % d) continue;
    bool ok = true;
    for (std::size_t j = d; j < s && ok; ++j) ok = period.blocks[j] == period.blocks[j - d];
    if (ok) return PeriodData{{period.blocks.begin(), period.blocks.begin() + static_cast<std::ptrdiff_t>(d)}};
  }
  return period;
}

inline int total_degree(const PeriodData& period) {
  int k = 0;
  for (const auto& b : period.blocks) k += b.p.degree();
  return k;
}

}  // namespace pellab
