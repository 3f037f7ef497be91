#pragma once

#include <cstdint>
#include <vector>

#include "hstm/hmatrix.hpp"

namespace hstm {

struct HierarchyLevel {
  int level = 0;  // 0 = leaves
  std::vector<HypersparseMatrix> matrices;
  std::uint64_t window_packets = 0;  // N_V * 2^level for full windows
  bool dropped_tail = false;         // odd matrix left out of the next level
};

// Binary multi-temporal aggregation: level L matrix k is the cellwise sum of
// level L-1 matrices 2k and 2k+1 (fixed left-to-right pairing; odd tails are
// dropped from parents and flagged). Sums within a level run in parallel when
// threads > 1; the result is identical either way.
std::vector<HierarchyLevel> aggregate_hierarchy(std::vector<HypersparseMatrix> leaves,
                                                int max_level, unsigned threads = 1);

}  // namespace hstm
