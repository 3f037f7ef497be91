#include "hstm/hierarchy.hpp"

#include <future>

#include "hstm/errors.hpp"

namespace hstm {

std::vector<HierarchyLevel> aggregate_hierarchy(std::vector<HypersparseMatrix> leaves,
                                                int max_level, unsigned threads) {
  std::vector<HierarchyLevel> out;
  if (leaves.empty()) return out;
  if (max_level < 0) throw parameter_error("max_level must be >= 0");

  std::uint64_t leaf_packets = leaves.front().packet_total();

  HierarchyLevel level0;
  level0.level = 0;
  level0.window_packets = leaf_packets;
  level0.matrices = std::move(leaves);
  out.push_back(std::move(level0));

  for (int lvl = 1; lvl <= max_level; ++lvl) {
    const auto& prev = out.back().matrices;
    std::size_t pairs = prev.size() / 2;
    if (pairs == 0) break;
    out.back().dropped_tail = (prev.size() % 2) != 0;

    HierarchyLevel next;
    next.level = lvl;
    next.window_packets = out.back().window_packets * 2;
    next.matrices.resize(pairs);

    if (threads > 1 && pairs > 1) {
      std::vector<std::future<void>> jobs;
      std::size_t chunk = (pairs + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        std::size_t lo = t * chunk, hi = std::min(pairs, lo + chunk);
        if (lo >= hi) break;
        jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
          for (std::size_t k = lo; k < hi; ++k) {
            next.matrices[k] = HypersparseMatrix::add(prev[2 * k], prev[2 * k + 1]);
          }
        }));
      }
      for (auto& j : jobs) j.get();
    } else {
      for (std::size_t k = 0; k < pairs; ++k) {
        next.matrices[k] = HypersparseMatrix::add(prev[2 * k], prev[2 * k + 1]);
      }
    }
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace hstm
