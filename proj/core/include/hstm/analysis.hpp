#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hstm {

// One record of the consolidated analysis file. CSV columns:
//   window_nv, window_index, src_range, dst_range, quantity, value
// A ".zst" suffix on the path selects the compressed machine format
// (zstd-compressed CSV with identical rows).
struct AnalysisRow {
  std::uint64_t window_nv = 0;
  std::uint64_t window_index = 0;
  std::string src_range;  // range name or "all"
  std::string dst_range;
  std::string quantity;
  double value = 0;

  bool operator==(const AnalysisRow&) const = default;
};

void write_analysis(const std::vector<AnalysisRow>& rows, const std::string& path);
std::vector<AnalysisRow> read_analysis(const std::string& path);

}  // namespace hstm
