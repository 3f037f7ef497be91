#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hstm/cidr.hpp"

namespace hstm {

using AddrPair = std::pair<std::uint32_t, std::uint32_t>;  // (src, dst)

// Traffic matrix over the full 2^32 x 2^32 address space in doubly-compressed
// sparse rows: only nonempty rows are stored, so memory is O(nnz) even though
// the logical dimension is 4.2 billion.
class HypersparseMatrix {
 public:
  HypersparseMatrix() = default;

  // Counts multiplicities of (src, dst) pairs. packet_total = pairs.size().
  static HypersparseMatrix from_pairs(std::span<const AddrPair> pairs);

  // Cellwise sum. Throws arithmetic error on u64 overflow.
  static HypersparseMatrix add(const HypersparseMatrix& a, const HypersparseMatrix& b);

  // Keeps cells with row in `rows` and col in `cols` (A_r A_t A_c semantics,
  // masks evaluated lazily).
  HypersparseMatrix extract_subrange(const RangeMask& rows, const RangeMask& cols) const;

  // Removes cells with BOTH endpoints in `mask` (A_t - A_r A_t A_r).
  HypersparseMatrix exclude_subrange(const RangeMask& mask) const;

  std::uint64_t value(std::uint32_t row, std::uint32_t col) const;  // 0 if absent
  std::uint64_t nnz() const { return col_ids_.size(); }
  std::uint64_t row_count() const { return row_ids_.size(); }
  std::uint64_t packet_total() const { return packet_total_; }
  bool is_empty() const { return col_ids_.empty(); }

  // DCSR internals, exposed read-only for traversal and serialization.
  const std::vector<std::uint32_t>& row_ids() const { return row_ids_; }
  const std::vector<std::uint64_t>& row_offsets() const { return row_offsets_; }
  const std::vector<std::uint32_t>& col_ids() const { return col_ids_; }
  const std::vector<std::uint64_t>& values() const { return values_; }

  // Visits cells in row-major order.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t r = 0; r < row_ids_.size(); ++r) {
      for (std::uint64_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
        f(row_ids_[r], col_ids_[k], values_[k]);
      }
    }
  }

  bool operator==(const HypersparseMatrix& o) const {
    return row_ids_ == o.row_ids_ && row_offsets_ == o.row_offsets_ &&
           col_ids_ == o.col_ids_ && values_ == o.values_;
  }

  // Builds directly from validated DCSR arrays (deserialization path).
  static HypersparseMatrix from_dcsr(std::vector<std::uint32_t> row_ids,
                                     std::vector<std::uint64_t> row_offsets,
                                     std::vector<std::uint32_t> col_ids,
                                     std::vector<std::uint64_t> values,
                                     std::uint64_t packet_total);

  // Window bookkeeping carried through serialization.
  std::uint64_t window_index = 0;
  bool anonymized = false;
  bool partial_window = false;

 private:
  std::vector<std::uint32_t> row_ids_;      // sorted, strictly increasing
  std::vector<std::uint64_t> row_offsets_;  // size row_ids_.size()+1
  std::vector<std::uint32_t> col_ids_;      // strictly increasing within a row
  std::vector<std::uint64_t> values_;       // all >= 1
  std::uint64_t packet_total_ = 0;
};

}  // namespace hstm
