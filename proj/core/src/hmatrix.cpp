#include "hstm/hmatrix.hpp"

#include <algorithm>
#include <limits>

#include "hstm/errors.hpp"

namespace hstm {

HypersparseMatrix HypersparseMatrix::from_pairs(std::span<const AddrPair> pairs) {
  HypersparseMatrix m;
  m.packet_total_ = pairs.size();
  if (pairs.empty()) return m;
  std::vector<AddrPair> sorted(pairs.begin(), pairs.end());
  std::sort(sorted.begin(), sorted.end());

  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    auto [src, dst] = sorted[i];
    if (m.row_ids_.empty() || m.row_ids_.back() != src) {
      m.row_ids_.push_back(src);
      m.row_offsets_.push_back(m.col_ids_.size());
    }
    m.col_ids_.push_back(dst);
    m.values_.push_back(j - i);
    i = j;
  }
  m.row_offsets_.push_back(m.col_ids_.size());
  return m;
}

HypersparseMatrix HypersparseMatrix::add(const HypersparseMatrix& a,
                                         const HypersparseMatrix& b) {
  HypersparseMatrix m;
  m.packet_total_ = a.packet_total_ + b.packet_total_;
  m.window_index = std::min(a.window_index, b.window_index);
  m.anonymized = a.anonymized || b.anonymized;
  m.partial_window = a.partial_window || b.partial_window;

  std::size_t ra = 0, rb = 0;
  while (ra < a.row_ids_.size() || rb < b.row_ids_.size()) {
    bool take_a = rb >= b.row_ids_.size() ||
                  (ra < a.row_ids_.size() && a.row_ids_[ra] <= b.row_ids_[rb]);
    bool take_b = ra >= a.row_ids_.size() ||
                  (rb < b.row_ids_.size() && b.row_ids_[rb] <= a.row_ids_[ra]);
    std::uint32_t row = take_a ? a.row_ids_[ra] : b.row_ids_[rb];
    m.row_ids_.push_back(row);
    m.row_offsets_.push_back(m.col_ids_.size());

    std::uint64_t ka = take_a ? a.row_offsets_[ra] : 0;
    std::uint64_t ea = take_a ? a.row_offsets_[ra + 1] : 0;
    std::uint64_t kb = take_b ? b.row_offsets_[rb] : 0;
    std::uint64_t eb = take_b ? b.row_offsets_[rb + 1] : 0;
    while (ka < ea || kb < eb) {
      if (kb >= eb || (ka < ea && a.col_ids_[ka] < b.col_ids_[kb])) {
        m.col_ids_.push_back(a.col_ids_[ka]);
        m.values_.push_back(a.values_[ka]);
        ++ka;
      } else if (ka >= ea || b.col_ids_[kb] < a.col_ids_[ka]) {
        m.col_ids_.push_back(b.col_ids_[kb]);
        m.values_.push_back(b.values_[kb]);
        ++kb;
      } else {
        std::uint64_t va = a.values_[ka], vb = b.values_[kb];
        if (va > std::numeric_limits<std::uint64_t>::max() - vb) {
          throw std::overflow_error("packet count overflow in matrix add");
        }
        m.col_ids_.push_back(a.col_ids_[ka]);
        m.values_.push_back(va + vb);
        ++ka;
        ++kb;
      }
    }
    if (take_a) ++ra;
    if (take_b) ++rb;
  }
  m.row_offsets_.push_back(m.col_ids_.size());
  if (m.row_ids_.empty()) m.row_offsets_.clear();
  return m;
}

HypersparseMatrix HypersparseMatrix::extract_subrange(const RangeMask& rows,
                                                      const RangeMask& cols) const {
  HypersparseMatrix m;
  m.window_index = window_index;
  m.anonymized = anonymized;
  m.partial_window = partial_window;
  for (std::size_t r = 0; r < row_ids_.size(); ++r) {
    if (!rows.contains(row_ids_[r])) continue;
    bool row_open = false;
    for (std::uint64_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      if (!cols.contains(col_ids_[k])) continue;
      if (!row_open) {
        m.row_ids_.push_back(row_ids_[r]);
        m.row_offsets_.push_back(m.col_ids_.size());
        row_open = true;
      }
      m.col_ids_.push_back(col_ids_[k]);
      m.values_.push_back(values_[k]);
      m.packet_total_ += values_[k];
    }
  }
  if (!m.row_ids_.empty()) m.row_offsets_.push_back(m.col_ids_.size());
  return m;
}

HypersparseMatrix HypersparseMatrix::exclude_subrange(const RangeMask& mask) const {
  HypersparseMatrix m;
  m.window_index = window_index;
  m.anonymized = anonymized;
  m.partial_window = partial_window;
  for (std::size_t r = 0; r < row_ids_.size(); ++r) {
    bool row_in_mask = mask.contains(row_ids_[r]);
    bool row_open = false;
    for (std::uint64_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      if (row_in_mask && mask.contains(col_ids_[k])) continue;
      if (!row_open) {
        m.row_ids_.push_back(row_ids_[r]);
        m.row_offsets_.push_back(m.col_ids_.size());
        row_open = true;
      }
      m.col_ids_.push_back(col_ids_[k]);
      m.values_.push_back(values_[k]);
      m.packet_total_ += values_[k];
    }
  }
  if (!m.row_ids_.empty()) m.row_offsets_.push_back(m.col_ids_.size());
  return m;
}

std::uint64_t HypersparseMatrix::value(std::uint32_t row, std::uint32_t col) const {
  auto rit = std::lower_bound(row_ids_.begin(), row_ids_.end(), row);
  if (rit == row_ids_.end() || *rit != row) return 0;
  std::size_t r = rit - row_ids_.begin();
  auto first = col_ids_.begin() + row_offsets_[r];
  auto last = col_ids_.begin() + row_offsets_[r + 1];
  auto cit = std::lower_bound(first, last, col);
  if (cit == last || *cit != col) return 0;
  return values_[cit - col_ids_.begin()];
}

HypersparseMatrix HypersparseMatrix::from_dcsr(std::vector<std::uint32_t> row_ids,
                                               std::vector<std::uint64_t> row_offsets,
                                               std::vector<std::uint32_t> col_ids,
                                               std::vector<std::uint64_t> values,
                                               std::uint64_t packet_total) {
  if (col_ids.size() != values.size() ||
      (!row_ids.empty() && row_offsets.size() != row_ids.size() + 1) ||
      (row_ids.empty() && !row_offsets.empty())) {
    throw format_error("inconsistent DCSR array lengths");
  }
  if (!row_offsets.empty() &&
      (row_offsets.front() != 0 || row_offsets.back() != col_ids.size())) {
    throw format_error("bad DCSR row offsets");
  }
  for (std::size_t r = 0; r < row_ids.size(); ++r) {
    if (r > 0 && row_ids[r] <= row_ids[r - 1]) throw format_error("rows not increasing");
    if (row_offsets[r] > row_offsets[r + 1]) throw format_error("offsets not monotone");
    for (std::uint64_t k = row_offsets[r]; k < row_offsets[r + 1]; ++k) {
      if (k > row_offsets[r] && col_ids[k] <= col_ids[k - 1]) {
        throw format_error("columns not increasing");
      }
      if (values[k] == 0) throw format_error("explicit zero value");
    }
  }
  HypersparseMatrix m;
  m.row_ids_ = std::move(row_ids);
  m.row_offsets_ = std::move(row_offsets);
  m.col_ids_ = std::move(col_ids);
  m.values_ = std::move(values);
  m.packet_total_ = packet_total;
  return m;
}

}  // namespace hstm
