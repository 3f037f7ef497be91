#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hstm/hmatrix.hpp"
#include "hstm/ingest.hpp"

namespace hstm {

// Four-way address partition used for sensor focusing. The first three ranges
// are explicit prefix sets; "other" is the complement and is derived.
enum class Range : int { kNonroutable = 0, kBogon = 1, kAssigned = 2, kOther = 3 };
constexpr int kRangeCount = 4;
const char* range_name(Range r);

class RangePartition {
 public:
  // Shipped defaults for nonroutable and bogon; `assigned` is sensor-specific.
  static RangePartition with_defaults(RangeMask assigned);

  // Text config: one "name cidr" entry per line, names nonroutable/bogon/assigned.
  static RangePartition from_config_file(const std::string& path);
  static RangePartition from_config_text(const std::string& text);

  RangePartition(RangeMask nonroutable, RangeMask bogon, RangeMask assigned);

  Range classify(std::uint32_t addr) const;
  const RangeMask& mask(Range r) const;  // kOther returns an empty sentinel; use classify
  RangeMask other_mask() const;          // complement, materialized as prefixes

  // Fraction of the 2^32 space per range.
  std::array<double, kRangeCount> space_fractions() const;
  std::uint64_t address_count(Range r) const;

 private:
  RangeMask nonroutable_, bogon_, assigned_;
};

// 4x4 packet fractions indexed (source range, destination range).
struct FocusTable {
  std::array<std::array<double, kRangeCount>, kRangeCount> fraction{};
  std::uint64_t total_packets = 0;

  double sum() const;
};

// Observed distribution over range pairs for a set of window matrices.
// Throws parameter_error when the matrices hold no packets.
FocusTable focus_table(const std::vector<HypersparseMatrix>& matrices,
                       const RangePartition& part);
FocusTable focus_table_from_pairs(const std::vector<PacketRecord>& records,
                                  const RangePartition& part);

// Expected table under uniform random traffic: entry (a,b) = f_a * f_b.
FocusTable random_expectation(const RangePartition& part);

// Total-variation distance in [0,1]; 0 = indistinguishable from expected.
double focus_score(const FocusTable& observed, const FocusTable& expected);

// Byte order reversal of every address; an involution.
std::uint32_t byteswap_address(std::uint32_t addr);
std::vector<PacketRecord> byteswap_view(const std::vector<PacketRecord>& records);

std::string focus_table_csv(const FocusTable& t);
std::string focus_table_json(const FocusTable& t);

}  // namespace hstm
