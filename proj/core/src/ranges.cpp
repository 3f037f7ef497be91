#include "hstm/ranges.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hstm/errors.hpp"

namespace hstm {

namespace {

RangeMask default_nonroutable() {
  return RangeMask({parse_cidr("10.0.0.0/8"), parse_cidr("172.16.0.0/12"),
                    parse_cidr("192.168.0.0/16")});
}

// Shipped bogon set: CGN space, benchmarking, link-local, and six /24
// special-purpose blocks (4,392,448 addresses total).
RangeMask default_bogon() {
  return RangeMask({parse_cidr("100.64.0.0/10"), parse_cidr("198.18.0.0/15"),
                    parse_cidr("169.254.0.0/16"), parse_cidr("192.0.0.0/24"),
                    parse_cidr("192.0.2.0/24"), parse_cidr("192.88.99.0/24"),
                    parse_cidr("198.51.100.0/24"), parse_cidr("203.0.113.0/24"),
                    parse_cidr("233.252.0.0/24")});
}

// Greedy decomposition of [lo, hi] into maximal aligned prefixes.
void interval_to_cidrs(std::uint64_t lo, std::uint64_t hi, std::vector<Cidr>& out) {
  while (lo <= hi) {
    int len = 32;
    std::uint64_t size = 1;
    while (len > 0) {
      std::uint64_t bigger = size * 2;
      if ((lo & (bigger - 1)) != 0 || lo + bigger - 1 > hi) break;
      size = bigger;
      --len;
    }
    out.push_back(Cidr{static_cast<std::uint32_t>(lo), len});
    lo += size;
  }
}

}  // namespace

const char* range_name(Range r) {
  switch (r) {
    case Range::kNonroutable: return "nonroutable";
    case Range::kBogon: return "bogon";
    case Range::kAssigned: return "assigned";
    case Range::kOther: return "other";
  }
  return "?";
}

RangePartition::RangePartition(RangeMask nonroutable, RangeMask bogon, RangeMask assigned)
    : nonroutable_(std::move(nonroutable)),
      bogon_(std::move(bogon)),
      assigned_(std::move(assigned)) {
  // Disjointness across the three explicit ranges.
  std::vector<Cidr> all;
  for (const auto* m : {&nonroutable_, &bogon_, &assigned_}) {
    for (const auto& p : m->prefixes()) all.push_back(p);
  }
  RangeMask check(all);  // throws on overlap
}

RangePartition RangePartition::with_defaults(RangeMask assigned) {
  return RangePartition(default_nonroutable(), default_bogon(), std::move(assigned));
}

RangePartition RangePartition::from_config_text(const std::string& text) {
  std::vector<Cidr> nonroutable, bogon, assigned;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name, cidr;
    if (!(ls >> name)) continue;
    if (!(ls >> cidr)) {
      throw format_error("range config line " + std::to_string(lineno) + ": missing CIDR");
    }
    Cidr c = parse_cidr(cidr);
    if (name == "nonroutable") {
      nonroutable.push_back(c);
    } else if (name == "bogon") {
      bogon.push_back(c);
    } else if (name == "assigned") {
      assigned.push_back(c);
    } else {
      throw format_error("range config line " + std::to_string(lineno) + ": unknown range '" +
                         name + "'");
    }
  }
  return RangePartition(RangeMask(nonroutable), RangeMask(bogon), RangeMask(assigned));
}

RangePartition RangePartition::from_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open range config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_config_text(buf.str());
}

Range RangePartition::classify(std::uint32_t addr) const {
  if (nonroutable_.contains(addr)) return Range::kNonroutable;
  if (bogon_.contains(addr)) return Range::kBogon;
  if (assigned_.contains(addr)) return Range::kAssigned;
  return Range::kOther;
}

const RangeMask& RangePartition::mask(Range r) const {
  static const RangeMask kEmpty;
  switch (r) {
    case Range::kNonroutable: return nonroutable_;
    case Range::kBogon: return bogon_;
    case Range::kAssigned: return assigned_;
    case Range::kOther: return kEmpty;
  }
  return kEmpty;
}

RangeMask RangePartition::other_mask() const {
  std::vector<Cidr> covered;
  for (const auto* m : {&nonroutable_, &bogon_, &assigned_}) {
    for (const auto& p : m->prefixes()) covered.push_back(p);
  }
  RangeMask merged(covered);  // sorts and checks disjointness

  std::vector<Cidr> gaps;
  std::uint64_t cursor = 0;
  for (const auto& p : merged.prefixes()) {
    if (p.low() > cursor) interval_to_cidrs(cursor, std::uint64_t{p.low()} - 1, gaps);
    cursor = std::uint64_t{p.high()} + 1;
  }
  if (cursor <= 0xFFFFFFFFull) interval_to_cidrs(cursor, 0xFFFFFFFFull, gaps);
  return RangeMask(std::move(gaps));
}

std::uint64_t RangePartition::address_count(Range r) const {
  if (r == Range::kOther) {
    return (std::uint64_t{1} << 32) - nonroutable_.address_count() - bogon_.address_count() -
           assigned_.address_count();
  }
  return mask(r).address_count();
}

std::array<double, kRangeCount> RangePartition::space_fractions() const {
  std::array<double, kRangeCount> f{};
  for (int r = 0; r < kRangeCount; ++r) {
    f[r] = static_cast<double>(address_count(static_cast<Range>(r))) /
           std::exp2(32);
  }
  return f;
}

double FocusTable::sum() const {
  double s = 0;
  for (const auto& row : fraction) {
    for (double v : row) s += v;
  }
  return s;
}

FocusTable focus_table(const std::vector<HypersparseMatrix>& matrices,
                       const RangePartition& part) {
  std::array<std::array<std::uint64_t, kRangeCount>, kRangeCount> counts{};
  std::uint64_t total = 0;
  for (const auto& m : matrices) {
    m.for_each([&](std::uint32_t src, std::uint32_t dst, std::uint64_t v) {
      counts[static_cast<int>(part.classify(src))][static_cast<int>(part.classify(dst))] += v;
      total += v;
    });
  }
  if (total == 0) throw parameter_error("focus table undefined: no packets");
  FocusTable t;
  t.total_packets = total;
  for (int a = 0; a < kRangeCount; ++a) {
    for (int b = 0; b < kRangeCount; ++b) {
      t.fraction[a][b] = static_cast<double>(counts[a][b]) / static_cast<double>(total);
    }
  }
  return t;
}

FocusTable focus_table_from_pairs(const std::vector<PacketRecord>& records,
                                  const RangePartition& part) {
  if (records.empty()) throw parameter_error("focus table undefined: no packets");
  std::array<std::array<std::uint64_t, kRangeCount>, kRangeCount> counts{};
  for (const auto& r : records) {
    counts[static_cast<int>(part.classify(r.src))][static_cast<int>(part.classify(r.dst))] += 1;
  }
  FocusTable t;
  t.total_packets = records.size();
  for (int a = 0; a < kRangeCount; ++a) {
    for (int b = 0; b < kRangeCount; ++b) {
      t.fraction[a][b] =
          static_cast<double>(counts[a][b]) / static_cast<double>(records.size());
    }
  }
  return t;
}

FocusTable random_expectation(const RangePartition& part) {
  auto f = part.space_fractions();
  FocusTable t;
  for (int a = 0; a < kRangeCount; ++a) {
    for (int b = 0; b < kRangeCount; ++b) t.fraction[a][b] = f[a] * f[b];
  }
  return t;
}

double focus_score(const FocusTable& observed, const FocusTable& expected) {
  if (std::abs(observed.sum() - 1.0) > 1e-9 || std::abs(expected.sum() - 1.0) > 1e-9) {
    throw parameter_error("focus_score requires normalized tables");
  }
  double tv = 0;
  for (int a = 0; a < kRangeCount; ++a) {
    for (int b = 0; b < kRangeCount; ++b) {
      tv += std::abs(observed.fraction[a][b] - expected.fraction[a][b]);
    }
  }
  return tv / 2.0;
}

std::uint32_t byteswap_address(std::uint32_t addr) {
  return (addr >> 24) | ((addr >> 8) & 0xFF00) | ((addr & 0xFF00) << 8) | (addr << 24);
}

std::vector<PacketRecord> byteswap_view(const std::vector<PacketRecord>& records) {
  std::vector<PacketRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    out.push_back(PacketRecord{byteswap_address(r.src), byteswap_address(r.dst), r.ts_us});
  }
  return out;
}

std::string focus_table_csv(const FocusTable& t) {
  std::ostringstream out;
  out << "src_range";
  for (int b = 0; b < kRangeCount; ++b) out << "," << range_name(static_cast<Range>(b));
  out << "\n";
  out.precision(12);
  for (int a = 0; a < kRangeCount; ++a) {
    out << range_name(static_cast<Range>(a));
    for (int b = 0; b < kRangeCount; ++b) out << "," << t.fraction[a][b];
    out << "\n";
  }
  return out.str();
}

std::string focus_table_json(const FocusTable& t) {
  std::ostringstream out;
  out.precision(12);
  out << "{\"total_packets\":" << t.total_packets << ",\"fractions\":{";
  for (int a = 0; a < kRangeCount; ++a) {
    out << (a ? "," : "") << "\"" << range_name(static_cast<Range>(a)) << "\":{";
    for (int b = 0; b < kRangeCount; ++b) {
      out << (b ? "," : "") << "\"" << range_name(static_cast<Range>(b))
          << "\":" << t.fraction[a][b];
    }
    out << "}";
  }
  out << "}}";
  return out.str();
}

}  // namespace hstm
