#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hstm {

// A CIDR prefix a.b.c.d/len over the 32-bit IPv4 space.
struct Cidr {
  std::uint32_t base = 0;  // low address, host byte order
  int len = 0;             // prefix length, 0..32

  std::uint64_t size() const { return std::uint64_t{1} << (32 - len); }
  std::uint32_t low() const { return base; }
  std::uint32_t high() const { return static_cast<std::uint32_t>(base + size() - 1); }
  bool contains(std::uint32_t addr) const {
    return len == 0 || (addr >> (32 - len)) == (base >> (32 - len));
  }
  bool operator==(const Cidr&) const = default;
};

Cidr parse_cidr(const std::string& text);           // "10.0.0.0/8"
std::uint32_t parse_ipv4(const std::string& text);  // "10.0.0.1"
std::string format_cidr(const Cidr& c);
std::string format_ipv4(std::uint32_t addr);

// Disjoint set of CIDR prefixes with binary-search membership.
// Never materialized per-address; O(log #prefixes) lookups.
class RangeMask {
 public:
  RangeMask() = default;
  explicit RangeMask(std::vector<Cidr> prefixes);  // throws parameter_error on overlap

  static RangeMask full();   // 0.0.0.0/0
  static RangeMask empty();  // no prefixes

  bool contains(std::uint32_t addr) const;
  bool is_empty() const { return prefixes_.empty(); }
  bool is_full() const { return prefixes_.size() == 1 && prefixes_[0].len == 0; }

  // Total number of addresses covered.
  std::uint64_t address_count() const;

  const std::vector<Cidr>& prefixes() const { return prefixes_; }

 private:
  std::vector<Cidr> prefixes_;  // sorted by base, pairwise disjoint
};

}  // namespace hstm
