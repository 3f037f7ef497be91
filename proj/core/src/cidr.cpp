#include "hstm/cidr.hpp"

#include <algorithm>
#include <cstdio>

#include "hstm/errors.hpp"

namespace hstm {

std::uint32_t parse_ipv4(const std::string& text) {
  unsigned a, b, c, d;
  char tail;
  if (std::sscanf(text.c_str(), "%u.%u.%u.%u%c", &a, &b, &c, &d, &tail) != 4 ||
      a > 255 || b > 255 || c > 255 || d > 255) {
    throw parameter_error("bad IPv4 address: " + text);
  }
  return (a << 24) | (b << 16) | (c << 8) | d;
}

Cidr parse_cidr(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) throw parameter_error("bad CIDR (missing /): " + text);
  int len = 0;
  try {
    len = std::stoi(text.substr(slash + 1));
  } catch (const std::exception&) {
    throw parameter_error("bad CIDR length: " + text);
  }
  if (len < 0 || len > 32) throw parameter_error("CIDR length out of range: " + text);
  std::uint32_t base = parse_ipv4(text.substr(0, slash));
  if (len < 32) {
    std::uint32_t mask = len == 0 ? 0 : ~std::uint32_t{0} << (32 - len);
    base &= mask;
  }
  return Cidr{base, len};
}

std::string format_ipv4(std::uint32_t addr) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%u.%u.%u.%u", addr >> 24, (addr >> 16) & 0xFF,
                (addr >> 8) & 0xFF, addr & 0xFF);
  return buf;
}

std::string format_cidr(const Cidr& c) {
  return format_ipv4(c.base) + "/" + std::to_string(c.len);
}

RangeMask::RangeMask(std::vector<Cidr> prefixes) : prefixes_(std::move(prefixes)) {
  std::sort(prefixes_.begin(), prefixes_.end(),
            [](const Cidr& a, const Cidr& b) { return a.base < b.base; });
  for (std::size_t i = 1; i < prefixes_.size(); ++i) {
    if (prefixes_[i].low() <= prefixes_[i - 1].high()) {
      throw parameter_error("overlapping prefixes in mask: " + format_cidr(prefixes_[i - 1]) +
                            " and " + format_cidr(prefixes_[i]));
    }
  }
}

RangeMask RangeMask::full() { return RangeMask({Cidr{0, 0}}); }

RangeMask RangeMask::empty() { return RangeMask(); }

bool RangeMask::contains(std::uint32_t addr) const {
  // Last prefix with low() <= addr, if any.
  auto it = std::upper_bound(prefixes_.begin(), prefixes_.end(), addr,
                             [](std::uint32_t a, const Cidr& c) { return a < c.low(); });
  if (it == prefixes_.begin()) return false;
  return std::prev(it)->contains(addr);
}

std::uint64_t RangeMask::address_count() const {
  std::uint64_t n = 0;
  for (const auto& p : prefixes_) n += p.size();
  return n;
}

}  // namespace hstm
