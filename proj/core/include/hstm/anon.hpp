#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "hstm/cidr.hpp"

namespace hstm {

// 256-bit anonymization secret: 128-bit cipher key + 128-bit padding block.
// Never serialized into archives or analysis outputs.
struct AnonKey {
  std::array<std::uint8_t, 32> bytes{};

  static AnonKey from_file(const std::string& path);
  // Reads the key file named by the environment variable.
  static AnonKey from_env(const std::string& var);
};

// Prefix-preserving address anonymizer (Fan et al. construction, AES-128 as
// the pseudorandom function). Bijective on the 32-bit space; for any two
// addresses the output longest-common-prefix length equals the input one.
class CryptoPan {
 public:
  explicit CryptoPan(const AnonKey& key);
  ~CryptoPan();
  CryptoPan(CryptoPan&&) noexcept;
  CryptoPan& operator=(CryptoPan&&) noexcept;

  std::uint32_t anonymize(std::uint32_t addr) const;  // pure, thread-safe

  // The unique /k prefix containing the images of every address in `prefix`.
  Cidr anonymize_prefix(const Cidr& prefix) const;
  RangeMask anonymize_mask(const RangeMask& mask) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Precomputed address -> anonymized address map; observably identical to
// direct mode over its domain.
class AnonTable {
 public:
  AnonTable() = default;
  static AnonTable build(const CryptoPan& pan, const std::vector<std::uint32_t>& addrs);

  std::uint32_t lookup(std::uint32_t addr) const;  // throws parameter_error if absent
  bool contains(std::uint32_t addr) const { return map_.count(addr) != 0; }
  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_map<std::uint32_t, std::uint32_t> map_;
};

}  // namespace hstm
