#include "hstm/anon.hpp"

// The low-level AES API is deprecated in OpenSSL 3 but is the right tool
// here: a const key schedule shared across threads, one block at a time.
#define OPENSSL_SUPPRESS_DEPRECATED
#include <openssl/aes.h>

#include <cstdlib>
#include <cstring>
#include <fstream>

#include "hstm/errors.hpp"

namespace hstm {

AnonKey AnonKey::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open key file " + path);
  AnonKey key;
  in.read(reinterpret_cast<char*>(key.bytes.data()), key.bytes.size());
  if (in.gcount() != static_cast<std::streamsize>(key.bytes.size())) {
    throw format_error("key file must hold exactly 32 bytes: " + path);
  }
  return key;
}

AnonKey AnonKey::from_env(const std::string& var) {
  const char* path = std::getenv(var.c_str());
  if (!path || !*path) throw parameter_error("environment variable " + var + " is not set");
  return from_file(path);
}

struct CryptoPan::Impl {
  AES_KEY schedule;
  std::array<std::uint8_t, 16> pad{};
  std::uint32_t pad32 = 0;
};

CryptoPan::CryptoPan(const AnonKey& key) : impl_(std::make_unique<Impl>()) {
  if (AES_set_encrypt_key(key.bytes.data(), 128, &impl_->schedule) != 0) {
    throw std::runtime_error("AES key schedule failed");
  }
  // Second half of the secret is encrypted once to form the padding block.
  AES_encrypt(key.bytes.data() + 16, impl_->pad.data(), &impl_->schedule);
  impl_->pad32 = std::uint32_t{impl_->pad[0]} << 24 | std::uint32_t{impl_->pad[1]} << 16 |
                 std::uint32_t{impl_->pad[2]} << 8 | impl_->pad[3];
}

CryptoPan::~CryptoPan() = default;
CryptoPan::CryptoPan(CryptoPan&&) noexcept = default;
CryptoPan& CryptoPan::operator=(CryptoPan&&) noexcept = default;

std::uint32_t CryptoPan::anonymize(std::uint32_t addr) const {
  std::uint8_t block[16];
  std::uint8_t out[16];
  std::memcpy(block, impl_->pad.data(), 16);

  // One PRF bit per prefix length: the first pos bits of the address are
  // combined with the padding block and the cipher's top output bit becomes
  // the flip bit for position pos.
  std::uint32_t flips = 0;
  for (int pos = 0; pos < 32; ++pos) {
    std::uint32_t input;
    if (pos == 0) {
      input = impl_->pad32;
    } else {
      std::uint32_t keep = (addr >> (32 - pos)) << (32 - pos);
      input = keep | ((impl_->pad32 << pos) >> pos);
    }
    block[0] = input >> 24;
    block[1] = (input >> 16) & 0xFF;
    block[2] = (input >> 8) & 0xFF;
    block[3] = input & 0xFF;
    AES_encrypt(block, out, &impl_->schedule);
    flips |= static_cast<std::uint32_t>(out[0] >> 7) << (31 - pos);
  }
  return addr ^ flips;
}

Cidr CryptoPan::anonymize_prefix(const Cidr& prefix) const {
  if (prefix.len < 0 || prefix.len > 32) throw parameter_error("bad prefix length");
  if (prefix.len == 0) return prefix;
  std::uint32_t image = anonymize(prefix.base);
  std::uint32_t mask = ~std::uint32_t{0} << (32 - prefix.len);
  return Cidr{image & mask, prefix.len};
}

RangeMask CryptoPan::anonymize_mask(const RangeMask& mask) const {
  std::vector<Cidr> out;
  out.reserve(mask.prefixes().size());
  for (const auto& p : mask.prefixes()) out.push_back(anonymize_prefix(p));
  return RangeMask(std::move(out));
}

AnonTable AnonTable::build(const CryptoPan& pan, const std::vector<std::uint32_t>& addrs) {
  AnonTable t;
  t.map_.reserve(addrs.size());
  for (std::uint32_t a : addrs) t.map_.emplace(a, pan.anonymize(a));
  return t;
}

std::uint32_t AnonTable::lookup(std::uint32_t addr) const {
  auto it = map_.find(addr);
  if (it == map_.end()) throw parameter_error("address not in anonymization table");
  return it->second;
}

}  // namespace hstm
