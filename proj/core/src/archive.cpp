#include "hstm/archive.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <future>

#include "hstm/errors.hpp"
#include "hstm/tar.hpp"
#include "zstd_shim.h"

namespace hstm {

namespace {

constexpr char kMagic[4] = {'H', 'S', 'T', 'M'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint16_t kFlagAnonymized = 1 << 0;
constexpr std::uint16_t kFlagPartial = 1 << 1;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(v & 0xFF);
  out.push_back(v >> 8);
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::uint16_t u16() { return static_cast<std::uint16_t>(u(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(u(4)); }
  std::uint64_t u64() { return u(8); }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::uint64_t u(int n) {
    if (pos_ + n > bytes_.size()) throw format_error("blob truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
    pos_ += n;
    return v;
  }
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

const char* codec_suffix(Codec c) { return c == Codec::kZstd ? "zst" : "zz"; }

std::vector<std::uint8_t> encode_blob(const HypersparseMatrix& m) {
  std::vector<std::uint8_t> out;
  out.reserve(40 + m.row_ids().size() * 12 + m.nnz() * 12 + 16);
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u16(out, kVersion);
  std::uint16_t flags = 0;
  if (m.anonymized) flags |= kFlagAnonymized;
  if (m.partial_window) flags |= kFlagPartial;
  put_u16(out, flags);
  put_u64(out, m.window_index);
  put_u64(out, m.packet_total());
  put_u64(out, m.row_count());
  put_u64(out, m.nnz());
  for (std::uint32_t r : m.row_ids()) put_u32(out, r);
  for (std::uint64_t o : m.row_offsets()) put_u64(out, o);
  for (std::uint32_t c : m.col_ids()) put_u32(out, c);
  for (std::uint64_t v : m.values()) put_u64(out, v);
  return out;
}

HypersparseMatrix decode_blob(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 40 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw format_error("bad blob magic");
  }
  Reader r(bytes);
  r.u32();  // magic, already checked
  std::uint16_t version = r.u16();
  if (version != kVersion) throw format_error("unsupported blob version");
  std::uint16_t flags = r.u16();
  std::uint64_t window_index = r.u64();
  std::uint64_t packet_total = r.u64();
  std::uint64_t rows = r.u64();
  std::uint64_t nnz = r.u64();
  if (rows > nnz || nnz > (std::uint64_t{1} << 40)) throw format_error("implausible blob sizes");

  std::vector<std::uint32_t> row_ids(rows);
  for (auto& v : row_ids) v = r.u32();
  std::vector<std::uint64_t> row_offsets(rows ? rows + 1 : 0);
  for (auto& v : row_offsets) v = r.u64();
  std::vector<std::uint32_t> col_ids(nnz);
  for (auto& v : col_ids) v = r.u32();
  std::vector<std::uint64_t> values(nnz);
  for (auto& v : values) v = r.u64();
  if (!r.done()) throw format_error("trailing bytes in blob");

  auto m = HypersparseMatrix::from_dcsr(std::move(row_ids), std::move(row_offsets),
                                        std::move(col_ids), std::move(values), packet_total);
  m.window_index = window_index;
  m.anonymized = flags & kFlagAnonymized;
  m.partial_window = flags & kFlagPartial;
  return m;
}

std::vector<std::uint8_t> compress_bytes(const std::vector<std::uint8_t>& raw, Codec codec,
                                         int level) {
  if (codec == Codec::kZstd) {
    std::vector<std::uint8_t> out(ZSTD_compressBound(raw.size()));
    std::size_t n = ZSTD_compress(out.data(), out.size(), raw.data(), raw.size(), level);
    if (ZSTD_isError(n)) throw format_error("zstd compression failed");
    out.resize(n);
    return out;
  }
  uLongf bound = compressBound(raw.size());
  std::vector<std::uint8_t> out(bound);
  int zlevel = std::min(level, 9);
  if (compress2(out.data(), &bound, raw.data(), raw.size(), zlevel) != Z_OK) {
    throw format_error("zlib compression failed");
  }
  out.resize(bound);
  return out;
}

std::vector<std::uint8_t> decompress_bytes(const std::vector<std::uint8_t>& compressed,
                                           Codec codec) {
  if (codec == Codec::kZstd) {
    unsigned long long size = ZSTD_getFrameContentSize(compressed.data(), compressed.size());
    if (size == kZstdContentSizeError || size == kZstdContentSizeUnknown ||
        size > (1ULL << 33)) {
      throw format_error("bad zstd frame");
    }
    std::vector<std::uint8_t> out(size);
    std::size_t n = ZSTD_decompress(out.data(), out.size(), compressed.data(), compressed.size());
    if (ZSTD_isError(n) || n != size) throw format_error("zstd decompression failed");
    return out;
  }
  std::vector<std::uint8_t> out(std::max<std::size_t>(compressed.size() * 4, 1024));
  for (;;) {
    uLongf dest_len = out.size();
    int rc = uncompress(out.data(), &dest_len, compressed.data(), compressed.size());
    if (rc == Z_OK) {
      out.resize(dest_len);
      return out;
    }
    if (rc != Z_BUF_ERROR || out.size() > (1ULL << 33)) {
      throw format_error("zlib decompression failed");
    }
    out.resize(out.size() * 2);
  }
}

void write_archive(const std::vector<HypersparseMatrix>& matrices, const std::string& path,
                   const ArchiveOptions& opts) {
  if (matrices.empty()) throw parameter_error("archive needs at least one matrix");
  if (matrices.size() != kArchiveGroupSize && !opts.allow_partial) {
    throw parameter_error("archive expects exactly 64 matrices (use allow_partial)");
  }
  if (matrices.size() > kArchiveGroupSize) {
    throw parameter_error("archive holds at most 64 matrices");
  }

  std::vector<TarMember> members(matrices.size());
  auto build = [&](std::size_t i) {
    members[i].name = "w" + std::to_string(matrices[i].window_index) + ".hstm." +
                      codec_suffix(opts.codec);
    members[i].data = compress_bytes(encode_blob(matrices[i]), opts.codec, opts.level);
  };
  if (opts.threads > 1) {
    std::vector<std::future<void>> jobs;
    std::size_t chunk = (matrices.size() + opts.threads - 1) / opts.threads;
    for (unsigned t = 0; t < opts.threads; ++t) {
      std::size_t lo = t * chunk, hi = std::min(matrices.size(), lo + chunk);
      if (lo >= hi) break;
      jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
        for (std::size_t i = lo; i < hi; ++i) build(i);
      }));
    }
    for (auto& j : jobs) j.get();
  } else {
    for (std::size_t i = 0; i < matrices.size(); ++i) build(i);
  }
  tar_write_file(path, members);
}

std::vector<HypersparseMatrix> read_archive(const std::string& path) {
  auto members = tar_read_file(path);
  std::vector<HypersparseMatrix> out;
  out.reserve(members.size());
  for (const auto& m : members) {
    Codec codec;
    if (m.name.ends_with(".zst")) {
      codec = Codec::kZstd;
    } else if (m.name.ends_with(".zz")) {
      codec = Codec::kZlib;
    } else {
      throw format_error("unknown codec for member " + m.name);
    }
    try {
      out.push_back(decode_blob(decompress_bytes(m.data, codec)));
    } catch (const format_error& e) {
      throw format_error("member " + m.name + ": " + e.what());
    }
  }
  return out;
}

}  // namespace hstm
