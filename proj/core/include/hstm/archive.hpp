#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hstm/hmatrix.hpp"

namespace hstm {

enum class Codec { kZstd, kZlib };
const char* codec_suffix(Codec c);  // "zst" / "zz"

// "HSTM" blob: little-endian header (magic, version, flags, window_index,
// packet_total, row count, nnz) followed by the DCSR arrays.
std::vector<std::uint8_t> encode_blob(const HypersparseMatrix& m);
HypersparseMatrix decode_blob(const std::vector<std::uint8_t>& bytes);  // throws format_error

std::vector<std::uint8_t> compress_bytes(const std::vector<std::uint8_t>& raw, Codec codec,
                                         int level);
std::vector<std::uint8_t> decompress_bytes(const std::vector<std::uint8_t>& compressed,
                                           Codec codec);

struct ArchiveOptions {
  Codec codec = Codec::kZstd;
  int level = 19;
  bool allow_partial = false;  // permit fewer than 64 matrices (final group)
  unsigned threads = 1;        // parallel blob compression; bytes are identical
};

// TAR of 64 compressed matrix blobs named w<window_index>.hstm.<codec>.
// Member order = window order. Deterministic bytes for deterministic input.
void write_archive(const std::vector<HypersparseMatrix>& matrices, const std::string& path,
                   const ArchiveOptions& opts = {});

// Inverse of write_archive; verifies blob invariants and reports the
// offending member on error.
std::vector<HypersparseMatrix> read_archive(const std::string& path);

constexpr std::size_t kArchiveGroupSize = 64;

}  // namespace hstm
