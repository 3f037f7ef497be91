#pragma once

// The environment ships libzstd as a runtime-only shared object (no dev
// headers). These declarations cover the small stable subset of the public
// C API we use; the library is linked by its versioned soname.

#include <cstddef>

extern "C" {
size_t ZSTD_compress(void* dst, size_t dstCapacity, const void* src, size_t srcSize,
                     int compressionLevel);
size_t ZSTD_decompress(void* dst, size_t dstCapacity, const void* src, size_t compressedSize);
size_t ZSTD_compressBound(size_t srcSize);
unsigned ZSTD_isError(size_t code);
unsigned long long ZSTD_getFrameContentSize(const void* src, size_t srcSize);
}

// Sentinels from zstd.h for ZSTD_getFrameContentSize.
inline constexpr unsigned long long kZstdContentSizeUnknown = 0ULL - 1;
inline constexpr unsigned long long kZstdContentSizeError = 0ULL - 2;
