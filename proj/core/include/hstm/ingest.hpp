#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hstm/cidr.hpp"

namespace hstm {

struct PacketRecord {
  std::uint32_t src = 0;  // full 32-bit source address, host byte order
  std::uint32_t dst = 0;
  std::uint64_t ts_us = 0;  // capture time, microseconds since epoch; informational

  bool operator==(const PacketRecord&) const = default;
};

struct PacketWindow {
  std::vector<PacketRecord> records;
  std::uint64_t window_index = 0;
  bool is_partial = false;
};

struct ParseStats {
  std::uint64_t ipv4_packets = 0;
  std::uint64_t skipped_frames = 0;   // non-IPv4 (ARP, IPv6, unsupported link type)
  std::uint64_t truncated_tail = 0;   // 1 if the capture ended mid-record
};

// Standard PCAP, both byte orders, microsecond and nanosecond magics
// (nanoseconds truncated to microseconds). Link types: Ethernet (1) and
// raw IP (101). Throws format_error on a bad global header; a truncated
// packet record stops the parse and is reported via stats.
std::vector<PacketRecord> parse_pcap(std::istream& in, ParseStats* stats = nullptr);
std::vector<PacketRecord> parse_pcap_file(const std::string& path, ParseStats* stats = nullptr);

// Minimal Ethernet/IPv4 PCAP writer (big-endian magic, microsecond
// timestamps). Used by the synth pipeline stage.
void write_pcap(std::ostream& out, const std::vector<PacketRecord>& records);
void write_pcap_file(const std::string& path, const std::vector<PacketRecord>& records);

// Tiles records into consecutive windows of n_v packets; at most one trailing
// partial window. Throws parameter_error if n_v == 0.
std::vector<PacketWindow> window_packets(const std::vector<PacketRecord>& records,
                                         std::uint64_t n_v);

// Draws n link packet-counts d in 1..d_max from p(d) ~ 1/(d+delta)^alpha.
std::vector<std::uint32_t> sample_zm_degrees(std::size_t n, double delta, double alpha,
                                             std::uint32_t d_max, std::uint64_t seed);

struct SynthSpec {
  std::uint64_t count = 0;     // total packets to emit
  double alpha = 2.0;          // > 1
  double delta = 0.0;
  std::uint32_t d_max = 4096;  // support of the per-link packet-count draw
  std::uint64_t n_src = 1 << 16;  // distinct candidate sources per range
  std::uint64_t n_dst = 1 << 16;
  std::uint64_t seed = 0;
  // Traffic mix: weight per (source range, destination range) pair.
  struct MixEntry {
    RangeMask src_range;
    RangeMask dst_range;
    double weight = 1.0;
  };
  std::vector<MixEntry> gateway_mix;  // empty = uniform over the full space
};

// Deterministic heavy-tail traffic generator: links are drawn from the mix,
// each link carries a Zipf-Mandelbrot packet multiplicity.
std::vector<PacketRecord> synth_traffic(const SynthSpec& spec);

}  // namespace hstm
