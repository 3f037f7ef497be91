#include "hstm/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>

#include "hstm/errors.hpp"

namespace hstm {

namespace {

constexpr std::uint32_t kMagicUs = 0xA1B2C3D4;
constexpr std::uint32_t kMagicNs = 0xA1B23C4D;
constexpr std::uint32_t kMagicUsSwapped = 0xD4C3B2A1;
constexpr std::uint32_t kMagicNsSwapped = 0x4D3CB2A1;

constexpr std::uint32_t kLinkEthernet = 1;
constexpr std::uint32_t kLinkRawIp = 101;

std::uint32_t load_u32le(const unsigned char* p) {
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
         std::uint32_t{p[3]} << 24;
}

std::uint32_t load_u32be(const unsigned char* p) {
  return std::uint32_t{p[0]} << 24 | std::uint32_t{p[1]} << 16 | std::uint32_t{p[2]} << 8 |
         std::uint32_t{p[3]};
}

std::uint32_t bswap32(std::uint32_t v) {
  return (v >> 24) | ((v >> 8) & 0xFF00) | ((v & 0xFF00) << 8) | (v << 24);
}

void store_u32le(unsigned char* p, std::uint32_t v) {
  p[0] = v & 0xFF;
  p[1] = (v >> 8) & 0xFF;
  p[2] = (v >> 16) & 0xFF;
  p[3] = (v >> 24) & 0xFF;
}

void store_u32be(unsigned char* p, std::uint32_t v) { store_u32le(p, bswap32(v)); }

// splitmix64, used to map synthetic link ids onto addresses.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint32_t address_in_mask(const RangeMask& mask, std::uint64_t ordinal) {
  const auto& prefixes = mask.prefixes();
  std::uint64_t off = ordinal % mask.address_count();
  for (const auto& p : prefixes) {
    if (off < p.size()) return static_cast<std::uint32_t>(p.base + off);
    off -= p.size();
  }
  return 0;  // unreachable for a valid mask
}

}  // namespace

std::vector<PacketRecord> parse_pcap(std::istream& in, ParseStats* stats) {
  ParseStats local;
  ParseStats& st = stats ? *stats : local;
  st = ParseStats{};

  unsigned char gh[24];
  in.read(reinterpret_cast<char*>(gh), sizeof gh);
  if (in.gcount() != sizeof gh) throw format_error("truncated PCAP global header");

  std::uint32_t magic = load_u32le(gh);
  bool swapped, nanos;
  switch (magic) {
    case kMagicUs: swapped = false; nanos = false; break;
    case kMagicNs: swapped = false; nanos = true; break;
    case kMagicUsSwapped: swapped = true; nanos = false; break;
    case kMagicNsSwapped: swapped = true; nanos = true; break;
    default: throw format_error("not a PCAP file (bad magic)");
  }
  auto field = [&](const unsigned char* p) {
    std::uint32_t v = load_u32le(p);
    return swapped ? bswap32(v) : v;
  };
  std::uint32_t linktype = field(gh + 20);
  bool ethernet;
  if (linktype == kLinkEthernet) {
    ethernet = true;
  } else if (linktype == kLinkRawIp) {
    ethernet = false;
  } else {
    throw format_error("unsupported PCAP link type " + std::to_string(linktype));
  }

  std::vector<PacketRecord> records;
  std::vector<unsigned char> data;
  unsigned char rh[16];
  for (;;) {
    in.read(reinterpret_cast<char*>(rh), sizeof rh);
    if (in.gcount() == 0) break;
    if (in.gcount() != sizeof rh) {
      st.truncated_tail = 1;
      break;
    }
    std::uint32_t ts_sec = field(rh);
    std::uint32_t ts_frac = field(rh + 4);
    std::uint32_t incl_len = field(rh + 8);
    if (incl_len > (1u << 24)) throw format_error("implausible PCAP record length");
    data.resize(incl_len);
    in.read(reinterpret_cast<char*>(data.data()), incl_len);
    if (in.gcount() != static_cast<std::streamsize>(incl_len)) {
      st.truncated_tail = 1;
      break;
    }

    std::size_t ip_off = 0;
    if (ethernet) {
      if (data.size() < 14 || !(data[12] == 0x08 && data[13] == 0x00)) {
        ++st.skipped_frames;
        continue;
      }
      ip_off = 14;
    }
    if (data.size() < ip_off + 20 || (data[ip_off] >> 4) != 4) {
      ++st.skipped_frames;
      continue;
    }
    PacketRecord rec;
    rec.src = load_u32be(data.data() + ip_off + 12);
    rec.dst = load_u32be(data.data() + ip_off + 16);
    std::uint64_t frac_us = nanos ? ts_frac / 1000 : ts_frac;
    rec.ts_us = std::uint64_t{ts_sec} * 1000000 + frac_us;
    records.push_back(rec);
    ++st.ipv4_packets;
  }
  return records;
}

std::vector<PacketRecord> parse_pcap_file(const std::string& path, ParseStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  return parse_pcap(in, stats);
}

void write_pcap(std::ostream& out, const std::vector<PacketRecord>& records) {
  unsigned char gh[24] = {};
  store_u32le(gh, kMagicUs);
  gh[4] = 2;  // version 2.4
  gh[6] = 4;
  store_u32le(gh + 16, 65535);         // snaplen
  store_u32le(gh + 20, kLinkEthernet);
  out.write(reinterpret_cast<char*>(gh), sizeof gh);

  // 14-byte Ethernet header + minimal 20-byte IPv4 header, no payload.
  unsigned char frame[34] = {};
  frame[12] = 0x08;  // ethertype IPv4
  frame[13] = 0x00;
  frame[14] = 0x45;  // version 4, ihl 5
  frame[16] = 0;     // total length 20
  frame[17] = 20;
  frame[22] = 64;    // ttl
  frame[23] = 17;    // protocol (udp, nominal)

  unsigned char rh[16];
  for (const auto& rec : records) {
    store_u32le(rh, static_cast<std::uint32_t>(rec.ts_us / 1000000));
    store_u32le(rh + 4, static_cast<std::uint32_t>(rec.ts_us % 1000000));
    store_u32le(rh + 8, sizeof frame);
    store_u32le(rh + 12, sizeof frame);
    store_u32be(frame + 26, rec.src);
    store_u32be(frame + 30, rec.dst);
    out.write(reinterpret_cast<char*>(rh), sizeof rh);
    out.write(reinterpret_cast<char*>(frame), sizeof frame);
  }
  if (!out) throw io_error("PCAP write failed");
}

void write_pcap_file(const std::string& path, const std::vector<PacketRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  write_pcap(out, records);
}

std::vector<PacketWindow> window_packets(const std::vector<PacketRecord>& records,
                                         std::uint64_t n_v) {
  if (n_v == 0) throw parameter_error("window size n_v must be >= 1");
  std::vector<PacketWindow> windows;
  for (std::size_t i = 0; i < records.size(); i += n_v) {
    PacketWindow w;
    std::size_t end = std::min(records.size(), i + n_v);
    w.records.assign(records.begin() + i, records.begin() + end);
    w.window_index = windows.size();
    w.is_partial = (end - i) < n_v;
    windows.push_back(std::move(w));
  }
  return windows;
}

std::vector<std::uint32_t> sample_zm_degrees(std::size_t n, double delta, double alpha,
                                             std::uint32_t d_max, std::uint64_t seed) {
  if (alpha <= 0 || delta < 0 || d_max < 1) throw parameter_error("bad Zipf-Mandelbrot parameters");
  std::vector<double> cdf(d_max);
  double acc = 0;
  for (std::uint32_t d = 1; d <= d_max; ++d) {
    acc += std::pow(static_cast<double>(d) + delta, -alpha);
    cdf[d - 1] = acc;
  }
  for (auto& c : cdf) c /= acc;

  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double u = next_unit(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    out[i] = static_cast<std::uint32_t>(it - cdf.begin()) + 1;
    if (out[i] > d_max) out[i] = d_max;
  }
  return out;
}

std::vector<PacketRecord> synth_traffic(const SynthSpec& spec) {
  if (spec.alpha <= 1) throw parameter_error("synth_traffic requires alpha > 1");
  double weight_sum = 0;
  for (const auto& e : spec.gateway_mix) {
    if (e.weight < 0) throw parameter_error("negative mix weight");
    weight_sum += e.weight;
  }
  std::vector<SynthSpec::MixEntry> mix = spec.gateway_mix;
  if (mix.empty()) {
    mix.push_back({RangeMask::full(), RangeMask::full(), 1.0});
    weight_sum = 1.0;
  } else if (weight_sum <= 0) {
    throw parameter_error("mix weights must sum to > 0");
  }
  std::vector<double> mix_cdf(mix.size());
  double acc = 0;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    acc += mix[i].weight / weight_sum;
    mix_cdf[i] = acc;
  }

  // Per-link packet-count table, sampled lazily in blocks.
  std::mt19937_64 rng(spec.seed);
  std::vector<double> zm_cdf(spec.d_max);
  {
    double z = 0;
    for (std::uint32_t d = 1; d <= spec.d_max; ++d) {
      z += std::pow(static_cast<double>(d) + spec.delta, -spec.alpha);
      zm_cdf[d - 1] = z;
    }
    for (auto& c : zm_cdf) c /= z;
  }

  std::vector<PacketRecord> records;
  records.reserve(spec.count);
  std::uint64_t ts = 1700000000ULL * 1000000;  // arbitrary fixed epoch
  while (records.size() < spec.count) {
    double um = next_unit(rng);
    std::size_t mi = std::upper_bound(mix_cdf.begin(), mix_cdf.end(), um) - mix_cdf.begin();
    if (mi >= mix.size()) mi = mix.size() - 1;
    const auto& entry = mix[mi];

    std::uint64_t sid = rng() % std::max<std::uint64_t>(spec.n_src, 1);
    std::uint64_t did = rng() % std::max<std::uint64_t>(spec.n_dst, 1);
    std::uint32_t src = address_in_mask(entry.src_range, mix64(sid * 2 + 0 + (mi << 40)));
    std::uint32_t dst = address_in_mask(entry.dst_range, mix64(did * 2 + 1 + (mi << 40)));

    double ud = next_unit(rng);
    std::uint32_t d =
        static_cast<std::uint32_t>(std::upper_bound(zm_cdf.begin(), zm_cdf.end(), ud) -
                                   zm_cdf.begin()) +
        1;
    for (std::uint32_t k = 0; k < d && records.size() < spec.count; ++k) {
      records.push_back(PacketRecord{src, dst, ts++});
    }
  }

  // Deterministic Fisher-Yates so a link's packets are spread across windows.
  std::mt19937_64 shuf(mix64(spec.seed ^ 0x5EEDF00DULL));
  for (std::size_t i = records.size(); i > 1; --i) {
    std::size_t j = shuf() % i;
    std::swap(records[i - 1], records[j]);
  }
  for (std::size_t i = 0; i < records.size(); ++i) records[i].ts_us = ts + i;
  return records;
}

}  // namespace hstm
