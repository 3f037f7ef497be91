// End-to-end acceptance gate: one pass/fail line per criterion, nonzero exit
// if any criterion fails. Each check recomputes its expectation independently
// of the library internals (closed forms, brute-force counters, Monte-Carlo).

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hstm/analysis.hpp"
#include "hstm/anon.hpp"
#include "hstm/archive.hpp"
#include "hstm/calibration.hpp"
#include "hstm/detection.hpp"
#include "hstm/hierarchy.hpp"
#include "hstm/hmatrix.hpp"
#include "hstm/ingest.hpp"
#include "hstm/quantities.hpp"
#include "hstm/ranges.hpp"

using namespace hstm;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, const char* name, bool ok, const std::string& detail) {
  std::printf("%s %2d %s (%s)\n", ok ? "PASS" : "FAIL", criterion, name, detail.c_str());
  if (!ok) ++g_failures;
}

double uniform(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

RangePartition test_partition() {
  return RangePartition::with_defaults(RangeMask({parse_cidr("18.0.0.0/11"),
                                                  parse_cidr("18.32.0.0/12"),
                                                  parse_cidr("18.48.0.0/13")}));
}

AnonKey test_key() {
  AnonKey k;
  for (std::size_t i = 0; i < k.bytes.size(); ++i) {
    k.bytes[i] = static_cast<std::uint8_t>(i * 37 + 11);
  }
  return k;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("hstm_accept_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

// --------------------------------------------------------------------------
// 1. Detection closed forms vs exact rationals and a Monte-Carlo oracle.

template <typename F>
double rejection_sample(F density, double a, double b, double peak, std::mt19937_64& rng) {
  for (;;) {
    double x = a + (b - a) * uniform(rng);
    double y = peak * uniform(rng);
    if (y < density(x)) return x;
  }
}

void criterion_1() {
  DetectionParams p;  // c_err = 2/3, c_cut = 1/3
  auto o = outcome_probs(p);
  bool exact = std::abs(o.p_tt - 27.0 / 32.0) < 1e-12 && std::abs(o.p_tb - 5.0 / 32.0) < 1e-12 &&
               std::abs(o.p_bt - 13.0 / 32.0) < 1e-12 && std::abs(o.p_bb - 19.0 / 32.0) < 1e-12;

  const double c_err = p.c_err;
  std::mt19937_64 rng(10007);
  const std::size_t n = 10'000'000;
  std::size_t back_target = 0, tar_target = 0;
  const double lo = p.x_min(), hi = p.x_max();
  for (std::size_t i = 0; i < n; ++i) {
    bool lower = rng() & 1;
    double xb = lower ? rejection_sample([&](double x) { return density_back_low(c_err, x); },
                                         lo, 1.0, 3.1, rng)
                      : rejection_sample([&](double x) { return density_back_high(c_err, x); },
                                         1.0, hi, 1.1, rng);
    double xt = lower ? rejection_sample([&](double x) { return density_tar_low(c_err, x); },
                                         lo, 1.0, 3.1, rng)
                      : rejection_sample([&](double x) { return density_tar_high(c_err, x); },
                                         1.0, hi, 1.1, rng);
    if (xb < p.x_cut_min() || xb > p.x_cut_max()) ++back_target;
    if (xt < p.x_cut_min() || xt > p.x_cut_max()) ++tar_target;
  }
  double sig_bt = std::sqrt(o.p_bt * (1 - o.p_bt) / n);
  double sig_tt = std::sqrt(o.p_tt * (1 - o.p_tt) / n);
  double mc_bt = static_cast<double>(back_target) / n;
  double mc_tt = static_cast<double>(tar_target) / n;
  bool mc = std::abs(mc_bt - o.p_bt) < 3 * sig_bt && std::abs(mc_tt - o.p_tt) < 3 * sig_tt;

  char detail[160];
  std::snprintf(detail, sizeof detail,
                "exact rationals %s; MC p_bt=%.5f vs %.5f, p_tt=%.5f vs %.5f",
                exact ? "ok" : "BAD", mc_bt, o.p_bt, mc_tt, o.p_tt);
  report(1, "detection closed forms", exact && mc, detail);
}

// --------------------------------------------------------------------------
// 2. ROC variants and density/cumulative integration agreement.

template <typename F>
double integrate(F f, double a, double b, int steps = 200000) {
  double h = (b - a) / steps;
  double acc = 0.5 * (f(a) + f(b));
  for (int i = 1; i < steps; ++i) acc += f(a + i * h);
  return acc * h;
}

void criterion_2() {
  const double c = 2.0 / 3.0;
  std::vector<double> grid{1.0 / 3.0};
  auto coh = roc_curve(c, grid, RocVariant::kCoherent, 8)[0];
  auto all = roc_curve(c, grid, RocVariant::kMismatchAll, 1, 0.05)[0];
  auto none = roc_curve(c, grid, RocVariant::kMismatchNone, 1, 0.05)[0];
  bool variants = std::abs(coh.p_fa - std::pow(13.0 / 32.0, 8)) < 1e-12 &&
                  std::abs(coh.p_det - 27.0 / 32.0) < 1e-12 &&
                  std::abs(all.p_fa - (13.0 / 32.0 * 0.05 + 0.95)) < 1e-12 &&
                  std::abs(all.p_det - (27.0 / 32.0 * 0.05 + 0.95)) < 1e-12 &&
                  std::abs(none.p_fa - 13.0 / 32.0 * 0.05) < 1e-12 &&
                  std::abs(none.p_det - 27.0 / 32.0 * 0.05) < 1e-12;

  // Endpoint limits of the baseline curve.
  auto near0 = roc_curve(c, {1e-9}, RocVariant::kBaseline)[0];
  auto near1 = roc_curve(c, {c - 1e-9}, RocVariant::kBaseline)[0];
  bool endpoints = std::abs(near0.p_fa - 1) < 1e-6 && std::abs(near0.p_det - 1) < 1e-6 &&
                   near1.p_fa < 1e-6 && near1.p_det < 1e-6;

  double worst = 0;
  for (double c_err : {0.3, 0.5, 2.0 / 3.0, 0.9}) {
    double lo = 1 - c_err, hi = 1 / (1 - c_err);
    for (double t : {0.25, 0.5, 0.75}) {
      double xl = lo + t * (1 - lo), xh = 1 + t * (hi - 1);
      worst = std::max(worst, std::abs(cum_back_low(c_err, xl) -
                                       integrate([&](double x) { return density_back_low(c_err, x); }, xl, 1.0)));
      worst = std::max(worst, std::abs(cum_tar_low(c_err, xl) -
                                       integrate([&](double x) { return density_tar_low(c_err, x); }, xl, 1.0)));
      worst = std::max(worst, std::abs(cum_back_high(c_err, xh) -
                                       integrate([&](double x) { return density_back_high(c_err, x); }, 1.0, xh)));
      worst = std::max(worst, std::abs(cum_tar_high(c_err, xh) -
                                       integrate([&](double x) { return density_tar_high(c_err, x); }, 1.0, xh)));
    }
  }
  char detail[120];
  std::snprintf(detail, sizeof detail, "variants %s, endpoints %s, max integration gap %.2e",
                variants ? "ok" : "BAD", endpoints ? "ok" : "BAD", worst);
  report(2, "roc variants", variants && endpoints && worst < 1e-9, detail);
}

// --------------------------------------------------------------------------
// 3. Network quantities vs brute-force counting, plus relabeling invariance.

NetworkQuantities brute_quantities(const std::vector<AddrPair>& pairs) {
  NetworkQuantities q;
  std::map<AddrPair, std::uint64_t> link;
  std::map<std::uint32_t, std::uint64_t> sp, dp;
  std::map<std::uint32_t, std::set<std::uint32_t>> fo, fi;
  for (const auto& [s, d] : pairs) {
    link[{s, d}]++;
    sp[s]++;
    dp[d]++;
    fo[s].insert(d);
    fi[d].insert(s);
  }
  q.valid_packets = pairs.size();
  q.unique_links = link.size();
  for (auto& [k, v] : link) q.max_link_packets = std::max(q.max_link_packets, v);
  q.unique_sources = sp.size();
  for (auto& [k, v] : sp) q.max_source_packets = std::max(q.max_source_packets, v);
  for (auto& [k, v] : fo) q.max_source_fanout = std::max<std::uint64_t>(q.max_source_fanout, v.size());
  q.unique_destinations = dp.size();
  for (auto& [k, v] : dp) q.max_destination_packets = std::max(q.max_destination_packets, v);
  for (auto& [k, v] : fi) q.max_destination_fanin = std::max<std::uint64_t>(q.max_destination_fanin, v.size());
  return q;
}

void criterion_3() {
  std::mt19937_64 rng(30001);
  bool oracle_ok = true;
  for (int w = 0; w < 1000 && oracle_ok; ++w) {
    std::vector<AddrPair> pairs(rng() % (1 << 12));
    for (auto& p : pairs) {
      p.first = static_cast<std::uint32_t>(rng() % 512);
      p.second = static_cast<std::uint32_t>(rng() % 512);
    }
    oracle_ok = compute_quantities(HypersparseMatrix::from_pairs(pairs)) == brute_quantities(pairs);
  }

  std::vector<AddrPair> pairs(4096);
  for (auto& p : pairs) {
    p.first = static_cast<std::uint32_t>(rng() % 1024);
    p.second = static_cast<std::uint32_t>(rng() % 1024);
  }
  auto base = compute_quantities(HypersparseMatrix::from_pairs(pairs));
  bool relabel_ok = true;
  for (int t = 0; t < 100 && relabel_ok; ++t) {
    std::uint32_t a = static_cast<std::uint32_t>(rng()) | 1u;  // odd -> bijective mod 2^32
    std::uint32_t b = static_cast<std::uint32_t>(rng());
    std::vector<AddrPair> rl(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      rl[i] = {a * pairs[i].first + b, a * pairs[i].second + b};
    }
    relabel_ok = compute_quantities(HypersparseMatrix::from_pairs(rl)) == base;
  }
  char detail[120];
  std::snprintf(detail, sizeof detail, "1000-window oracle %s, 100 relabelings %s",
                oracle_ok ? "ok" : "BAD", relabel_ok ? "ok" : "BAD");
  report(3, "quantities oracle", oracle_ok && relabel_ok, detail);
}

// --------------------------------------------------------------------------
// 4. Prefix-preserving anonymization and table/direct equivalence.

int lcp_len(std::uint32_t a, std::uint32_t b) {
  for (int k = 32; k > 0; --k) {
    if ((a >> (32 - k)) == (b >> (32 - k))) return k;
  }
  return 0;
}

void criterion_4() {
  CryptoPan pan(test_key());
  std::mt19937_64 rng(40009);
  bool prefix_ok = true;
  for (int i = 0; i < 100000 && prefix_ok; ++i) {
    std::uint32_t a = static_cast<std::uint32_t>(rng());
    std::uint32_t b;
    if (i % 2) {
      // Force a shared prefix of random length so all depths are exercised.
      int k = static_cast<int>(rng() % 33);
      std::uint32_t flip = k == 32 ? 0 : (1u << (31 - k)) | (static_cast<std::uint32_t>(rng()) >> (k + 1 == 32 ? 31 : k + 1));
      b = a ^ flip;
    } else {
      b = static_cast<std::uint32_t>(rng());
    }
    prefix_ok = lcp_len(pan.anonymize(a), pan.anonymize(b)) == lcp_len(a, b);
  }

  std::vector<AddrPair> window(1 << 16);
  std::vector<std::uint32_t> addrs;
  addrs.reserve(window.size() * 2);
  for (auto& p : window) {
    p.first = static_cast<std::uint32_t>(rng());
    p.second = static_cast<std::uint32_t>(rng() % (1 << 20));
    addrs.push_back(p.first);
    addrs.push_back(p.second);
  }
  auto table = AnonTable::build(pan, addrs);
  std::vector<AddrPair> via_direct(window.size()), via_table(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) {
    via_direct[i] = {pan.anonymize(window[i].first), pan.anonymize(window[i].second)};
    via_table[i] = {table.lookup(window[i].first), table.lookup(window[i].second)};
  }
  bool table_ok = HypersparseMatrix::from_pairs(via_direct) == HypersparseMatrix::from_pairs(via_table);

  char detail[120];
  std::snprintf(detail, sizeof detail, "10^5 lcp pairs %s, table==direct on 2^16 window %s",
                prefix_ok ? "ok" : "BAD", table_ok ? "ok" : "BAD");
  report(4, "anonymization", prefix_ok && table_ok, detail);
}

// --------------------------------------------------------------------------
// 5. Hierarchical aggregation identities.

void criterion_5() {
  const std::uint64_t n_v = 1024;
  std::mt19937_64 rng(50021);
  std::vector<HypersparseMatrix> leaves;
  std::vector<std::uint64_t> leaf_nnz;
  HypersparseMatrix flat;
  for (int i = 0; i < 64; ++i) {
    std::vector<AddrPair> pairs(n_v);
    for (auto& p : pairs) {
      p.first = static_cast<std::uint32_t>(rng() % 4096);
      p.second = static_cast<std::uint32_t>(rng() % 4096);
    }
    leaves.push_back(HypersparseMatrix::from_pairs(pairs));
    leaf_nnz.push_back(leaves.back().nnz());
    flat = HypersparseMatrix::add(flat, leaves.back());
  }
  auto levels = aggregate_hierarchy(leaves, 6);
  bool ok = levels.size() == 7 && levels.back().matrices.size() == 1 &&
            levels.back().matrices[0] == flat;
  for (std::size_t l = 0; l < levels.size() && ok; ++l) {
    std::uint64_t expected_packets = n_v << l;
    ok = levels[l].window_packets == expected_packets;
    for (std::size_t k = 0; k < levels[l].matrices.size() && ok; ++k) {
      const auto& m = levels[l].matrices[k];
      ok = m.packet_total() == expected_packets &&
           compute_quantities(m).valid_packets == expected_packets;
      // nnz subadditive vs the covered leaves.
      std::uint64_t cover = 0;
      for (std::size_t j = k << l; j < (k + 1) << l; ++j) cover += leaf_nnz[j];
      ok = ok && m.nnz() <= cover;
    }
  }
  char detail[120];
  std::snprintf(detail, sizeof detail, "64 leaves, 7 levels, root==flat sum %s",
                ok ? "ok" : "BAD");
  report(5, "hierarchy aggregation", ok, detail);
}

// --------------------------------------------------------------------------
// 6. Zipf-Mandelbrot parameter recovery.

void criterion_6() {
  auto fit_of = [](double delta, double alpha, std::uint64_t seed) {
    auto degrees = sample_zm_degrees(1 << 20, delta, alpha, 256, seed);
    DegreeHistogram h;
    for (auto d : degrees) h.counts[d] += 1;
    return fit_zipf_mandelbrot(h);
  };
  auto f1 = fit_of(0.0, 2.0, 60013);
  auto f2 = fit_of(3.0, 1.5, 60017);
  bool ok1 = f1.alpha >= 1.95 && f1.alpha <= 2.05;
  bool ok2 = std::abs(f2.delta - 3.0) <= 0.5;
  char detail[140];
  std::snprintf(detail, sizeof detail,
                "alpha_hat=%.3f (true 2.0) %s; delta_hat=%.3f (true 3.0) %s", f1.alpha,
                ok1 ? "ok" : "BAD", f2.delta, ok2 ? "ok" : "BAD");
  report(6, "calibration recovery", ok1 && ok2, detail);
}

// --------------------------------------------------------------------------
// 7. Focusing scores: gateway traffic margin and uniform-traffic floor.

void criterion_7() {
  auto part = test_partition();
  auto exp = random_expectation(part);

  SynthSpec spec;
  spec.count = 1 << 19;
  spec.seed = 70001;
  spec.gateway_mix = {
      {part.mask(Range::kAssigned), part.other_mask(), 0.45},
      {part.other_mask(), part.mask(Range::kAssigned), 0.45},
      {part.other_mask(), part.other_mask(), 0.10},
  };
  auto gateway = synth_traffic(spec);
  double correct = focus_score(focus_table_from_pairs(gateway, part), exp);
  double swapped = focus_score(focus_table_from_pairs(byteswap_view(gateway), part), exp);

  std::mt19937_64 rng(70003);
  std::vector<PacketRecord> uni(1 << 20);
  for (auto& r : uni) {
    r.src = static_cast<std::uint32_t>(rng());
    r.dst = static_cast<std::uint32_t>(rng());
  }
  double floor = focus_score(focus_table_from_pairs(uni, part), exp);

  bool ok = correct - swapped >= 0.2 && floor < 0.02;
  char detail[140];
  std::snprintf(detail, sizeof detail, "margin=%.3f (>=0.2), uniform score=%.4f (<0.02)",
                correct - swapped, floor);
  report(7, "focusing", ok, detail);
}

// --------------------------------------------------------------------------
// 8. Compression: archive bytes/packet and analysis bits/packet.

void criterion_8() {
  TempDir dir;
  SynthSpec spec;
  spec.count = std::uint64_t{1} << 24;
  spec.alpha = 1.5;  // heavier tail: realistic mean packets-per-link (~50)
  spec.seed = 80021;
  auto records = synth_traffic(spec);
  auto windows = window_packets(records, std::uint64_t{1} << 17);

  std::vector<HypersparseMatrix> leaves;
  for (const auto& w : windows) {
    std::vector<AddrPair> pairs(w.records.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      pairs[i] = {w.records[i].src, w.records[i].dst};
    }
    auto m = HypersparseMatrix::from_pairs(pairs);
    m.window_index = w.window_index;
    leaves.push_back(std::move(m));
  }

  // Archive of the first 64 windows (2^23 packets).
  std::vector<HypersparseMatrix> group(leaves.begin(), leaves.begin() + 64);
  ArchiveOptions opts;
  opts.threads = 4;
  auto archive_path = dir.file("g0.tar");
  write_archive(group, archive_path, opts);
  double archive_packets = 64.0 * (1 << 17);
  double bytes_per_packet = static_cast<double>(fs::file_size(archive_path)) / archive_packets;

  // Consolidated analysis of all hierarchy levels and range pairs.
  auto part = test_partition();
  std::array<RangeMask, kRangeCount> masks{part.mask(Range::kNonroutable),
                                           part.mask(Range::kBogon), part.mask(Range::kAssigned),
                                           part.other_mask()};
  auto hierarchy = aggregate_hierarchy(leaves, 10, 4);
  std::vector<AnalysisRow> rows;
  const char* names[] = {"valid_packets", "unique_links", "max_link_packets",
                         "unique_sources", "max_source_packets", "max_source_fanout",
                         "unique_destinations", "max_destination_packets",
                         "max_destination_fanin"};
  for (const auto& level : hierarchy) {
    for (std::size_t k = 0; k < level.matrices.size(); ++k) {
      for (int a = 0; a < kRangeCount; ++a) {
        for (int b = 0; b < kRangeCount; ++b) {
          auto q = compute_quantities(level.matrices[k].extract_subrange(masks[a], masks[b]));
          std::uint64_t vals[] = {q.valid_packets, q.unique_links, q.max_link_packets,
                                  q.unique_sources, q.max_source_packets, q.max_source_fanout,
                                  q.unique_destinations, q.max_destination_packets,
                                  q.max_destination_fanin};
          for (int i = 0; i < 9; ++i) {
            rows.push_back({level.window_packets, k, range_name(static_cast<Range>(a)),
                            range_name(static_cast<Range>(b)), names[i],
                            static_cast<double>(vals[i])});
          }
        }
      }
    }
  }
  auto analysis_path = dir.file("analysis.csv.zst");
  write_analysis(rows, analysis_path);
  double bits_per_packet =
      8.0 * static_cast<double>(fs::file_size(analysis_path)) / static_cast<double>(spec.count);

  bool ok = bytes_per_packet <= 4.0 && bits_per_packet <= 0.05;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "archive %.3f bytes/packet (<=4), analysis %.4f bits/packet (<=0.05)",
                bytes_per_packet, bits_per_packet);
  report(8, "compression", ok, detail);
}

// --------------------------------------------------------------------------
// 9. Construction throughput with and without anonymization.

void criterion_9() {
  SynthSpec spec;
  spec.count = std::uint64_t{1} << 22;
  spec.seed = 90001;
  auto records = synth_traffic(spec);
  auto windows = window_packets(records, std::uint64_t{1} << 17);
  CryptoPan pan(test_key());

  auto run = [&](bool anon) {
    auto start = std::chrono::steady_clock::now();
    std::uint64_t guard = 0;
    for (const auto& w : windows) {
      std::vector<AddrPair> pairs(w.records.size());
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        pairs[i] = anon ? AddrPair{pan.anonymize(w.records[i].src),
                                   pan.anonymize(w.records[i].dst)}
                        : AddrPair{w.records[i].src, w.records[i].dst};
      }
      guard += HypersparseMatrix::from_pairs(pairs).nnz();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return guard ? static_cast<double>(records.size()) / secs : 0.0;
  };
  double plain = run(false);
  double anon = run(true);
  bool ok = plain >= 1e6;
  char detail[140];
  std::snprintf(detail, sizeof detail,
                "%.2fM packets/s plain (>=1M), %.2fM with anonymization, ratio %.2f",
                plain / 1e6, anon / 1e6, plain / anon);
  report(9, "construction throughput", ok, detail);
}

// --------------------------------------------------------------------------
// 10. Archive round trip and byte determinism.

void criterion_10() {
  TempDir dir;
  std::mt19937_64 rng(100003);
  std::vector<HypersparseMatrix> mats;
  for (int i = 0; i < 256; ++i) {
    std::vector<AddrPair> pairs(rng() % 3000);
    for (auto& p : pairs) {
      p.first = static_cast<std::uint32_t>(rng());
      p.second = static_cast<std::uint32_t>(rng() % 65536);
    }
    auto m = HypersparseMatrix::from_pairs(pairs);
    m.window_index = i;
    m.anonymized = i % 3 == 0;
    mats.push_back(std::move(m));
  }
  bool ok = true;
  ArchiveOptions opts;
  opts.level = 6;
  for (int g = 0; g < 4 && ok; ++g) {
    std::vector<HypersparseMatrix> group(mats.begin() + g * 64, mats.begin() + (g + 1) * 64);
    auto p1 = dir.file("a" + std::to_string(g) + ".tar");
    auto p2 = dir.file("b" + std::to_string(g) + ".tar");
    write_archive(group, p1, opts);
    write_archive(group, p2, opts);
    auto back = read_archive(p1);
    ok = back.size() == group.size();
    for (std::size_t i = 0; i < group.size() && ok; ++i) {
      ok = back[i] == group[i] && back[i].window_index == group[i].window_index &&
           back[i].anonymized == group[i].anonymized;
    }
    std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    ok = ok && s1.str() == s2.str();
  }
  report(10, "archive round trip", ok, ok ? "256 matrices bit-exact, deterministic bytes"
                                          : "mismatch");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures) {
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
