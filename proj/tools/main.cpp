// hstm: hypersparse traffic-matrix toolkit.
//
// Pipeline: synth -> build -> analyze / focus / calibrate, plus roc (model
// evaluation) and bench (construction throughput). Stages communicate only
// through files; "-" selects stdin/stdout for PCAP streams.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hstm/analysis.hpp"
#include "hstm/anon.hpp"
#include "hstm/archive.hpp"
#include "hstm/calibration.hpp"
#include "hstm/detection.hpp"
#include "hstm/errors.hpp"
#include "hstm/hierarchy.hpp"
#include "hstm/hmatrix.hpp"
#include "hstm/ingest.hpp"
#include "hstm/quantities.hpp"
#include "hstm/ranges.hpp"

namespace {

using namespace hstm;

constexpr const char* kKeyEnvVar = "HSTM_KEY_FILE";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitFormat = 3;
constexpr int kExitIo = 4;

// ---------------------------------------------------------------------------
// Shared option bundles.

struct RangeOpts {
  std::string config_path;
  std::vector<std::string> assigned_cidrs;

  void attach(CLI::App* cmd) {
    cmd->add_option("--range-config", config_path,
                    "range partition config file (name cidr per line)");
    cmd->add_option("--assigned", assigned_cidrs,
                    "assigned-range CIDR (repeatable; alternative to --range-config)");
  }

  RangePartition partition() const {
    if (!config_path.empty()) return RangePartition::from_config_file(config_path);
    std::vector<Cidr> prefixes;
    for (const auto& s : assigned_cidrs) prefixes.push_back(parse_cidr(s));
    return RangePartition::with_defaults(RangeMask(std::move(prefixes)));
  }
};

struct KeyOpts {
  std::string key_file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--key-file", key_file,
                    "anonymization key file (32 bytes); default $" + std::string(kKeyEnvVar));
  }

  // The key itself is never accepted on the command line, only a path to it.
  AnonKey load() const {
    if (!key_file.empty()) return AnonKey::from_file(key_file);
    return AnonKey::from_env(kKeyEnvVar);
  }
};

Range range_from_name(const std::string& name) {
  for (int r = 0; r < kRangeCount; ++r) {
    if (name == range_name(static_cast<Range>(r))) return static_cast<Range>(r);
  }
  throw parameter_error("unknown range name: " + name);
}

RangeMask mask_from_name(const RangePartition& part, const std::string& name) {
  if (name == "all") return RangeMask::full();
  Range r = range_from_name(name);
  return r == Range::kOther ? part.other_mask() : part.mask(r);
}

std::vector<PacketRecord> read_pcap_input(const std::string& path, ParseStats* stats) {
  if (path == "-") return parse_pcap(std::cin, stats);
  return parse_pcap_file(path, stats);
}

struct NamedQuantity {
  const char* name;
  std::uint64_t NetworkQuantities::*field;
};

constexpr NamedQuantity kQuantityFields[] = {
    {"valid_packets", &NetworkQuantities::valid_packets},
    {"unique_links", &NetworkQuantities::unique_links},
    {"max_link_packets", &NetworkQuantities::max_link_packets},
    {"unique_sources", &NetworkQuantities::unique_sources},
    {"max_source_packets", &NetworkQuantities::max_source_packets},
    {"max_source_fanout", &NetworkQuantities::max_source_fanout},
    {"unique_destinations", &NetworkQuantities::unique_destinations},
    {"max_destination_packets", &NetworkQuantities::max_destination_packets},
    {"max_destination_fanin", &NetworkQuantities::max_destination_fanin},
};

// Runs f(i) for i in [0, n) on `threads` workers; results land in order.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, unsigned threads, F f) {
  std::vector<T> out(n);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::future<void>> futures;
  std::size_t chunk = (n + threads - 1) / threads;
  for (std::size_t start = 0; start < n; start += chunk) {
    std::size_t stop = std::min(n, start + chunk);
    futures.push_back(std::async(std::launch::async, [&, start, stop] {
      for (std::size_t i = start; i < stop; ++i) out[i] = f(i);
    }));
  }
  for (auto& fu : futures) fu.get();
  return out;
}

// ---------------------------------------------------------------------------
// synth: write a deterministic heavy-tail PCAP.

struct SynthCmd {
  SynthSpec spec;
  RangeOpts ranges;
  std::vector<std::string> mix_entries;
  std::string output = "-";

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("synth", "generate synthetic heavy-tail traffic as PCAP");
    cmd->add_option("--count", spec.count, "number of packets")->required();
    cmd->add_option("--alpha", spec.alpha, "Zipf-Mandelbrot exponent (> 1)");
    cmd->add_option("--delta", spec.delta, "Zipf-Mandelbrot offset");
    cmd->add_option("--d-max", spec.d_max, "max packets per link");
    cmd->add_option("--n-src", spec.n_src, "distinct candidate sources per range");
    cmd->add_option("--n-dst", spec.n_dst, "distinct candidate destinations per range");
    cmd->add_option("--seed", spec.seed, "RNG seed");
    cmd->add_option("--mix", mix_entries,
                    "traffic mix entry src_range:dst_range:weight (repeatable; "
                    "ranges nonroutable/bogon/assigned/other/all)");
    cmd->add_option("-o,--output", output, "output PCAP path, - for stdout");
    ranges.attach(cmd);
    cmd->callback([this] { run(); });
  }

  void run() {
    if (!mix_entries.empty()) {
      auto part = ranges.partition();
      for (const auto& e : mix_entries) {
        std::istringstream ss(e);
        std::string src, dst, weight;
        if (!std::getline(ss, src, ':') || !std::getline(ss, dst, ':') ||
            !std::getline(ss, weight)) {
          throw parameter_error("bad --mix entry (want src:dst:weight): " + e);
        }
        SynthSpec::MixEntry entry;
        entry.src_range = mask_from_name(part, src);
        entry.dst_range = mask_from_name(part, dst);
        entry.weight = std::stod(weight);
        spec.gateway_mix.push_back(std::move(entry));
      }
    }
    auto records = synth_traffic(spec);
    if (output == "-") {
      write_pcap(std::cout, records);
    } else {
      write_pcap_file(output, records);
    }
    std::cerr << "synth: " << records.size() << " packets\n";
  }
};

// ---------------------------------------------------------------------------
// build: PCAP -> archives of compressed window matrices.

struct BuildCmd {
  std::string input = "-";
  std::string output_dir = ".";
  std::uint64_t n_v = std::uint64_t{1} << 17;
  std::string anon_mode = "off";
  KeyOpts key;
  std::string codec = "zst";
  int level = 19;
  unsigned threads = 1;
  bool include_partial = false;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("build", "construct window matrices from PCAP into archives");
    cmd->add_option("-i,--input", input, "input PCAP path, - for stdin");
    cmd->add_option("-d,--output-dir", output_dir, "directory for archive files");
    cmd->add_option("--nv", n_v, "packets per window (power of two >= 1024)");
    cmd->add_option("--anon", anon_mode, "anonymization mode: off | direct | table");
    cmd->add_option("--codec", codec, "archive codec: zst | zz");
    cmd->add_option("--level", level, "compression level");
    cmd->add_option("--threads", threads, "worker threads (bytes identical for any N)");
    cmd->add_flag("--include-partial", include_partial, "keep the trailing partial window");
    key.attach(cmd);
    cmd->callback([this] { run(); });
  }

  void run() {
    if (n_v < 1024 || (n_v & (n_v - 1)) != 0) {
      throw parameter_error("--nv must be a power of two >= 1024");
    }
    if (anon_mode != "off" && anon_mode != "direct" && anon_mode != "table") {
      throw parameter_error("--anon must be off, direct, or table");
    }
    Codec c;
    if (codec == "zst") {
      c = Codec::kZstd;
    } else if (codec == "zz") {
      c = Codec::kZlib;
    } else {
      throw parameter_error("--codec must be zst or zz");
    }

    ParseStats stats;
    auto records = read_pcap_input(input, &stats);
    auto windows = window_packets(records, n_v);
    if (!include_partial && !windows.empty() && windows.back().is_partial) {
      windows.pop_back();
    }

    std::optional<CryptoPan> pan;
    if (anon_mode != "off") pan.emplace(key.load());

    auto matrices = parallel_map<HypersparseMatrix>(
        windows.size(), threads, [&](std::size_t w) {
          const auto& win = windows[w];
          std::vector<AddrPair> pairs(win.records.size());
          if (anon_mode == "table") {
            std::vector<std::uint32_t> addrs;
            addrs.reserve(win.records.size() * 2);
            for (const auto& r : win.records) {
              addrs.push_back(r.src);
              addrs.push_back(r.dst);
            }
            auto table = AnonTable::build(*pan, addrs);
            for (std::size_t i = 0; i < win.records.size(); ++i) {
              pairs[i] = {table.lookup(win.records[i].src), table.lookup(win.records[i].dst)};
            }
          } else if (anon_mode == "direct") {
            for (std::size_t i = 0; i < win.records.size(); ++i) {
              pairs[i] = {pan->anonymize(win.records[i].src),
                          pan->anonymize(win.records[i].dst)};
            }
          } else {
            for (std::size_t i = 0; i < win.records.size(); ++i) {
              pairs[i] = {win.records[i].src, win.records[i].dst};
            }
          }
          auto m = HypersparseMatrix::from_pairs(pairs);
          m.window_index = win.window_index;
          m.anonymized = anon_mode != "off";
          m.partial_window = win.is_partial;
          return m;
        });

    std::filesystem::create_directories(output_dir);
    std::size_t archives = 0;
    for (std::size_t start = 0; start < matrices.size(); start += kArchiveGroupSize) {
      std::size_t stop = std::min(matrices.size(), start + kArchiveGroupSize);
      std::vector<HypersparseMatrix> group(matrices.begin() + start, matrices.begin() + stop);
      ArchiveOptions opts;
      opts.codec = c;
      opts.level = level;
      opts.threads = threads;
      opts.allow_partial = group.size() < kArchiveGroupSize;
      char name[64];
      std::snprintf(name, sizeof name, "windows_%05zu.tar", archives);
      write_archive(group, (std::filesystem::path(output_dir) / name).string(), opts);
      ++archives;
    }
    std::cout << "build: " << stats.ipv4_packets << " packets, " << stats.skipped_frames
              << " skipped frames, " << matrices.size() << " windows, " << archives
              << " archives\n";
  }
};

// ---------------------------------------------------------------------------
// analyze: archives -> consolidated quantities file.

struct AnalyzeCmd {
  std::vector<std::string> inputs;
  std::string output = "analysis.csv";
  int levels = 11;
  unsigned threads = 1;
  bool include_partial = false;
  RangeOpts ranges;
  KeyOpts key;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "analyze", "compute network quantities per hierarchy level and range pair");
    cmd->add_option("inputs", inputs, "archive files from build")->required();
    cmd->add_option("-o,--output", output, "analysis CSV path (.zst compresses)");
    cmd->add_option("--levels", levels, "max hierarchy levels including leaves");
    cmd->add_option("--threads", threads, "worker threads");
    cmd->add_flag("--include-partial", include_partial, "include partial windows");
    ranges.attach(cmd);
    key.attach(cmd);
    cmd->callback([this] { run(); });
  }

  void run() {
    if (levels < 1) throw parameter_error("--levels must be >= 1");
    std::vector<HypersparseMatrix> leaves;
    for (const auto& path : inputs) {
      for (auto& m : read_archive(path)) {
        if (m.partial_window && !include_partial) continue;
        leaves.push_back(std::move(m));
      }
    }
    if (leaves.empty()) throw parameter_error("no usable windows in the given archives");

    auto part = ranges.partition();
    bool anonymized = leaves.front().anonymized;
    // Anonymized matrices hold anonymized addresses; the range masks must be
    // transported into that space with the same key before classification.
    std::array<RangeMask, kRangeCount> masks{part.mask(Range::kNonroutable),
                                             part.mask(Range::kBogon),
                                             part.mask(Range::kAssigned), part.other_mask()};
    if (anonymized) {
      CryptoPan pan(key.load());
      for (auto& m : masks) m = pan.anonymize_mask(m);
    }

    auto hierarchy = aggregate_hierarchy(leaves, levels - 1, threads);
    std::vector<AnalysisRow> rows;
    for (const auto& level : hierarchy) {
      auto level_rows = parallel_map<std::vector<AnalysisRow>>(
          level.matrices.size(), threads, [&](std::size_t k) {
            std::vector<AnalysisRow> out;
            for (int a = 0; a < kRangeCount; ++a) {
              for (int b = 0; b < kRangeCount; ++b) {
                auto sub = level.matrices[k].extract_subrange(masks[a], masks[b]);
                auto q = compute_quantities(sub);
                for (const auto& nq : kQuantityFields) {
                  AnalysisRow r;
                  r.window_nv = level.window_packets;
                  r.window_index = k;
                  r.src_range = range_name(static_cast<Range>(a));
                  r.dst_range = range_name(static_cast<Range>(b));
                  r.quantity = nq.name;
                  r.value = static_cast<double>(q.*(nq.field));
                  out.push_back(std::move(r));
                }
              }
            }
            return out;
          });
      for (auto& lr : level_rows) rows.insert(rows.end(), lr.begin(), lr.end());
    }
    write_analysis(rows, output);
    std::cout << "analyze: " << leaves.size() << " windows, " << hierarchy.size()
              << " levels, " << rows.size() << " rows -> " << output << "\n";
  }
};

// ---------------------------------------------------------------------------
// focus: endianness discrimination via range-pair focus tables.

struct FocusCmd {
  std::string input = "-";
  std::string endianness = "auto";
  RangeOpts ranges;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("focus", "score range focus and discriminate endianness");
    cmd->add_option("-i,--input", input, "input PCAP path, - for stdin");
    cmd->add_option("--endianness", endianness, "big | little | auto");
    ranges.attach(cmd);
    cmd->callback([this] { run(); });
  }

  void run() {
    if (endianness != "big" && endianness != "little" && endianness != "auto") {
      throw parameter_error("--endianness must be big, little, or auto");
    }
    auto part = ranges.partition();
    auto records = read_pcap_input(input, nullptr);
    auto expected = random_expectation(part);
    auto big = focus_table_from_pairs(records, part);
    auto little = focus_table_from_pairs(byteswap_view(records), part);
    double score_big = focus_score(big, expected);
    double score_little = focus_score(little, expected);

    std::cout << "# focus table big-endian\n" << focus_table_csv(big);
    std::cout << "# focus table little-endian\n" << focus_table_csv(little);
    std::cout << "# random expectation\n" << focus_table_csv(expected);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", score_big);
    std::cout << "score big-endian " << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.6f", score_little);
    std::cout << "score little-endian " << buf << "\n";
    std::string verdict = endianness;
    if (endianness == "auto") verdict = score_big >= score_little ? "big" : "little";
    std::cout << "verdict " << verdict << "-endian\n";
  }
};

// ---------------------------------------------------------------------------
// calibrate: archives -> degree histograms + Zipf-Mandelbrot fits.

struct CalibrateCmd {
  std::vector<std::string> inputs;
  std::string output = "calibration.csv";
  bool include_partial = false;
  RangeOpts ranges;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("calibrate",
                                   "fit heavy-tail models to link-degree histograms");
    cmd->add_option("inputs", inputs, "archive files from build")->required();
    cmd->add_option("-o,--output", output, "histogram CSV path");
    cmd->add_flag("--include-partial", include_partial, "include partial windows");
    ranges.attach(cmd);
    cmd->callback([this] { run(); });
  }

  void run() {
    auto part = ranges.partition();
    HypersparseMatrix total;
    std::uint64_t windows = 0;
    for (const auto& path : inputs) {
      for (auto& m : read_archive(path)) {
        if (m.partial_window && !include_partial) continue;
        total = HypersparseMatrix::add(total, m);
        ++windows;
      }
    }
    if (total.is_empty()) throw parameter_error("no usable windows in the given archives");

    std::ofstream csv(output);
    if (!csv) throw io_error("cannot open " + output + " for writing");
    csv << "window_nv,src_range,dst_range,d,links,fraction,model\n";

    std::vector<std::pair<std::string, std::string>> directions{{"all", "all"}};
    for (int a = 0; a < kRangeCount; ++a) {
      for (int b = 0; b < kRangeCount; ++b) {
        directions.emplace_back(range_name(static_cast<Range>(a)),
                                range_name(static_cast<Range>(b)));
      }
    }
    for (const auto& [src, dst] : directions) {
      auto sub = total.extract_subrange(mask_from_name(part, src), mask_from_name(part, dst));
      if (sub.is_empty()) continue;
      auto hist = degree_histogram(sub);
      hist.direction = src + "->" + dst;
      if (hist.counts.size() < 3) continue;
      auto fit = fit_zipf_mandelbrot(hist);
      for (const auto& [d, n] : hist.counts) {
        char frac[32], model[32];
        std::snprintf(frac, sizeof frac, "%.9g", hist.fraction(d));
        std::snprintf(model, sizeof model, "%.9g",
                      zm_pdf(d, fit.delta, fit.alpha, fit.d_max));
        csv << sub.packet_total() << ',' << src << ',' << dst << ',' << d << ',' << n << ','
            << frac << ',' << model << '\n';
      }
      char line[160];
      std::snprintf(line, sizeof line,
                    "fit src=%s dst=%s delta=%.3f alpha=%.3f d_max=%u error=%.6g\n",
                    src.c_str(), dst.c_str(), fit.delta, fit.alpha, fit.d_max, fit.fit_error);
      std::cout << line;
    }
    if (!csv) throw io_error("calibration write failed: " + output);
    std::cout << "calibrate: " << windows << " windows -> " << output << "\n";
  }
};

// ---------------------------------------------------------------------------
// roc: closed-form detection model curves.

struct RocCmd {
  double c_err = 2.0 / 3.0;
  unsigned grid = 64;
  unsigned n_samp = 8;
  double f = 0.05;
  std::string output = "-";

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("roc", "emit ROC curves for all detection model variants");
    cmd->add_option("--c-err", c_err, "model error parameter in (0,1)");
    cmd->add_option("--grid", grid, "number of interior cut points");
    cmd->add_option("--n-samp", n_samp, "coherent integration length");
    cmd->add_option("--f", f, "model-mismatch match fraction in (0,1]");
    cmd->add_option("-o,--output", output, "output CSV path, - for stdout");
    cmd->callback([this] { run(); });
  }

  void run() {
    if (grid < 1) throw parameter_error("--grid must be >= 1");
    std::vector<double> cuts;
    for (unsigned i = 1; i <= grid; ++i) cuts.push_back(c_err * i / (grid + 1));

    std::ostringstream csv;
    csv << "variant,c_err,c_cut,n_samp,f,p_fa,p_det\n";
    auto emit = [&](const RocPoint& pt) {
      char buf[200];
      std::snprintf(buf, sizeof buf, "%s,%.9g,%.9g,%u,%.9g,%.17g,%.17g\n",
                    roc_variant_name(pt.variant), pt.c_err, pt.c_cut, pt.n_samp, pt.f, pt.p_fa,
                    pt.p_det);
      csv << buf;
    };
    for (RocVariant v : {RocVariant::kBaseline, RocVariant::kCoherent, RocVariant::kMismatchAll,
                         RocVariant::kMismatchNone}) {
      // Exact limit rows at c_cut = 0 and c_cut = c_err bracket the grid so the
      // baseline curve reaches (1,1) and (0,0).
      auto limit = [&](double p_bt, double p_tt, double c_cut) {
        RocPoint pt;
        pt.variant = v;
        pt.c_err = c_err;
        pt.c_cut = c_cut;
        pt.n_samp = n_samp;
        pt.f = f;
        switch (v) {
          case RocVariant::kBaseline:
            pt.p_fa = p_bt;
            pt.p_det = p_tt;
            break;
          case RocVariant::kCoherent:
            pt.p_fa = std::pow(p_bt, n_samp);
            pt.p_det = p_tt;
            break;
          case RocVariant::kMismatchAll:
            pt.p_fa = p_bt * f + 1 - f;
            pt.p_det = p_tt * f + 1 - f;
            break;
          case RocVariant::kMismatchNone:
            pt.p_fa = p_bt * f;
            pt.p_det = p_tt * f;
            break;
        }
        emit(pt);
      };
      limit(1.0, 1.0, 0.0);
      for (const auto& pt : roc_curve(c_err, cuts, v, n_samp, f)) emit(pt);
      limit(0.0, 0.0, c_err);
    }
    if (output == "-") {
      std::cout << csv.str();
    } else {
      std::ofstream out(output);
      if (!out) throw io_error("cannot open " + output + " for writing");
      out << csv.str();
      if (!out) throw io_error("roc write failed: " + output);
    }
  }
};

// ---------------------------------------------------------------------------
// bench: construction throughput with and without anonymization.

struct BenchCmd {
  std::uint64_t count = std::uint64_t{1} << 21;
  std::uint64_t n_v = std::uint64_t{1} << 17;
  std::uint64_t seed = 1;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("bench", "measure matrix construction throughput");
    cmd->add_option("--count", count, "packets to generate in memory");
    cmd->add_option("--nv", n_v, "packets per window");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->callback([this] { run(); });
  }

  double time_construction(const std::vector<PacketRecord>& records, const CryptoPan* pan) {
    auto windows = window_packets(records, n_v);
    auto start = std::chrono::steady_clock::now();
    std::uint64_t nnz_guard = 0;
    for (const auto& win : windows) {
      std::vector<AddrPair> pairs(win.records.size());
      for (std::size_t i = 0; i < win.records.size(); ++i) {
        if (pan) {
          pairs[i] = {pan->anonymize(win.records[i].src), pan->anonymize(win.records[i].dst)};
        } else {
          pairs[i] = {win.records[i].src, win.records[i].dst};
        }
      }
      nnz_guard += HypersparseMatrix::from_pairs(pairs).nnz();
    }
    auto stop = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(stop - start).count();
    if (nnz_guard == 0) throw parameter_error("benchmark produced empty matrices");
    return static_cast<double>(records.size()) / secs;
  }

  void run() {
    SynthSpec spec;
    spec.count = count;
    spec.seed = seed;
    auto records = synth_traffic(spec);

    // The benchmark key is ephemeral and derived from the seed; it never
    // leaves this process.
    AnonKey key;
    for (std::size_t i = 0; i < key.bytes.size(); ++i) {
      key.bytes[i] = static_cast<std::uint8_t>((seed >> (i % 8)) * 151 + i * 41 + 7);
    }
    CryptoPan pan(key);

    double pps_plain = time_construction(records, nullptr);
    double pps_anon = time_construction(records, &pan);
    char buf[96];
    std::snprintf(buf, sizeof buf, "construct_pps %.0f\n", pps_plain);
    std::cout << buf;
    std::snprintf(buf, sizeof buf, "construct_anon_pps %.0f\n", pps_anon);
    std::cout << buf;
    std::snprintf(buf, sizeof buf, "anon_ratio %.3f\n", pps_plain / pps_anon);
    std::cout << buf;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypersparse anonymized traffic-matrix toolkit"};
  app.require_subcommand(1);

  SynthCmd synth;
  BuildCmd build;
  AnalyzeCmd analyze;
  FocusCmd focus;
  CalibrateCmd calibrate;
  RocCmd roc;
  BenchCmd bench;
  synth.attach(app);
  build.attach(app);
  analyze.attach(app);
  focus.attach(app);
  calibrate.attach(app);
  roc.attach(app);
  bench.attach(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const hstm::format_error& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const hstm::io_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
