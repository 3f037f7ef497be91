#include "hstm/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hstm/archive.hpp"
#include "hstm/errors.hpp"

namespace hstm {

namespace {

const char* kHeader = "window_nv,window_index,src_range,dst_range,quantity,value\n";

std::string format_value(double v) {
  // Integers (the common case) print exactly; everything else round-trips.
  if (v == static_cast<double>(static_cast<long long>(v)) && std::abs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_analysis(const std::vector<AnalysisRow>& rows, const std::string& path) {
  std::ostringstream csv;
  csv << kHeader;
  for (const auto& r : rows) {
    csv << r.window_nv << ',' << r.window_index << ',' << r.src_range << ','
        << r.dst_range << ',' << r.quantity << ',' << format_value(r.value) << '\n';
  }
  std::string text = csv.str();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  if (path.ends_with(".zst")) {
    std::vector<std::uint8_t> raw(text.begin(), text.end());
    auto z = compress_bytes(raw, Codec::kZstd, 19);
    out.write(reinterpret_cast<const char*>(z.data()), z.size());
  } else {
    out << text;
  }
  if (!out) throw io_error("analysis write failed: " + path);
}

std::vector<AnalysisRow> read_analysis(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (path.ends_with(".zst")) {
    std::vector<std::uint8_t> z(text.begin(), text.end());
    auto raw = decompress_bytes(z, Codec::kZstd);
    text.assign(raw.begin(), raw.end());
  }

  std::istringstream lines(text);
  std::string line;
  if (!std::getline(lines, line) || line + "\n" != kHeader) {
    throw format_error("bad analysis header in " + path);
  }
  std::vector<AnalysisRow> rows;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    AnalysisRow r;
    std::string field;
    try {
      std::getline(ls, field, ',');
      r.window_nv = std::stoull(field);
      std::getline(ls, field, ',');
      r.window_index = std::stoull(field);
      std::getline(ls, r.src_range, ',');
      std::getline(ls, r.dst_range, ',');
      std::getline(ls, r.quantity, ',');
      std::getline(ls, field);
      r.value = std::stod(field);
    } catch (const std::exception&) {
      throw format_error("bad analysis row: " + line);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace hstm
