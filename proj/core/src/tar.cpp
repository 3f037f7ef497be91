#include "hstm/tar.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "hstm/errors.hpp"

namespace hstm {

namespace {

constexpr std::size_t kBlock = 512;

void octal_field(char* dst, std::size_t width, std::uint64_t value) {
  std::snprintf(dst, width, "%0*llo", static_cast<int>(width - 1),
                static_cast<unsigned long long>(value));
}

}  // namespace

void tar_write(std::ostream& out, const std::vector<TarMember>& members) {
  char header[kBlock];
  for (const auto& m : members) {
    if (m.name.size() > 99) throw parameter_error("tar member name too long: " + m.name);
    std::memset(header, 0, kBlock);
    std::memcpy(header, m.name.c_str(), m.name.size());
    octal_field(header + 100, 8, 0644);  // mode
    octal_field(header + 108, 8, 0);     // uid
    octal_field(header + 116, 8, 0);     // gid
    octal_field(header + 124, 12, m.data.size());
    octal_field(header + 136, 12, 0);    // mtime, fixed for deterministic bytes
    std::memset(header + 148, ' ', 8);   // checksum placeholder
    header[156] = '0';                   // regular file
    std::memcpy(header + 257, "ustar", 6);
    header[263] = '0';
    header[264] = '0';

    unsigned checksum = 0;
    for (std::size_t i = 0; i < kBlock; ++i) {
      checksum += static_cast<unsigned char>(header[i]);
    }
    std::snprintf(header + 148, 7, "%06o", checksum);
    header[154] = '\0';
    header[155] = ' ';

    out.write(header, kBlock);
    out.write(reinterpret_cast<const char*>(m.data.data()), m.data.size());
    std::size_t pad = (kBlock - m.data.size() % kBlock) % kBlock;
    std::memset(header, 0, kBlock);
    out.write(header, pad);
  }
  std::memset(header, 0, kBlock);
  out.write(header, kBlock);
  out.write(header, kBlock);
  if (!out) throw io_error("tar write failed");
}

std::vector<TarMember> tar_read(std::istream& in) {
  std::vector<TarMember> members;
  char header[kBlock];
  for (;;) {
    in.read(header, kBlock);
    if (in.gcount() == 0) break;
    if (in.gcount() != static_cast<std::streamsize>(kBlock)) {
      throw format_error("truncated tar header");
    }
    bool all_zero = true;
    for (std::size_t i = 0; i < kBlock && all_zero; ++i) all_zero = header[i] == 0;
    if (all_zero) break;

    TarMember m;
    m.name.assign(header, strnlen(header, 100));
    char size_field[13];
    std::memcpy(size_field, header + 124, 12);
    size_field[12] = '\0';
    std::uint64_t size = std::strtoull(size_field, nullptr, 8);
    if (size > (std::uint64_t{1} << 33)) throw format_error("implausible tar member size");

    m.data.resize(size);
    in.read(reinterpret_cast<char*>(m.data.data()), size);
    if (in.gcount() != static_cast<std::streamsize>(size)) {
      throw format_error("truncated tar member " + m.name);
    }
    std::size_t pad = (kBlock - size % kBlock) % kBlock;
    in.ignore(pad);
    if (header[156] == '0' || header[156] == '\0') members.push_back(std::move(m));
  }
  return members;
}

void tar_write_file(const std::string& path, const std::vector<TarMember>& members) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  tar_write(out, members);
}

std::vector<TarMember> tar_read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  return tar_read(in);
}

}  // namespace hstm
