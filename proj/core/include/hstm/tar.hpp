#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hstm {

struct TarMember {
  std::string name;
  std::vector<std::uint8_t> data;
};

// Minimal ustar writer/reader, enough for archive files readable by standard
// tar tooling. Headers are written with fixed metadata (mtime 0, mode 0644)
// so archive bytes are deterministic.
void tar_write(std::ostream& out, const std::vector<TarMember>& members);
std::vector<TarMember> tar_read(std::istream& in);  // throws format_error

void tar_write_file(const std::string& path, const std::vector<TarMember>& members);
std::vector<TarMember> tar_read_file(const std::string& path);

}  // namespace hstm
