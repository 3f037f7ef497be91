#pragma once

#include <stdexcept>
#include <string>

namespace hstm {

// Malformed input bytes (bad PCAP header, corrupt archive member, ...).
class format_error : public std::runtime_error {
 public:
  explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// Caller passed an out-of-contract value.
class parameter_error : public std::invalid_argument {
 public:
  explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hstm
