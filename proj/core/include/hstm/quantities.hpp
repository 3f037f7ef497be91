#pragma once

#include <cstdint>
#include <unordered_map>

#include "hstm/hmatrix.hpp"

namespace hstm {

// Scalar aggregates of a traffic matrix, plus optional sparse per-vertex
// vectors. Zero-norm semantics: each nonzero cell counts once.
struct NetworkQuantities {
  std::uint64_t valid_packets = 0;
  std::uint64_t unique_links = 0;
  std::uint64_t max_link_packets = 0;
  std::uint64_t unique_sources = 0;
  std::uint64_t max_source_packets = 0;
  std::uint64_t max_source_fanout = 0;
  std::uint64_t unique_destinations = 0;
  std::uint64_t max_destination_packets = 0;
  std::uint64_t max_destination_fanin = 0;

  // Populated only when requested.
  std::unordered_map<std::uint32_t, std::uint64_t> source_packets;
  std::unordered_map<std::uint32_t, std::uint64_t> source_fanout;
  std::unordered_map<std::uint32_t, std::uint64_t> destination_packets;
  std::unordered_map<std::uint32_t, std::uint64_t> destination_fanin;

  bool operator==(const NetworkQuantities& o) const {
    return valid_packets == o.valid_packets && unique_links == o.unique_links &&
           max_link_packets == o.max_link_packets && unique_sources == o.unique_sources &&
           max_source_packets == o.max_source_packets &&
           max_source_fanout == o.max_source_fanout &&
           unique_destinations == o.unique_destinations &&
           max_destination_packets == o.max_destination_packets &&
           max_destination_fanin == o.max_destination_fanin;
  }
};

NetworkQuantities compute_quantities(const HypersparseMatrix& a,
                                     bool with_vertex_vectors = false);

}  // namespace hstm
