#include "hstm/quantities.hpp"

#include <algorithm>

namespace hstm {

NetworkQuantities compute_quantities(const HypersparseMatrix& a, bool with_vertex_vectors) {
  NetworkQuantities q;
  q.unique_links = a.nnz();
  q.unique_sources = a.row_count();

  std::unordered_map<std::uint32_t, std::uint64_t> dst_packets;
  std::unordered_map<std::uint32_t, std::uint64_t> dst_fanin;

  const auto& rows = a.row_ids();
  const auto& offs = a.row_offsets();
  const auto& cols = a.col_ids();
  const auto& vals = a.values();

  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::uint64_t row_packets = 0;
    std::uint64_t row_fanout = offs[r + 1] - offs[r];
    for (std::uint64_t k = offs[r]; k < offs[r + 1]; ++k) {
      row_packets += vals[k];
      q.max_link_packets = std::max(q.max_link_packets, vals[k]);
      dst_packets[cols[k]] += vals[k];
      dst_fanin[cols[k]] += 1;
    }
    q.valid_packets += row_packets;
    q.max_source_packets = std::max(q.max_source_packets, row_packets);
    q.max_source_fanout = std::max(q.max_source_fanout, row_fanout);
    if (with_vertex_vectors) {
      q.source_packets[rows[r]] = row_packets;
      q.source_fanout[rows[r]] = row_fanout;
    }
  }

  q.unique_destinations = dst_packets.size();
  for (const auto& [dst, packets] : dst_packets) {
    q.max_destination_packets = std::max(q.max_destination_packets, packets);
  }
  for (const auto& [dst, fanin] : dst_fanin) {
    q.max_destination_fanin = std::max(q.max_destination_fanin, fanin);
  }
  if (with_vertex_vectors) {
    q.destination_packets = std::move(dst_packets);
    q.destination_fanin = std::move(dst_fanin);
  }
  return q;
}

}  // namespace hstm
