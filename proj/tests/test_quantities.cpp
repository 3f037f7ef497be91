#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "hstm/hmatrix.hpp"
#include "hstm/quantities.hpp"

using namespace hstm;

namespace {

// Brute-force oracle over the raw pair list; no matrix code involved.
NetworkQuantities oracle(const std::vector<AddrPair>& pairs) {
  NetworkQuantities q;
  std::map<AddrPair, std::uint64_t> link;
  std::map<std::uint32_t, std::uint64_t> src_pkts, dst_pkts;
  std::map<std::uint32_t, std::set<std::uint32_t>> fanout, fanin;
  for (const auto& [s, d] : pairs) {
    link[{s, d}] += 1;
    src_pkts[s] += 1;
    dst_pkts[d] += 1;
    fanout[s].insert(d);
    fanin[d].insert(s);
  }
  q.valid_packets = pairs.size();
  q.unique_links = link.size();
  for (const auto& [k, v] : link) q.max_link_packets = std::max(q.max_link_packets, v);
  q.unique_sources = src_pkts.size();
  for (const auto& [k, v] : src_pkts) q.max_source_packets = std::max(q.max_source_packets, v);
  for (const auto& [k, v] : fanout) {
    q.max_source_fanout = std::max<std::uint64_t>(q.max_source_fanout, v.size());
  }
  q.unique_destinations = dst_pkts.size();
  for (const auto& [k, v] : dst_pkts) {
    q.max_destination_packets = std::max(q.max_destination_packets, v);
  }
  for (const auto& [k, v] : fanin) {
    q.max_destination_fanin = std::max<std::uint64_t>(q.max_destination_fanin, v.size());
  }
  return q;
}

}  // namespace

TEST_SUITE("quantities") {

TEST_CASE("worked example") {
  std::vector<AddrPair> pairs{{1, 2}, {1, 2}, {1, 3}, {4, 2}};
  auto q = compute_quantities(HypersparseMatrix::from_pairs(pairs));
  CHECK(q.valid_packets == 4);
  CHECK(q.unique_links == 3);
  CHECK(q.max_link_packets == 2);
  CHECK(q.unique_sources == 2);
  CHECK(q.max_source_packets == 3);
  CHECK(q.max_source_fanout == 2);
  CHECK(q.unique_destinations == 2);
  CHECK(q.max_destination_packets == 3);
  CHECK(q.max_destination_fanin == 2);
}

TEST_CASE("empty and singleton") {
  auto qe = compute_quantities(HypersparseMatrix::from_pairs({}));
  CHECK(qe.valid_packets == 0);
  CHECK(qe.unique_links == 0);
  CHECK(qe.max_destination_fanin == 0);

  std::vector<AddrPair> pairs(12, {5, 6});
  auto q = compute_quantities(HypersparseMatrix::from_pairs(pairs));
  CHECK(q.unique_links == 1);
  CHECK(q.unique_sources == 1);
  CHECK(q.unique_destinations == 1);
  CHECK(q.max_link_packets == 12);
  CHECK(q.max_source_packets == 12);
  CHECK(q.max_destination_packets == 12);
  CHECK(q.max_source_fanout == 1);
  CHECK(q.max_destination_fanin == 1);
}

TEST_CASE("matches brute-force oracle (property)") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<AddrPair> pairs(rng() % (1 << 10));
    for (auto& p : pairs) {
      p.first = static_cast<std::uint32_t>(rng() % 128);
      p.second = static_cast<std::uint32_t>(rng() % 128);
    }
    CHECK(compute_quantities(HypersparseMatrix::from_pairs(pairs)) == oracle(pairs));
  }
}

TEST_CASE("scalars invariant under simultaneous relabeling") {
  std::mt19937_64 rng(103);
  std::vector<AddrPair> pairs(2000);
  for (auto& p : pairs) {
    p.first = static_cast<std::uint32_t>(rng() % 256);
    p.second = static_cast<std::uint32_t>(rng() % 256);
  }
  auto base = compute_quantities(HypersparseMatrix::from_pairs(pairs));
  for (int trial = 0; trial < 20; ++trial) {
    // x -> a*x + b mod 2^32 with odd a is a bijection of the index space.
    std::uint32_t a = static_cast<std::uint32_t>(rng()) | 1u;
    std::uint32_t b = static_cast<std::uint32_t>(rng());
    std::vector<AddrPair> relabeled(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      relabeled[i] = {a * pairs[i].first + b, a * pairs[i].second + b};
    }
    CHECK(compute_quantities(HypersparseMatrix::from_pairs(relabeled)) == base);
  }
}

TEST_CASE("vertex vector sums equal valid packets") {
  std::mt19937_64 rng(107);
  std::vector<AddrPair> pairs(5000);
  for (auto& p : pairs) {
    p.first = static_cast<std::uint32_t>(rng() % 64);
    p.second = static_cast<std::uint32_t>(rng() % 64);
  }
  auto q = compute_quantities(HypersparseMatrix::from_pairs(pairs), true);
  std::uint64_t src_sum = 0, dst_sum = 0;
  for (const auto& [v, n] : q.source_packets) src_sum += n;
  for (const auto& [v, n] : q.destination_packets) dst_sum += n;
  CHECK(src_sum == q.valid_packets);
  CHECK(dst_sum == q.valid_packets);
  CHECK(q.source_fanout.size() == q.unique_sources);
  CHECK(q.destination_fanin.size() == q.unique_destinations);
}

}  // TEST_SUITE
