// Matrix construction throughput, with and without prefix-preserving
// anonymization, plus the core window kernels around it.

#include <benchmark/benchmark.h>

#include <vector>

#include "hstm/anon.hpp"
#include "hstm/hierarchy.hpp"
#include "hstm/hmatrix.hpp"
#include "hstm/ingest.hpp"

namespace {

using namespace hstm;

std::vector<PacketRecord> bench_records(std::uint64_t count) {
  SynthSpec spec;
  spec.count = count;
  spec.seed = 42;
  return synth_traffic(spec);
}

AnonKey bench_key() {
  AnonKey k;
  for (std::size_t i = 0; i < k.bytes.size(); ++i) {
    k.bytes[i] = static_cast<std::uint8_t>(i * 61 + 5);
  }
  return k;
}

void BM_ConstructWindow(benchmark::State& state) {
  auto records = bench_records(static_cast<std::uint64_t>(state.range(0)));
  std::vector<AddrPair> pairs(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    pairs[i] = {records[i].src, records[i].dst};
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(HypersparseMatrix::from_pairs(pairs));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(records.size()));
}
BENCHMARK(BM_ConstructWindow)->Arg(1 << 17)->Arg(1 << 20);

void BM_ConstructWindowAnonymized(benchmark::State& state) {
  auto records = bench_records(static_cast<std::uint64_t>(state.range(0)));
  CryptoPan pan(bench_key());
  std::vector<AddrPair> pairs(records.size());
  for (auto _ : state) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      pairs[i] = {pan.anonymize(records[i].src), pan.anonymize(records[i].dst)};
    }
    benchmark::DoNotOptimize(HypersparseMatrix::from_pairs(pairs));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(records.size()));
}
BENCHMARK(BM_ConstructWindowAnonymized)->Arg(1 << 17)->Arg(1 << 20);

void BM_AnonymizeAddress(benchmark::State& state) {
  CryptoPan pan(bench_key());
  std::uint32_t addr = 0x12345678;
  for (auto _ : state) {
    addr = pan.anonymize(addr);
    benchmark::DoNotOptimize(addr);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AnonymizeAddress);

void BM_HierarchyAggregate(benchmark::State& state) {
  auto records = bench_records(1 << 20);
  auto windows = window_packets(records, 1 << 15);
  std::vector<HypersparseMatrix> leaves;
  for (const auto& w : windows) {
    std::vector<AddrPair> pairs(w.records.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      pairs[i] = {w.records[i].src, w.records[i].dst};
    }
    leaves.push_back(HypersparseMatrix::from_pairs(pairs));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        aggregate_hierarchy(leaves, 5, static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_HierarchyAggregate)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
