#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "folkso/bench.hpp"
#include "helpers.hpp"

using namespace folkso;
using testutil::code_of;
using testutil::tag;

namespace {

Snapshot bench_snapshot() {
  Snapshot s;
  // Two prefix families over distinct resources, enough for suggestions.
  for (int i = 0; i < 6; ++i) {
    const std::string stem = i < 3 ? "#news" : "#game";
    s.tags.push_back(tag(stem + std::to_string(i), {"t" + std::to_string(i % 2)},
                         "u:" + std::to_string(i), i % 3, 10));
  }
  auto fsn = build_fsn(s.tags, PrefixLexicon{}, 0.5);
  s.tags = fsn.nodes;
  s.edges = fsn.edges;
  s.embedding = embed(fsn, 42);
  return s;
}

}  // namespace

TEST_CASE("summarize_latencies on a single sample") {
  auto r = summarize_latencies({2.5});
  CHECK(r.samples_ms == std::vector<double>{2.5});
  CHECK(r.min_ms == 2.5);
  CHECK(r.p50_ms == 2.5);
  CHECK(r.p95_ms == 2.5);
  CHECK(r.max_ms == 2.5);
  CHECK(r.mean_ms == doctest::Approx(2.5));
  REQUIRE(r.counts.size() == 20);
  REQUIRE(r.bin_edges.size() == 21);
  CHECK(std::accumulate(r.counts.begin(), r.counts.end(), std::size_t{0}) == 1);
}

TEST_CASE("summarize_latencies histogram counts every sample once") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> ms(0.01, 50.0);
  for (int round = 0; round < 25; ++round) {
    const std::size_t n = 1 + rng() % 1000;
    std::vector<double> samples;
    for (std::size_t i = 0; i < n; ++i) samples.push_back(ms(rng));
    auto r = summarize_latencies(samples);
    CHECK(std::accumulate(r.counts.begin(), r.counts.end(), std::size_t{0}) == n);
    CHECK(r.min_ms <= r.p50_ms);
    CHECK(r.p50_ms <= r.p95_ms);
    CHECK(r.p95_ms <= r.max_ms);
    CHECK(r.bin_edges.front() == doctest::Approx(r.min_ms));
    CHECK(r.bin_edges.back() >= r.max_ms - 1e-12);
    CHECK(std::is_sorted(r.bin_edges.begin(), r.bin_edges.end()));
  }
}

TEST_CASE("summarize_latencies rejects an empty sample set") {
  CHECK(code_of([] { summarize_latencies({}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("bench_matching runs seeded queries end to end") {
  auto snapshot = bench_snapshot();
  auto report = bench_matching(snapshot, 5, 42);
  CHECK(report.samples_ms.size() == 5);
  CHECK(std::accumulate(report.counts.begin(), report.counts.end(), std::size_t{0}) == 5);
  for (double s : report.samples_ms) CHECK(s >= 0.0);
  CHECK(report.p50_ms <= report.p95_ms);
}

TEST_CASE("bench_matching guards") {
  auto snapshot = bench_snapshot();
  CHECK(code_of([&] { bench_matching(snapshot, 0, 42); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { bench_matching(Snapshot{}, 3, 42); }) == ErrorCode::EmptySnapshot);
}
