#pragma once
// Latency benchmark: replay seeded hashtag queries against suggestion and
// matching, and report the per-query wall-clock distribution.

#include <cstdint>
#include <vector>

#include "folkso/matching.hpp"
#include "folkso/snapshot.hpp"

namespace folkso {

struct LatencyReport {
  std::vector<double> samples_ms;      // per query, issue order
  std::vector<double> bin_edges;      // 21 edges bounding 20 equal bins
  std::vector<std::size_t> counts;    // 20 bins, sums to sample count
  double min_ms = 0.0;
  double p50_ms = 0.0;
  double p95_ms = 0.0;
  double max_ms = 0.0;
  double mean_ms = 0.0;
};

// Histogram (20 equal-width bins) and nearest-rank summary over samples.
// Throws InvalidArgument on an empty sample set.
LatencyReport summarize_latencies(std::vector<double> samples_ms);

// Issues `queries` seeded hashtag queries: each runs suggest_tags on the
// snapshot and elasto_adaptive_match against a slightly perturbed copy of
// its embedding, timing the pair. The query set and perturbations are
// deterministic for a fixed seed; the timings are not.
// Throws InvalidArgument (queries < 1) and whatever matching raises.
LatencyReport bench_matching(const Snapshot& snapshot, std::size_t queries,
                             std::uint64_t seed, std::size_t top_k = 10,
                             const MatchConfig& config = {});

}  // namespace folkso
