#pragma once
// Seeded synthetic inputs: a preferential-attachment degree sequence for
// scale-free checks and a hashtag event stream for fixtures and benchmarks.

#include <cstdint>
#include <vector>

#include "folkso/ingest.hpp"

namespace folkso::synth {

// Barabasi-Albert graph: n nodes, m edges per arrival, fixed seed.
// Returns the degree sequence.
std::vector<std::size_t> preferential_attachment_degrees(std::size_t n,
                                                         std::size_t m,
                                                         std::uint64_t seed);

// Synthetic hashtag stream over a handful of topics with skewed tag
// popularity and per-tag click propensity. Deterministic for a fixed seed.
std::vector<TagEvent> generate_events(std::size_t n, std::uint64_t seed);

}  // namespace folkso::synth
