#include "folkso/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

namespace folkso {

LatencyReport summarize_latencies(std::vector<double> samples_ms) {
  if (samples_ms.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no samples to summarize");
  }
  LatencyReport report;
  report.samples_ms = std::move(samples_ms);

  std::vector<double> sorted = report.samples_ms;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  report.min_ms = sorted.front();
  report.max_ms = sorted.back();
  const auto nearest_rank = [&sorted, n](double p) {
    const std::size_t rank = static_cast<std::size_t>(
        std::ceil(p / 100.0 * static_cast<double>(n)));
    return sorted[std::max<std::size_t>(rank, 1) - 1];
  };
  report.p50_ms = nearest_rank(50.0);
  report.p95_ms = nearest_rank(95.0);
  double sum = 0.0;
  for (double s : sorted) sum += s;
  report.mean_ms = sum / static_cast<double>(n);

  constexpr std::size_t kBins = 20;
  const double lo = report.min_ms;
  const double width = (report.max_ms - lo) / static_cast<double>(kBins);
  report.bin_edges.resize(kBins + 1);
  for (std::size_t b = 0; b <= kBins; ++b) {
    report.bin_edges[b] = lo + width * static_cast<double>(b);
  }
  report.counts.assign(kBins, 0);
  for (double s : report.samples_ms) {
    std::size_t idx = 0;
    if (width > 0.0) {
      idx = std::min<std::size_t>(
          kBins - 1, static_cast<std::size_t>((s - lo) / width));
    }
    ++report.counts[idx];
  }
  return report;
}

LatencyReport bench_matching(const Snapshot& snapshot, std::size_t queries,
                             std::uint64_t seed, std::size_t top_k,
                             const MatchConfig& config) {
  if (queries < 1) {
    throw Error(ErrorCode::InvalidArgument, "need at least one query");
  }
  const FSN fsn = snapshot.fsn();
  if (fsn.nodes.empty()) {
    throw Error(ErrorCode::EmptySnapshot, "snapshot has no tags");
  }
  const auto lex = make_lexicon(snapshot.config.lexicon);
  const Embedding base = snapshot.embedding
                             ? *snapshot.embedding
                             : embed(fsn, snapshot.config.seed);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_node(0, fsn.nodes.size() - 1);
  std::uniform_real_distribution<double> jitter(-0.05 * base.cell_size,
                                                0.05 * base.cell_size);

  Embedding perturbed = base;
  std::vector<double> samples_ms;
  samples_ms.reserve(queries);
  for (std::size_t q = 0; q < queries; ++q) {
    const std::string& label = fsn.nodes[pick_node(rng)].label;
    std::uniform_int_distribution<std::size_t> cut(1, label.size());
    const std::string query = "#" + label.substr(0, cut(rng));
    for (std::size_t i = 0; i < base.coords.size(); ++i) {
      perturbed.coords[i] =
          base.coords[i] + Vec3(jitter(rng), jitter(rng), jitter(rng));
    }

    const auto start = std::chrono::steady_clock::now();
    (void)suggest_tags(fsn, *lex, query, top_k, fsn.weights);
    (void)elasto_adaptive_match(fsn, base, fsn, perturbed, *lex, config);
    const auto stop = std::chrono::steady_clock::now();
    samples_ms.push_back(
        std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return summarize_latencies(std::move(samples_ms));
}

}  // namespace folkso
