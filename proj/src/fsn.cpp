#include "folkso/fsn.hpp"

#include <algorithm>
#include <cmath>

namespace folkso {

double PrefixLexicon::similarity(std::string_view a, std::string_view b) const {
  if (a == b) return a.empty() ? 0.0 : 1.0;
  const std::size_t max_len = std::max(a.size(), b.size());
  if (max_len == 0) return 0.0;
  std::size_t lcp = 0;
  const std::size_t limit = std::min(a.size(), b.size());
  while (lcp < limit && a[lcp] == b[lcp]) ++lcp;
  return static_cast<double>(lcp) / static_cast<double>(max_len);
}

std::unique_ptr<Lexicon> make_lexicon(const std::string& name) {
  if (name == "prefix") return std::make_unique<PrefixLexicon>();
  throw Error(ErrorCode::InvalidArgument, "unknown lexicon '" + name + "'");
}

namespace {

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;  // identical-empty
  if (a.empty() || b.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.contains(x);
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

double acquaintance_score(const FDTag& a, const FDTag& b, const Lexicon& lex,
                          const AcquaintanceWeights& w) {
  const double lexical = lex.similarity(a.label, b.label);
  const double topical = jaccard(a.context.topics, b.context.topics);
  const double resource = a.resource.uri == b.resource.uri ? 1.0 : 0.0;
  // Full agreement must score exactly 1 so a theta of 1.0 keeps it; the
  // weighted sum alone lands one ulp short.
  if (lexical == 1.0 && topical == 1.0 && resource == 1.0) return 1.0;
  return w.label * lexical + w.topic * topical + w.resource * resource;
}

std::vector<std::size_t> FSN::degrees() const {
  std::vector<std::size_t> deg(nodes.size(), 0);
  for (const FsnEdge& e : edges) {
    ++deg[e.i];
    ++deg[e.j];
  }
  return deg;
}

std::vector<std::vector<std::size_t>> FSN::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (const FsnEdge& e : edges) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  return adj;
}

FSN build_fsn(std::vector<FDTag> tags, const Lexicon& lex, double theta,
              const AcquaintanceWeights& weights) {
  if (tags.empty()) {
    throw Error(ErrorCode::EmptyTagSet, "cannot build an FSN from zero tags");
  }
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "theta must be in (0, 1]");
  }
  FSN fsn;
  fsn.nodes = std::move(tags);
  fsn.theta = theta;
  fsn.weights = weights;
  const std::size_t n = fsn.nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = acquaintance_score(fsn.nodes[i], fsn.nodes[j], lex, weights);
      if (w >= theta) fsn.edges.push_back({i, j, w});
    }
  }
  return fsn;
}

std::set<std::size_t> detect_hubs(const FSN& fsn, double percentile) {
  if (fsn.nodes.empty()) {
    throw Error(ErrorCode::InvalidArgument, "FSN has no nodes");
  }
  if (!(percentile > 0.0 && percentile < 100.0)) {
    throw Error(ErrorCode::InvalidArgument, "percentile must be in (0, 100)");
  }
  const std::vector<std::size_t> deg = fsn.degrees();
  std::vector<std::size_t> sorted = deg;
  std::sort(sorted.begin(), sorted.end());
  // Nearest-rank: value at ceil(p/100 * n), 1-based.
  const std::size_t rank = static_cast<std::size_t>(
      std::ceil(percentile / 100.0 * static_cast<double>(sorted.size())));
  const std::size_t cutoff = sorted[std::max<std::size_t>(rank, 1) - 1];
  std::set<std::size_t> hubs;
  for (std::size_t i = 0; i < deg.size(); ++i) {
    if (deg[i] > cutoff) hubs.insert(i);
  }
  return hubs;
}

std::map<std::size_t, std::size_t> degree_distribution(const FSN& fsn) {
  std::map<std::size_t, std::size_t> dist;
  for (std::size_t d : fsn.degrees()) ++dist[d];
  return dist;
}

double fit_power_law(const std::vector<std::size_t>& degrees,
                     std::size_t k_min, double alpha_max) {
  if (k_min == 0) {
    throw Error(ErrorCode::InvalidArgument, "k_min must be positive");
  }
  double log_sum = 0.0;
  std::size_t tail = 0;
  const double shift = static_cast<double>(k_min) - 0.5;
  for (std::size_t k : degrees) {
    if (k >= k_min) {
      log_sum += std::log(static_cast<double>(k) / shift);
      ++tail;
    }
  }
  if (tail < 2) {
    throw Error(ErrorCode::InsufficientTail,
                "need at least 2 degrees >= k_min, have " + std::to_string(tail));
  }
  const double alpha = 1.0 + static_cast<double>(tail) / log_sum;
  return std::min(alpha, alpha_max);
}

}  // namespace folkso
