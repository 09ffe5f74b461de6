#pragma once
// The Folksodriven Structure Network: FD tags as nodes, weighted semantic
// acquaintance relations as undirected edges, plus topology diagnostics
// (hubs, degree distribution, power-law tail fit).

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "folkso/core.hpp"
#include "folkso/lexicon.hpp"

namespace folkso {

// Mixing weights for the acquaintance score; must sum to 1.
struct AcquaintanceWeights {
  double label = 0.6;
  double topic = 0.3;
  double resource = 0.1;

  bool operator==(const AcquaintanceWeights&) const = default;
};

struct FsnEdge {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  double weight = 0.0;

  bool operator==(const FsnEdge&) const = default;
};

struct FSN {
  std::vector<FDTag> nodes;
  std::vector<FsnEdge> edges;  // stored once with i < j, weight >= theta
  double theta = 0.5;
  AcquaintanceWeights weights;

  std::vector<std::size_t> degrees() const;
  std::vector<std::vector<std::size_t>> adjacency() const;
};

// Weighted blend of lexical similarity, topic-set Jaccard, and a
// same-resource indicator. Symmetric, in [0,1].
double acquaintance_score(const FDTag& a, const FDTag& b, const Lexicon& lex,
                          const AcquaintanceWeights& weights = {});

// Keeps every pair whose score reaches theta (0 < theta <= 1).
// Throws EmptyTagSet.
FSN build_fsn(std::vector<FDTag> tags, const Lexicon& lex, double theta,
              const AcquaintanceWeights& weights = {});

// Nodes whose degree strictly exceeds the nearest-rank p-th percentile of
// the degree sequence; uniform-degree graphs therefore have no hubs.
std::set<std::size_t> detect_hubs(const FSN& fsn, double percentile);

// Map degree -> node count; counts sum to the node count.
std::map<std::size_t, std::size_t> degree_distribution(const FSN& fsn);

// Continuous-approximation MLE for a power-law tail:
//   alpha = 1 + n / sum(ln(k_i / (k_min - 0.5)))  over degrees >= k_min,
// capped at alpha_max for degenerate tails. Throws InsufficientTail when
// fewer than 2 degrees reach k_min.
double fit_power_law(const std::vector<std::size_t>& degrees,
                     std::size_t k_min, double alpha_max = 10.0);

}  // namespace folkso
