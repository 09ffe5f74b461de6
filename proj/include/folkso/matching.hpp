#pragma once
// Elasto-adaptive matching between two FSN snapshots: semantic candidate
// pruning (no full similarity matrix), greedy seeding, and local search
// that trades mean semantic score against lattice deformation energy.
// Deformation-aware tag suggestion lives here too.

#include <optional>
#include <string>
#include <vector>

#include "folkso/elastica.hpp"
#include "folkso/embedding.hpp"
#include "folkso/fsn.hpp"

namespace folkso {

struct MatchConfig {
  std::size_t cand_m = 5;       // candidate cap per source node
  double alpha = 1.0;           // weight of the mean semantic score
  double beta = 1.0;            // weight of the normalized deformation energy
  std::size_t max_iters = 25;   // local-improvement passes
  std::size_t stencil_k = 4;    // neighbors for the energy stencil
  ElasticModuli moduli{};
  AcquaintanceWeights weights{};
};

struct Candidate {
  std::size_t source = 0;
  std::size_t target = 0;
  double score = 0.0;
};

struct CandidateStats {
  std::size_t peak_storage = 0;  // max candidate entries held at once
};

// Per source node, at most m targets with the highest positive
// acquaintance score. Peak storage stays <= m * |A| by construction;
// pass stats to observe it.
std::vector<Candidate> candidate_pairs(const FSN& a, const FSN& b,
                                       const Lexicon& lex, std::size_t m,
                                       const AcquaintanceWeights& weights = {},
                                       CandidateStats* stats = nullptr);

struct Correspondence {
  NodeMap mapping;                  // source -> target, injective
  std::vector<double> semantic;     // per-source semantic score, 0 if unmatched
  double deformation_energy = 0.0;  // over matched nodes
  double mean_semantic = 0.0;
  double combined = 0.0;  // alpha * mean_semantic - beta * energy / matched
  std::size_t matched = 0;
  std::vector<double> score_trace;  // combined after seed and after each pass
};

// Greedy seed in descending candidate score, then first-improvement local
// search over retargets, swaps, and drops; a move is accepted only if it
// strictly raises the combined score. Deterministic: ties break on
// (source, target). Throws EmptySnapshot.
//
// The energy stencil uses a pseudo-inverse least-squares gradient so that
// thin (coplanar) embeddings remain matchable; lattices with fewer than
// two nodes carry zero deformation energy.
Correspondence elasto_adaptive_match(const FSN& a, const Embedding& ea,
                                     const FSN& b, const Embedding& eb,
                                     const Lexicon& lex,
                                     const MatchConfig& config = {});

// Tags ranked by acquaintance to the query's matched nodes; the reported
// score is acq * (0.5 + 0.5 * ctr), ties broken by label. The query is
// compared against labels (lexically), topic names, and resource URIs.
// Throws UnknownQuery when nothing matches.
std::vector<std::pair<std::string, double>> suggest_tags(
    const FSN& fsn, const Lexicon& lex, const std::string& query,
    std::size_t k, const AcquaintanceWeights& weights = {});

}  // namespace folkso
