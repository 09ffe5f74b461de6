#pragma once
// Rank agreement scorers: Kendall tau-b, Spearman rho, and the mean
// absolute score / level-difference metrics used by the `score` command.

#include <string>
#include <utility>
#include <vector>

#include "folkso/errors.hpp"

namespace folkso {

// A ranking is a list of (id, score); ids must be unique, scores finite.
struct ScoredRanking {
  std::vector<std::pair<std::string, double>> items;
};

// Historical reference values from the SemEval-2015 hashtag run, kept for
// side-by-side display in score reports. Not reproducible without that
// corpus.
inline constexpr double kReferenceAvgDiff = 0.204;
inline constexpr double kReferenceAvgLevelDiff = 0.824;
inline constexpr double kReferenceKendallTau = 0.6109;
inline constexpr double kReferenceSpearmanRho = 0.8356;

// Tie-corrected Kendall tau-b over all id pairs:
//   (C - D) / sqrt((C + D + Tx)(C + D + Ty))
// with Tx/Ty the pairs tied only in x / only in y. O(n log n).
// Throws MismatchedIds on different id sets, DegenerateInput when n < 2
// or either ranking is entirely tied.
double kendall_tau(const ScoredRanking& x, const ScoredRanking& y);

// Pearson correlation of the rank vectors, ties assigned average ranks.
// Errors as kendall_tau.
double spearman_rho(const ScoredRanking& x, const ScoredRanking& y);

// Mean absolute score difference over the shared ids.
double avg_diff(const ScoredRanking& pred, const ScoredRanking& gold);

// Same, after quantizing scores (clamped to [0,1]) into 5 equal-width
// levels 0..4.
double avg_level_diff(const ScoredRanking& pred, const ScoredRanking& gold);

// Level index used by avg_level_diff: min(4, floor(clamp(s, 0, 1) * 5)).
int score_level(double s);

}  // namespace folkso
