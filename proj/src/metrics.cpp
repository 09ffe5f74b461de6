#include "folkso/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace folkso {

namespace {

// Pair y-scores with x-scores in x's id order. Validates id sets.
std::vector<std::pair<double, double>> align(const ScoredRanking& x,
                                             const ScoredRanking& y) {
  std::unordered_map<std::string, double> lookup;
  lookup.reserve(y.items.size());
  for (const auto& [id, score] : y.items) {
    if (!std::isfinite(score)) {
      throw Error(ErrorCode::InvalidArgument, "non-finite score for id '" + id + "'");
    }
    if (!lookup.emplace(id, score).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate id '" + id + "'");
    }
  }
  if (x.items.size() != y.items.size()) {
    throw Error(ErrorCode::MismatchedIds, "rankings differ in size");
  }
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(x.items.size());
  std::unordered_map<std::string, bool> seen;
  seen.reserve(x.items.size());
  for (const auto& [id, score] : x.items) {
    if (!std::isfinite(score)) {
      throw Error(ErrorCode::InvalidArgument, "non-finite score for id '" + id + "'");
    }
    if (!seen.emplace(id, true).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate id '" + id + "'");
    }
    auto it = lookup.find(id);
    if (it == lookup.end()) {
      throw Error(ErrorCode::MismatchedIds, "id '" + id + "' missing from second ranking");
    }
    pairs.emplace_back(score, it->second);
  }
  return pairs;
}

bool all_tied(const std::vector<std::pair<double, double>>& pairs, bool second) {
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    const double a = second ? pairs[i].second : pairs[i].first;
    const double b = second ? pairs[0].second : pairs[0].first;
    if (a != b) return false;
  }
  return true;
}

// Merge sort counting strict inversions; `values` ends up sorted.
std::int64_t count_inversions(std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<double> buffer(n);
  std::int64_t inversions = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
      const std::size_t mid = lo + width;
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (values[i] <= values[j]) {
          buffer[k++] = values[i++];
        } else {
          inversions += static_cast<std::int64_t>(mid - i);
          buffer[k++] = values[j++];
        }
      }
      while (i < mid) buffer[k++] = values[i++];
      while (j < hi) buffer[k++] = values[j++];
      std::copy(buffer.begin() + static_cast<long>(lo),
                buffer.begin() + static_cast<long>(hi),
                values.begin() + static_cast<long>(lo));
    }
  }
  return inversions;
}

std::int64_t choose2(std::int64_t g) { return g * (g - 1) / 2; }

// Average ranks (1-based) with ties sharing the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& scores) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&scores](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double kendall_tau(const ScoredRanking& x, const ScoredRanking& y) {
  auto pairs = align(x, y);
  const std::int64_t n = static_cast<std::int64_t>(pairs.size());
  if (n < 2 || all_tied(pairs, false) || all_tied(pairs, true)) {
    throw Error(ErrorCode::DegenerateInput, "ranking carries no order information");
  }

  // Knight's algorithm: sort by (x, y), then discordant pairs are exactly
  // the inversions of the y sequence.
  std::sort(pairs.begin(), pairs.end());
  std::int64_t tied_x = 0;
  std::int64_t tied_both = 0;
  for (std::int64_t i = 0; i < n;) {
    std::int64_t j = i;
    while (j + 1 < n && pairs[j + 1].first == pairs[i].first) ++j;
    tied_x += choose2(j - i + 1);
    for (std::int64_t a = i; a <= j;) {
      std::int64_t b = a;
      while (b + 1 <= j && pairs[b + 1].second == pairs[a].second) ++b;
      tied_both += choose2(b - a + 1);
      a = b + 1;
    }
    i = j + 1;
  }

  std::vector<double> ys;
  ys.reserve(pairs.size());
  for (const auto& p : pairs) ys.push_back(p.second);
  const std::int64_t discordant = count_inversions(ys);
  std::int64_t tied_y = 0;
  for (std::int64_t i = 0; i < n;) {
    std::int64_t j = i;
    while (j + 1 < n && ys[static_cast<std::size_t>(j + 1)] == ys[static_cast<std::size_t>(i)]) ++j;
    tied_y += choose2(j - i + 1);
    i = j + 1;
  }

  const std::int64_t total = choose2(n);
  const std::int64_t concordant_plus_discordant = total - tied_x - tied_y + tied_both;
  const std::int64_t numerator = concordant_plus_discordant - 2 * discordant;
  const double denom = std::sqrt(static_cast<double>(total - tied_x)) *
                       std::sqrt(static_cast<double>(total - tied_y));
  // The square roots can leave the quotient an ulp outside [-1, 1].
  return std::clamp(static_cast<double>(numerator) / denom, -1.0, 1.0);
}

double spearman_rho(const ScoredRanking& x, const ScoredRanking& y) {
  auto pairs = align(x, y);
  const std::size_t n = pairs.size();
  if (n < 2 || all_tied(pairs, false) || all_tied(pairs, true)) {
    throw Error(ErrorCode::DegenerateInput, "ranking carries no order information");
  }
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = pairs[i].first;
    ys[i] = pairs[i].second;
  }
  const std::vector<double> rx = average_ranks(xs);
  const std::vector<double> ry = average_ranks(ys);
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += rx[i];
    mean_y += ry[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double cov = 0.0, var_x = 0.0, var_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = rx[i] - mean_x;
    const double dy = ry[i] - mean_y;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  return std::clamp(cov / (std::sqrt(var_x) * std::sqrt(var_y)), -1.0, 1.0);
}

double avg_diff(const ScoredRanking& pred, const ScoredRanking& gold) {
  const auto pairs = align(pred, gold);
  if (pairs.empty()) {
    throw Error(ErrorCode::DegenerateInput, "empty rankings");
  }
  double sum = 0.0;
  for (const auto& [p, g] : pairs) sum += std::abs(p - g);
  return sum / static_cast<double>(pairs.size());
}

int score_level(double s) {
  const double clamped = std::clamp(s, 0.0, 1.0);
  return std::min(4, static_cast<int>(std::floor(clamped * 5.0)));
}

double avg_level_diff(const ScoredRanking& pred, const ScoredRanking& gold) {
  const auto pairs = align(pred, gold);
  if (pairs.empty()) {
    throw Error(ErrorCode::DegenerateInput, "empty rankings");
  }
  double sum = 0.0;
  for (const auto& [p, g] : pairs) {
    sum += std::abs(score_level(p) - score_level(g));
  }
  return sum / static_cast<double>(pairs.size());
}

}  // namespace folkso
