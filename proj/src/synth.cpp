#include "folkso/synth.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "folkso/errors.hpp"

namespace folkso::synth {

std::vector<std::size_t> preferential_attachment_degrees(std::size_t n,
                                                         std::size_t m,
                                                         std::uint64_t seed) {
  if (m == 0 || n <= m) {
    throw Error(ErrorCode::InvalidArgument, "need n > m >= 1");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> degree(n, 0);
  // Endpoint multiset; sampling from it is sampling proportional to degree.
  std::vector<std::size_t> endpoints;
  endpoints.reserve(2 * m * n);

  // Seed clique on the first m+1 nodes.
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t j = i + 1; j <= m; ++j) {
      degree[i] += 1;
      degree[j] += 1;
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  }

  for (std::size_t v = m + 1; v < n; ++v) {
    std::vector<std::size_t> targets;
    while (targets.size() < m) {
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      const std::size_t candidate = endpoints[pick(rng)];
      bool duplicate = false;
      for (std::size_t t : targets) duplicate |= (t == candidate);
      if (!duplicate) targets.push_back(candidate);
    }
    for (std::size_t t : targets) {
      degree[v] += 1;
      degree[t] += 1;
      endpoints.push_back(v);
      endpoints.push_back(t);
    }
  }
  return degree;
}

std::vector<TagEvent> generate_events(std::size_t n, std::uint64_t seed) {
  static const char* kTopics[] = {"world-news", "sports",   "technology",
                                  "finance",    "culture"};
  static const char* kStems[] = {"news",  "break", "live",  "daily", "global",
                                 "flash", "talk",  "watch", "pulse", "wire"};
  constexpr std::size_t kNumTopics = 5;
  constexpr std::size_t kTagsPerTopic = 40;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  struct TagProfile {
    std::string label;
    std::string uri;
    std::string topic;
    std::string description;
    double click_propensity;
    double weight;  // popularity
  };

  std::vector<TagProfile> profiles;
  profiles.reserve(kNumTopics * kTagsPerTopic);
  double total_weight = 0.0;
  for (std::size_t t = 0; t < kNumTopics; ++t) {
    for (std::size_t k = 0; k < kTagsPerTopic; ++k) {
      TagProfile p;
      // Stem + topic initial + variant digit: the four digit variants of a
      // stem form a tight prefix family, other pairs stay below threshold.
      p.label = std::string("#") + kStems[k % 10] + kTopics[t][0] +
                std::to_string(k / 10);
      p.uri = std::string("https://example.org/") + kTopics[t] + "/" +
              std::to_string(k);
      p.topic = kTopics[t];
      p.description = std::string("stories about ") + kTopics[t];
      p.click_propensity = 0.05 + 0.9 * unit(rng);
      p.weight = 1.0 / static_cast<double>(k + 1);  // Zipf-ish popularity
      total_weight += p.weight;
      profiles.push_back(std::move(p));
    }
  }

  std::vector<double> cumulative;
  cumulative.reserve(profiles.size());
  double acc = 0.0;
  for (const TagProfile& p : profiles) {
    acc += p.weight / total_weight;
    cumulative.push_back(acc);
  }
  cumulative.back() = 1.0;

  std::vector<TagEvent> events;
  events.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // First sweep the whole vocabulary once so every tag appears, then
    // draw by popularity.
    std::size_t idx;
    if (i < profiles.size()) {
      idx = i;
    } else {
      const double r = unit(rng);
      idx = static_cast<std::size_t>(
          std::lower_bound(cumulative.begin(), cumulative.end(), r) -
          cumulative.begin());
    }
    const TagProfile& p = profiles[idx];
    TagEvent ev;
    ev.label = p.label;
    ev.resource_uri = p.uri;
    ev.topic = p.topic;
    ev.description = p.description;
    ev.clicked = unit(rng) < p.click_propensity;
    ev.timestamp = 1420070400 + static_cast<std::int64_t>(i) * 7;
    events.push_back(std::move(ev));
  }
  return events;
}

}  // namespace folkso::synth
