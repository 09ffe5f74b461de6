#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "folkso/matching.hpp"
#include "helpers.hpp"

using namespace folkso;
using testutil::code_of;
using testutil::tag;

namespace {

struct Pair {
  FSN fsn;
  Embedding emb;
};

// A well-spread FSN whose embedding is replaced by an explicit 3D layout
// (matching only needs coords, not the spectral pipeline).
Pair snapshot_of(const std::vector<FDTag>& tags, const std::vector<Vec3>& coords) {
  Pair p;
  p.fsn.nodes = tags;
  p.emb.coords = coords;
  p.emb.cell_size = 1.0;
  p.emb.cells = assign_cells(coords, 1.0);
  return p;
}

std::vector<Vec3> tetra_coords(std::size_t n) {
  // Corners of unit-ish simplices, spread to keep stencils well conditioned.
  std::vector<Vec3> base = {{0, 0, 0}, {1, 0, 0},     {0.5, 0.9, 0},
                            {0.5, 0.3, 0.8}, {1.5, 0.7, 0.4}, {-0.4, 0.6, 0.5}};
  return {base.begin(), base.begin() + n};
}

}  // namespace

TEST_CASE("candidate_pairs self-match, disjoint vocab, truncation") {
  PrefixLexicon lex;
  std::vector<FDTag> tags = {tag("#alpha", {"t"}, "u:1"), tag("#beta", {"t"}, "u:2"),
                             tag("#gamma", {"t"}, "u:3")};
  FSN a;
  a.nodes = tags;

  SUBCASE("identical snapshots at m=1 pick the twin") {
    auto cands = candidate_pairs(a, a, lex, 1);
    REQUIRE(cands.size() == 3);
    for (const auto& c : cands) {
      CHECK(c.source == c.target);
      CHECK(c.score == 1.0);
    }
  }

  SUBCASE("disjoint vocabularies yield nothing") {
    FSN b;
    b.nodes = {tag("#zzz", {"x"}, "u:9"), tag("#qqq", {"y"}, "u:8")};
    CHECK(candidate_pairs(a, b, lex, 3).empty());
  }

  SUBCASE("m=2 keeps the top two scores") {
    // Against "#ab": "#ab" scores highest, then "#ax", then "#b..".
    FSN src;
    src.nodes = {tag("#ab", {"t"}, "u:1")};
    FSN dst;
    dst.nodes = {tag("#b", {"q"}, "u:7"), tag("#ab", {"t"}, "u:1"),
                 tag("#ax", {"t"}, "u:2")};
    auto cands = candidate_pairs(src, dst, lex, 2);
    REQUIRE(cands.size() == 2);
    CHECK(cands[0].target == 1);
    CHECK(cands[0].score == 1.0);
    CHECK(cands[1].target == 2);
  }
}

TEST_CASE("candidate_pairs peak storage stays under m * |A|") {
  PrefixLexicon lex;
  FSN big;
  FSN other;
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10000; ++i) {
    big.nodes.push_back(tag("#w" + std::string(1, 'a' + static_cast<char>(rng() % 26)) +
                                std::to_string(i % 500),
                            {"t" + std::to_string(i % 7)}, "u:" + std::to_string(i % 911)));
  }
  for (int i = 0; i < 400; ++i) {
    other.nodes.push_back(tag("#w" + std::string(1, 'a' + static_cast<char>(rng() % 26)) +
                                  std::to_string(i % 500),
                              {"t" + std::to_string(i % 7)}, "u:" + std::to_string(i % 911)));
  }
  CandidateStats stats;
  const std::size_t m = 3;
  auto cands = candidate_pairs(big, other, lex, m, {}, &stats);
  CHECK(cands.size() <= m * big.nodes.size());
  CHECK(stats.peak_storage <= m * big.nodes.size());
  CHECK(stats.peak_storage > 0);
}

TEST_CASE("elasto_adaptive_match maps identical snapshots to the identity") {
  PrefixLexicon lex;
  std::vector<FDTag> tags = {tag("#alpha", {"t"}, "u:1"), tag("#beta", {"t"}, "u:2"),
                             tag("#gamma", {"t"}, "u:3"), tag("#delta", {"t"}, "u:4")};
  auto a = snapshot_of(tags, tetra_coords(4));

  MatchConfig cfg;
  auto corr = elasto_adaptive_match(a.fsn, a.emb, a.fsn, a.emb, lex, cfg);
  REQUIRE(corr.mapping.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    REQUIRE(corr.mapping[i].has_value());
    CHECK(*corr.mapping[i] == i);
    CHECK(corr.semantic[i] == 1.0);
  }
  CHECK(corr.matched == 4);
  CHECK(corr.deformation_energy == doctest::Approx(0.0));
  CHECK(corr.mean_semantic == doctest::Approx(1.0));
  CHECK(corr.combined == doctest::Approx(cfg.alpha));
}

TEST_CASE("elasto_adaptive_match shrugs off rigid translation") {
  PrefixLexicon lex;
  std::vector<FDTag> tags = {tag("#alpha", {"t"}, "u:1"), tag("#beta", {"t"}, "u:2"),
                             tag("#gamma", {"t"}, "u:3"), tag("#delta", {"t"}, "u:4"),
                             tag("#edge", {"t"}, "u:5")};
  auto a = snapshot_of(tags, tetra_coords(5));
  auto b = a;
  for (auto& c : b.emb.coords) c += Vec3(3.0, -1.0, 0.5);
  b.emb.cells = assign_cells(b.emb.coords, b.emb.cell_size);

  auto corr = elasto_adaptive_match(a.fsn, a.emb, b.fsn, b.emb, lex, {});
  for (std::size_t i = 0; i < 5; ++i) {
    REQUIRE(corr.mapping[i].has_value());
    CHECK(*corr.mapping[i] == i);
  }
  CHECK(corr.deformation_energy <= 1e-10);
}

TEST_CASE("elasto_adaptive_match recovers a label permutation") {
  PrefixLexicon lex;
  std::vector<FDTag> tags = {tag("#alpha", {"t"}, "u:1"), tag("#beta", {"t"}, "u:2"),
                             tag("#gamma", {"t"}, "u:3"), tag("#delta", {"t"}, "u:4")};
  const std::size_t n = tags.size();
  auto a = snapshot_of(tags, tetra_coords(n));
  // B holds the same labels in a different node order.
  std::vector<std::size_t> perm = {2, 0, 3, 1};
  std::vector<FDTag> permuted(n, tags[0]);
  auto coords = tetra_coords(n);
  std::vector<Vec3> permuted_coords(n);
  for (std::size_t i = 0; i < n; ++i) {
    permuted[perm[i]] = tags[i];
    permuted_coords[perm[i]] = coords[i];
  }
  auto b = snapshot_of(permuted, permuted_coords);

  auto corr = elasto_adaptive_match(a.fsn, a.emb, b.fsn, b.emb, lex, {});
  for (std::size_t i = 0; i < n; ++i) {
    REQUIRE(corr.mapping[i].has_value());
    CHECK(*corr.mapping[i] == perm[i]);
  }

  // Brute force over all 4! full maps: nothing beats the returned score.
  // The coords are non-coplanar, so the strict gradient agrees with the
  // matcher's least-squares energy.
  auto stencil = build_stencils(a.emb, n - 1);
  std::vector<std::size_t> target(n);
  std::iota(target.begin(), target.end(), 0);
  double best = -1e300;
  MatchConfig probe;
  do {
    NodeMap forced(n);
    for (std::size_t i = 0; i < n; ++i) forced[i] = target[i];
    double sem = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sem += acquaintance_score(a.fsn.nodes[i], b.fsn.nodes[target[i]], lex);
    }
    DisplacementField field = displacement_field(a.emb, b.emb, forced);
    std::vector<StrainTensor> eps;
    for (const auto& G : gradient(field.u, stencil)) eps.push_back(strain(G));
    const double energy = deformation_energy(eps, probe.moduli);
    best = std::max(best, probe.alpha * sem / static_cast<double>(n) -
                              probe.beta * energy / static_cast<double>(n));
  } while (std::next_permutation(target.begin(), target.end()));
  CHECK(corr.combined >= best - 1e-9);
}

TEST_CASE("elasto_adaptive_match bookkeeping invariants") {
  PrefixLexicon lex;
  std::mt19937_64 rng(43);
  std::vector<FDTag> ta;
  std::vector<FDTag> tb;
  for (int i = 0; i < 6; ++i) {
    ta.push_back(tag("#t" + std::string(1, 'a' + static_cast<char>(rng() % 4)) +
                         std::to_string(i),
                     {"k"}, "u:a" + std::to_string(i)));
    tb.push_back(tag("#t" + std::string(1, 'a' + static_cast<char>(rng() % 4)) +
                         std::to_string(i),
                     {"k"}, "u:b" + std::to_string(i)));
  }
  auto a = snapshot_of(ta, tetra_coords(6));
  auto coords = tetra_coords(6);
  for (auto& c : coords) c += Vec3(0.05, -0.02, 0.01);
  auto b = snapshot_of(tb, coords);

  auto corr = elasto_adaptive_match(a.fsn, a.emb, b.fsn, b.emb, lex, {});

  SUBCASE("injectivity") {
    std::vector<std::size_t> used;
    for (const auto& m : corr.mapping) {
      if (m) used.push_back(*m);
    }
    std::sort(used.begin(), used.end());
    CHECK(std::adjacent_find(used.begin(), used.end()) == used.end());
  }

  SUBCASE("the trace never decreases") {
    REQUIRE(!corr.score_trace.empty());
    for (std::size_t i = 1; i < corr.score_trace.size(); ++i) {
      CHECK(corr.score_trace[i] >= corr.score_trace[i - 1] - 1e-12);
    }
    CHECK(corr.score_trace.back() == doctest::Approx(corr.combined));
  }

  SUBCASE("determinism") {
    auto again = elasto_adaptive_match(a.fsn, a.emb, b.fsn, b.emb, lex, {});
    CHECK(again.mapping == corr.mapping);
    CHECK(again.combined == corr.combined);
  }
}

TEST_CASE("elasto_adaptive_match guards") {
  PrefixLexicon lex;
  FSN empty;
  Embedding none;
  auto a = snapshot_of({tag("#a", {"t"}, "u:1")}, {{0, 0, 0}});
  CHECK(code_of([&] { elasto_adaptive_match(empty, none, a.fsn, a.emb, lex, {}); }) ==
        ErrorCode::EmptySnapshot);
  CHECK(code_of([&] { elasto_adaptive_match(a.fsn, a.emb, empty, none, lex, {}); }) ==
        ErrorCode::EmptySnapshot);
}

TEST_CASE("suggest_tags ranks by acquaintance and ctr") {
  PrefixLexicon lex;
  FSN fsn;
  fsn.nodes = {tag("#news", {"world"}, "u:1", 9, 10),
               tag("#newsroom", {"world"}, "u:2", 1, 10),
               tag("#sports", {"games"}, "u:3", 5, 10)};
  fsn.edges = {{0, 1, 0.8}};

  SUBCASE("self-retrieval puts the queried label first") {
    auto out = suggest_tags(fsn, lex, "#news", 1);
    REQUIRE(out.size() == 1);
    CHECK(out[0].first == "news");
  }

  SUBCASE("k beyond the node count returns every match") {
    auto out = suggest_tags(fsn, lex, "#news", 50);
    CHECK(out.size() <= 3);
    CHECK(!out.empty());
  }

  SUBCASE("queries can hit topics and uris too") {
    auto by_topic = suggest_tags(fsn, lex, "games", 2);
    REQUIRE(!by_topic.empty());
    CHECK(by_topic[0].first == "sports");

    // Anchor is "newsroom" (uri match); "news" outranks it because its
    // higher ctr beats the anchor's self-acquaintance:
    // news 0.6 * 0.95 = 0.57 vs newsroom 1.0 * 0.55 = 0.55.
    auto by_uri = suggest_tags(fsn, lex, "u:2", 2);
    REQUIRE(by_uri.size() == 2);
    CHECK(by_uri[0].first == "news");
    CHECK(by_uri[0].second == doctest::Approx(0.57));
    CHECK(by_uri[1].first == "newsroom");
    CHECK(by_uri[1].second == doctest::Approx(0.55));
  }

  SUBCASE("unknown queries raise") {
    CHECK(code_of([&] { suggest_tags(fsn, lex, "zzzz", 3); }) == ErrorCode::UnknownQuery);
    CHECK(code_of([&] { suggest_tags(fsn, lex, "#news", 0); }) ==
          ErrorCode::InvalidArgument);
  }
}

TEST_CASE("suggest_tags breaks acquaintance ties by ctr") {
  PrefixLexicon lex;
  FSN fsn;
  // Anchor "#base"; two equally acquainted neighbors with different ctr.
  fsn.nodes = {tag("#base", {"t"}, "u:0", 5, 10), tag("#hot", {"t"}, "u:1", 9, 10),
               tag("#cold", {"t"}, "u:2", 1, 10)};
  auto out = suggest_tags(fsn, lex, "#base", 3);
  REQUIRE(out.size() == 3);
  CHECK(out[0].first == "base");
  CHECK(out[1].first == "hot");   // acq ties, ctr 0.9 beats 0.1
  CHECK(out[2].first == "cold");
  CHECK(out[1].second > out[2].second);
}
