#include <random>

#include "doctest.h"
#include "folkso/core.hpp"
#include "helpers.hpp"

using namespace folkso;
using testutil::code_of;

TEST_CASE("normalize_label trims, strips one hash, folds case") {
  CHECK(normalize_label("#WorldNews") == "worldnews");
  CHECK(normalize_label("  #Sports  ") == "sports");
  CHECK(normalize_label("news") == "news");
  CHECK(normalize_label("##x") == "#x");  // only one leading '#'
  CHECK(normalize_label(" \t ") == "");
  CHECK(normalize_label("#") == "");
}

TEST_CASE("is_absolute_uri wants scheme ':' and a remainder") {
  CHECK(is_absolute_uri("https://example.org/a"));
  CHECK(is_absolute_uri("urn:isbn:0451450523"));
  CHECK_FALSE(is_absolute_uri("not a uri"));
  CHECK_FALSE(is_absolute_uri("/relative/path"));
  CHECK_FALSE(is_absolute_uri("scheme:"));
  CHECK_FALSE(is_absolute_uri(""));
}

TEST_CASE("compute_ctr basic values") {
  CHECK(compute_ctr(0, 100).ctr == 0.0);
  CHECK(compute_ctr(1000, 1000).ctr == 1.0);
  CHECK(compute_ctr(50, 1000).ctr == doctest::Approx(0.05));
}

TEST_CASE("compute_ctr guards") {
  CHECK(code_of([] { compute_ctr(100, 0); }) == ErrorCode::ZeroImpressions);
  CHECK(code_of([] { compute_ctr(11, 10); }) == ErrorCode::ClicksExceedImpressions);
}

TEST_CASE("compute_ctr stays in [0,1] for random valid pairs") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> imp(1, 100000);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t n = imp(rng);
    const std::uint64_t c = std::uniform_int_distribution<std::uint64_t>(0, n)(rng);
    const double ctr = compute_ctr(c, n).ctr;
    CHECK(ctr >= 0.0);
    CHECK(ctr <= 1.0);
  }
}

TEST_CASE("classify_time_direction by sign of t") {
  CHECK(classify_time_direction({-1.0, 0, 0, 0}) == TimeDirection::PastDirected);
  CHECK(classify_time_direction({0.5, 0, 0, 0}) == TimeDirection::FutureDirected);
  CHECK(code_of([] { classify_time_direction({0.0, 1, 2, 3}); }) ==
        ErrorCode::ZeroTimeComponent);
}

TEST_CASE("minkowski_interval examples") {
  MinkowskiEvent a{1.0, 2.0, 3.0, 4.0};
  CHECK(minkowski_interval(a, a) == 0.0);
  CHECK(minkowski_interval({0, 0, 0, 0}, {0, 1, 0, 0}) == doctest::Approx(1.0));
  // dt = 2, spatial offset (1,1,1): -4 + 3 = -1 (timelike)
  CHECK(minkowski_interval({0, 0, 0, 0}, {2, 1, 1, 1}) == doctest::Approx(-1.0));
}

TEST_CASE("minkowski_interval is symmetric and translation-invariant") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    MinkowskiEvent a{d(rng), d(rng), d(rng), d(rng)};
    MinkowskiEvent b{d(rng), d(rng), d(rng), d(rng)};
    MinkowskiEvent c{d(rng), d(rng), d(rng), d(rng)};
    CHECK(minkowski_interval(a, b) == doctest::Approx(minkowski_interval(b, a)));
    MinkowskiEvent at{a.t + c.t, a.x + c.x, a.y + c.y, a.z + c.z};
    MinkowskiEvent bt{b.t + c.t, b.x + c.x, b.y + c.y, b.z + c.z};
    CHECK(minkowski_interval(at, bt) ==
          doctest::Approx(minkowski_interval(a, b)).epsilon(1e-9));
  }
}

TEST_CASE("make_fd_tag places the event at the origin with t = scale * ctr") {
  auto tag = make_fd_tag("#News", testutil::context_of({"world"}),
                         compute_ctr(50, 1000), {"https://example.org/n"});
  CHECK(tag.label == "news");
  CHECK(tag.event.t == doctest::Approx(0.05));
  CHECK(tag.event.x == 0.0);
  CHECK(tag.event.y == 0.0);
  CHECK(tag.event.z == 0.0);

  auto scaled = make_fd_tag("#News", testutil::context_of({"world"}),
                            compute_ctr(50, 1000), {"https://example.org/n"}, 2.0);
  CHECK(scaled.event.t == doctest::Approx(0.1));
}

TEST_CASE("make_fd_tag guards") {
  CHECK(code_of([] {
          make_fd_tag("  #  ", testutil::context_of({"t"}), compute_ctr(1, 2), {"u:x"});
        }) == ErrorCode::EmptyLabel);
  CHECK(code_of([] {
          make_fd_tag("ok", FormalContext{}, compute_ctr(1, 2), {"u:x"});
        }) == ErrorCode::InvalidContext);
  // Incidence pair referencing a missing description is invalid too.
  FormalContext bad;
  bad.topics.insert("t");
  bad.descriptions.insert("d");
  bad.incidence.emplace("t", "other");
  CHECK(code_of([&] { make_fd_tag("ok", bad, compute_ctr(1, 2), {"u:x"}); }) ==
        ErrorCode::InvalidContext);
}
