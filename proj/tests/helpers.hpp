#pragma once
// Shared fixtures for the unit tests.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "folkso/core.hpp"
#include "folkso/errors.hpp"
#include "folkso/fsn.hpp"

namespace testutil {

// Runs fn, expecting it to throw folkso::Error; returns the code.
inline folkso::ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const folkso::Error& e) {
    return e.code();
  }
  throw std::logic_error("expected a folkso::Error");
}

inline folkso::FormalContext context_of(const std::vector<std::string>& topics) {
  folkso::FormalContext ctx;
  ctx.descriptions.insert("d");
  for (const auto& t : topics) {
    ctx.topics.insert(t);
    ctx.incidence.emplace(t, "d");
  }
  return ctx;
}

inline folkso::FDTag tag(const std::string& label,
                         const std::vector<std::string>& topics,
                         const std::string& uri, std::uint64_t clicks = 1,
                         std::uint64_t impressions = 10) {
  return folkso::make_fd_tag(label, context_of(topics),
                             folkso::compute_ctr(clicks, impressions), {uri});
}

}  // namespace testutil
