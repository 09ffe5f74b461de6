#pragma once
// Core domain types: the FD tag tuple (formal context, time exposition,
// resource, space-time event) and the operations on it.

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "folkso/errors.hpp"

namespace folkso {

// Triple (T, D, I): topic labels, description data, and the incidence
// relation between them.
struct FormalContext {
  std::set<std::string> topics;
  std::set<std::string> descriptions;
  std::set<std::pair<std::string, std::string>> incidence;

  // Non-empty T and D, and every incidence pair references members of both.
  bool valid() const;

  bool operator==(const FormalContext&) const = default;
};

// Clickthrough rate of a resource: clicks over impressions.
struct TimeExposition {
  std::uint64_t clicks = 0;
  std::uint64_t impressions = 0;
  double ctr = 0.0;

  bool operator==(const TimeExposition&) const = default;
};

struct ResourceRef {
  std::string uri;

  bool operator==(const ResourceRef&) const = default;
};

// Space-time event with one time and three spatial components.
// The metric signature used throughout is (-,+,+,+).
struct MinkowskiEvent {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const MinkowskiEvent&) const = default;
};

enum class TimeDirection { PastDirected, FutureDirected };

struct FDTag {
  std::string label;  // normalized
  FormalContext context;
  TimeExposition exposition;
  ResourceRef resource;
  MinkowskiEvent event;

  bool operator==(const FDTag&) const = default;
};

// Trim ASCII whitespace, strip a single leading '#', case-fold ASCII
// letters. Multi-byte UTF-8 sequences pass through unchanged.
std::string normalize_label(std::string_view raw);

// Syntactic check only: scheme followed by an authority or a path.
bool is_absolute_uri(std::string_view uri);

// Throws ZeroImpressions / ClicksExceedImpressions.
TimeExposition compute_ctr(std::uint64_t clicks, std::uint64_t impressions);

// Sign of the time component. Throws ZeroTimeComponent when t == 0.
TimeDirection classify_time_direction(const MinkowskiEvent& event);

// s^2 = -(dt)^2 + dx^2 + dy^2 + dz^2.
double minkowski_interval(const MinkowskiEvent& a, const MinkowskiEvent& b);

// Builds a tag with event.t = time_scale * ctr and spatial coordinates at
// the origin until an embedding assigns them.
// Throws EmptyLabel / InvalidContext.
FDTag make_fd_tag(std::string_view raw_label, FormalContext context,
                  TimeExposition exposition, ResourceRef resource,
                  double time_scale = 1.0);

}  // namespace folkso
