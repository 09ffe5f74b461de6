#pragma once
// JSONL event-stream parsing and aggregation into FD tags.
//
// Input format, one object per line:
//   {"label": str, "uri": str, "topic": str, "desc": str,
//    "clicked": bool, "ts": int}

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "folkso/core.hpp"

namespace folkso {

// One tagging event: a single impression, clicked or not.
struct TagEvent {
  std::string label;
  std::string resource_uri;
  std::string topic;
  std::string description;
  bool clicked = false;
  std::int64_t timestamp = 0;

  bool operator==(const TagEvent&) const = default;
};

struct RejectedLine {
  std::size_t line;  // 1-based
  std::string reason;
};

struct ParseResult {
  std::vector<TagEvent> events;
  std::vector<RejectedLine> rejected;
};

// Parsing is total: malformed lines land in the rejection report, never
// abort the stream. Throws UnreadableInput only on stream I/O failure.
ParseResult parse_events(std::istream& input);
ParseResult parse_events_file(const std::string& path);

std::string serialize_event(const TagEvent& event);

// One FDTag per distinct (normalized label, uri) pair. Every event counts
// one impression; clicked events count one click. Topic/description sets
// are unions over the pair's events. Result is sorted by (label, uri).
std::vector<FDTag> aggregate(const std::vector<TagEvent>& events,
                             double time_scale = 1.0);

}  // namespace folkso
