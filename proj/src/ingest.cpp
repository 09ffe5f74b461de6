#include "folkso/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace folkso {

using nlohmann::json;

namespace {

// Returns an error string, or empty on success.
std::string event_from_json(const json& j, TagEvent& out) {
  if (!j.is_object()) return "not a JSON object";
  const char* kFields[] = {"label", "uri", "topic", "desc", "clicked", "ts"};
  for (const char* f : kFields) {
    if (!j.contains(f)) return std::string("missing field '") + f + "'";
  }
  if (!j["label"].is_string()) return "'label' must be a string";
  if (!j["uri"].is_string()) return "'uri' must be a string";
  if (!j["topic"].is_string()) return "'topic' must be a string";
  if (!j["desc"].is_string()) return "'desc' must be a string";
  if (!j["clicked"].is_boolean()) return "'clicked' must be a boolean";
  if (!j["ts"].is_number_integer()) return "'ts' must be an integer";

  TagEvent ev;
  ev.label = j["label"].get<std::string>();
  ev.resource_uri = j["uri"].get<std::string>();
  ev.topic = j["topic"].get<std::string>();
  ev.description = j["desc"].get<std::string>();
  ev.clicked = j["clicked"].get<bool>();
  ev.timestamp = j["ts"].get<std::int64_t>();

  if (normalize_label(ev.label).empty()) {
    return "'label' must be non-empty after normalization";
  }
  if (ev.resource_uri.empty()) return "'uri' must be non-empty";
  if (ev.timestamp < 0) return "'ts' must be >= 0";
  out = std::move(ev);
  return {};
}

}  // namespace

ParseResult parse_events(std::istream& input) {
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
      result.rejected.push_back({line_no, "invalid JSON"});
      continue;
    }
    TagEvent ev;
    if (std::string err = event_from_json(j, ev); !err.empty()) {
      result.rejected.push_back({line_no, std::move(err)});
      continue;
    }
    result.events.push_back(std::move(ev));
  }
  if (input.bad()) {
    throw Error(ErrorCode::UnreadableInput, "stream failed while reading events");
  }
  return result;
}

ParseResult parse_events_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::UnreadableInput, "cannot open '" + path + "'");
  }
  return parse_events(in);
}

std::string serialize_event(const TagEvent& event) {
  json j;
  j["label"] = event.label;
  j["uri"] = event.resource_uri;
  j["topic"] = event.topic;
  j["desc"] = event.description;
  j["clicked"] = event.clicked;
  j["ts"] = event.timestamp;
  return j.dump();
}

std::vector<FDTag> aggregate(const std::vector<TagEvent>& events,
                             double time_scale) {
  struct Bucket {
    std::uint64_t clicks = 0;
    std::uint64_t impressions = 0;
    FormalContext context;
  };
  // Ordered map keyed on (normalized label, uri) keeps the output sorted.
  std::map<std::pair<std::string, std::string>, Bucket> buckets;
  for (const TagEvent& ev : events) {
    auto& bucket = buckets[{normalize_label(ev.label), ev.resource_uri}];
    bucket.impressions += 1;
    if (ev.clicked) bucket.clicks += 1;
    bucket.context.topics.insert(ev.topic);
    bucket.context.descriptions.insert(ev.description);
    bucket.context.incidence.insert({ev.topic, ev.description});
  }

  std::vector<FDTag> tags;
  tags.reserve(buckets.size());
  for (auto& [key, bucket] : buckets) {
    TimeExposition exposition = compute_ctr(bucket.clicks, bucket.impressions);
    tags.push_back(make_fd_tag(key.first, std::move(bucket.context), exposition,
                               ResourceRef{key.second}, time_scale));
  }
  return tags;
}

}  // namespace folkso
