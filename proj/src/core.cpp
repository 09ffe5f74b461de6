#include "folkso/core.hpp"

#include <cctype>

namespace folkso {

bool FormalContext::valid() const {
  if (topics.empty() || descriptions.empty()) return false;
  for (const auto& [t, d] : incidence) {
    if (!topics.contains(t) || !descriptions.contains(d)) return false;
  }
  return true;
}

std::string normalize_label(std::string_view raw) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;
  if (begin < end && raw[begin] == '#') ++begin;

  std::string out;
  out.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    unsigned char c = static_cast<unsigned char>(raw[i]);
    out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : raw[i]);
  }
  return out;
}

bool is_absolute_uri(std::string_view uri) {
  // scheme = ALPHA *(ALPHA / DIGIT / "+" / "-" / ".") ":"
  if (uri.empty() || !std::isalpha(static_cast<unsigned char>(uri[0]))) return false;
  std::size_t colon = 0;
  for (std::size_t i = 1; i < uri.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(uri[i]);
    if (c == ':') {
      colon = i;
      break;
    }
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  if (colon == 0) return false;
  return colon + 1 < uri.size();  // non-empty authority or path after ':'
}

TimeExposition compute_ctr(std::uint64_t clicks, std::uint64_t impressions) {
  if (impressions == 0) {
    throw Error(ErrorCode::ZeroImpressions, "impressions must be positive");
  }
  if (clicks > impressions) {
    throw Error(ErrorCode::ClicksExceedImpressions,
                "clicks " + std::to_string(clicks) + " > impressions " +
                    std::to_string(impressions));
  }
  return TimeExposition{clicks, impressions,
                        static_cast<double>(clicks) / static_cast<double>(impressions)};
}

TimeDirection classify_time_direction(const MinkowskiEvent& event) {
  if (event.t == 0.0) {
    throw Error(ErrorCode::ZeroTimeComponent,
                "time direction is undefined for t = 0");
  }
  return event.t < 0.0 ? TimeDirection::PastDirected : TimeDirection::FutureDirected;
}

double minkowski_interval(const MinkowskiEvent& a, const MinkowskiEvent& b) {
  const double dt = b.t - a.t;
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double dz = b.z - a.z;
  return -dt * dt + dx * dx + dy * dy + dz * dz;
}

FDTag make_fd_tag(std::string_view raw_label, FormalContext context,
                  TimeExposition exposition, ResourceRef resource,
                  double time_scale) {
  std::string label = normalize_label(raw_label);
  if (label.empty()) {
    throw Error(ErrorCode::EmptyLabel, "label is empty after normalization");
  }
  if (!context.valid()) {
    throw Error(ErrorCode::InvalidContext,
                "context needs non-empty topic and description sets with "
                "consistent incidence");
  }
  FDTag tag;
  tag.label = std::move(label);
  tag.context = std::move(context);
  tag.exposition = exposition;
  tag.resource = std::move(resource);
  tag.event = MinkowskiEvent{time_scale * exposition.ctr, 0.0, 0.0, 0.0};
  return tag;
}

}  // namespace folkso
