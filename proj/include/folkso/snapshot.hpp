#pragma once
// Snapshot persistence: the FD tag table, FSN edges, optional embedding,
// and the build configuration, stored as canonical JSON (sorted keys,
// round-trip-exact floats).

#include <optional>
#include <string>
#include <vector>

#include "folkso/embedding.hpp"
#include "folkso/fsn.hpp"

namespace folkso {

struct SnapshotConfig {
  double theta = 0.5;
  std::string lexicon = "prefix";
  std::uint64_t seed = 42;
  AcquaintanceWeights weights{};
  double time_scale = 1.0;

  bool operator==(const SnapshotConfig&) const = default;
};

struct Snapshot {
  static constexpr int kVersion = 1;

  int version = kVersion;
  std::vector<FDTag> tags;
  std::vector<FsnEdge> edges;
  std::optional<Embedding> embedding;
  SnapshotConfig config{};

  // Reassembles the graph view over the stored tags and edges.
  FSN fsn() const;
};

bool operator==(const Snapshot& a, const Snapshot& b);

std::string snapshot_to_json(const Snapshot& s);

// Throws VersionMismatch / CorruptSnapshot.
Snapshot snapshot_from_json(const std::string& text);

// Throws IoFailure on unwritable/unreadable paths, plus the parse errors
// above on load.
void save_snapshot(const Snapshot& s, const std::string& path);
Snapshot load_snapshot(const std::string& path);

}  // namespace folkso
