#include "folkso/snapshot.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace folkso {

namespace {

using nlohmann::json;

json tag_to_json(const FDTag& tag) {
  json incidence = json::array();
  for (const auto& [topic, desc] : tag.context.incidence) {
    incidence.push_back(json::array({topic, desc}));
  }
  return json{
      {"label", tag.label},
      {"topics", tag.context.topics},
      {"descriptions", tag.context.descriptions},
      {"incidence", incidence},
      {"clicks", tag.exposition.clicks},
      {"impressions", tag.exposition.impressions},
      {"uri", tag.resource.uri},
      {"event", json::array({tag.event.t, tag.event.x, tag.event.y, tag.event.z})},
  };
}

FDTag tag_from_json(const json& j) {
  FDTag tag;
  tag.label = j.at("label").get<std::string>();
  tag.context.topics = j.at("topics").get<std::set<std::string>>();
  tag.context.descriptions = j.at("descriptions").get<std::set<std::string>>();
  for (const json& pair : j.at("incidence")) {
    if (!pair.is_array() || pair.size() != 2) {
      throw Error(ErrorCode::CorruptSnapshot, "incidence entry is not a pair");
    }
    tag.context.incidence.emplace(pair[0].get<std::string>(),
                                  pair[1].get<std::string>());
  }
  try {
    tag.exposition =
        compute_ctr(j.at("clicks").get<std::uint64_t>(),
                    j.at("impressions").get<std::uint64_t>());
  } catch (const Error& ex) {
    throw Error(ErrorCode::CorruptSnapshot, ex.detail());
  }
  tag.resource.uri = j.at("uri").get<std::string>();
  const json& ev = j.at("event");
  if (!ev.is_array() || ev.size() != 4) {
    throw Error(ErrorCode::CorruptSnapshot, "event is not a 4-vector");
  }
  tag.event = {ev[0].get<double>(), ev[1].get<double>(), ev[2].get<double>(),
               ev[3].get<double>()};
  return tag;
}

}  // namespace

FSN Snapshot::fsn() const {
  return FSN{tags, edges, config.theta, config.weights};
}

bool operator==(const Snapshot& a, const Snapshot& b) {
  const auto emb_equal = [](const std::optional<Embedding>& x,
                            const std::optional<Embedding>& y) {
    if (x.has_value() != y.has_value()) return false;
    if (!x) return true;
    return x->coords == y->coords && x->cell_size == y->cell_size &&
           x->cells == y->cells && x->seed == y->seed;
  };
  return a.version == b.version && a.tags == b.tags && a.edges == b.edges &&
         a.config == b.config && emb_equal(a.embedding, b.embedding);
}

std::string snapshot_to_json(const Snapshot& s) {
  json tags = json::array();
  for (const FDTag& tag : s.tags) tags.push_back(tag_to_json(tag));

  json edges = json::array();
  for (const FsnEdge& e : s.edges) {
    edges.push_back(json::array({e.i, e.j, e.weight}));
  }

  json root{
      {"version", s.version},
      {"tags", std::move(tags)},
      {"edges", std::move(edges)},
      {"config",
       {{"theta", s.config.theta},
        {"lexicon", s.config.lexicon},
        {"seed", s.config.seed},
        {"weights",
         {{"label", s.config.weights.label},
          {"topic", s.config.weights.topic},
          {"resource", s.config.weights.resource}}},
        {"time_scale", s.config.time_scale}}},
  };
  if (s.embedding) {
    json coords = json::array();
    for (const Vec3& c : s.embedding->coords) {
      coords.push_back(json::array({c.x(), c.y(), c.z()}));
    }
    root["embedding"] = {{"coords", std::move(coords)},
                         {"cell_size", s.embedding->cell_size},
                         {"seed", s.embedding->seed}};
  }
  return root.dump();  // nlohmann keeps object keys sorted
}

Snapshot snapshot_from_json(const std::string& text) {
  json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded() || !root.is_object()) {
    throw Error(ErrorCode::CorruptSnapshot, "not a JSON object");
  }
  try {
    const int version = root.at("version").get<int>();
    if (version != Snapshot::kVersion) {
      throw Error(ErrorCode::VersionMismatch,
                  "snapshot version " + std::to_string(version) +
                      ", expected " + std::to_string(Snapshot::kVersion));
    }
    Snapshot s;
    s.version = version;
    for (const json& t : root.at("tags")) s.tags.push_back(tag_from_json(t));
    for (const json& e : root.at("edges")) {
      if (!e.is_array() || e.size() != 3) {
        throw Error(ErrorCode::CorruptSnapshot, "edge is not a triple");
      }
      FsnEdge edge{e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                   e[2].get<double>()};
      if (edge.i >= edge.j || edge.j >= s.tags.size()) {
        throw Error(ErrorCode::CorruptSnapshot, "edge references bad nodes");
      }
      s.edges.push_back(edge);
    }
    const json& cfg = root.at("config");
    s.config.theta = cfg.at("theta").get<double>();
    s.config.lexicon = cfg.at("lexicon").get<std::string>();
    s.config.seed = cfg.at("seed").get<std::uint64_t>();
    const json& w = cfg.at("weights");
    s.config.weights.label = w.at("label").get<double>();
    s.config.weights.topic = w.at("topic").get<double>();
    s.config.weights.resource = w.at("resource").get<double>();
    s.config.time_scale = cfg.at("time_scale").get<double>();
    if (root.contains("embedding")) {
      const json& emb = root.at("embedding");
      Embedding e;
      for (const json& c : emb.at("coords")) {
        if (!c.is_array() || c.size() != 3) {
          throw Error(ErrorCode::CorruptSnapshot, "coordinate is not a 3-vector");
        }
        e.coords.emplace_back(c[0].get<double>(), c[1].get<double>(),
                              c[2].get<double>());
      }
      if (e.coords.size() != s.tags.size()) {
        throw Error(ErrorCode::CorruptSnapshot, "embedding does not cover tags");
      }
      e.cell_size = emb.at("cell_size").get<double>();
      e.seed = emb.at("seed").get<std::uint64_t>();
      e.cells = assign_cells(e.coords, e.cell_size);
      s.embedding = std::move(e);
    }
    return s;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    throw Error(ErrorCode::CorruptSnapshot, ex.what());
  }
}

void save_snapshot(const Snapshot& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
  }
  out << snapshot_to_json(s) << '\n';
  out.flush();
  if (!out) {
    throw Error(ErrorCode::IoFailure, "write to '" + path + "' failed");
  }
}

Snapshot load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::IoFailure, "read from '" + path + "' failed");
  }
  return snapshot_from_json(buffer.str());
}

}  // namespace folkso
