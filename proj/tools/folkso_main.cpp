// folkso CLI: pipeline commands over tagged-resource event streams.
// Results go to stdout as JSON, progress to stderr, errors as a
// single-line JSON object with exit code 1 (usage) or 2 (data).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "folkso/bench.hpp"
#include "folkso/elastica.hpp"
#include "folkso/errors.hpp"
#include "folkso/ingest.hpp"
#include "folkso/matching.hpp"
#include "folkso/metrics.hpp"
#include "folkso/snapshot.hpp"

namespace {

using nlohmann::json;

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* raw = std::getenv("FOLKSO_LOG");
    if (!raw) return LogLevel::Error;
    const std::string v(raw);
    if (v == "error") return LogLevel::Error;
    if (v == "info") return LogLevel::Info;
    if (v == "debug") return LogLevel::Debug;
    std::cerr << "folkso: unknown FOLKSO_LOG value '" << v
              << "', using 'error'\n";
    return LogLevel::Error;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) std::cerr << "folkso: " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::Debug) std::cerr << "folkso: " << msg << "\n";
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

void write_output(const json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw folkso::Error(folkso::ErrorCode::IoFailure,
                        "cannot open '" + path + "' for writing");
  }
  out << j.dump() << "\n";
  if (!out.flush()) {
    throw folkso::Error(folkso::ErrorCode::IoFailure,
                        "write to '" + path + "' failed");
  }
}

// Stencil width for the deform report; larger than the matching default to
// tolerate locally flat embeddings.
constexpr std::size_t kDeformStencilK = 6;

folkso::Embedding ensure_embedding(const folkso::Snapshot& s) {
  if (s.embedding) return *s.embedding;
  log_info("snapshot has no embedding, computing one");
  return folkso::embed(s.fsn(), s.config.seed);
}

std::vector<double> node_densities(const folkso::Snapshot& s,
                                   const std::string& rho_mode) {
  std::vector<double> rho(s.tags.size(), 1.0);
  if (rho_mode == "impressions") {
    for (std::size_t i = 0; i < s.tags.size(); ++i) {
      rho[i] = static_cast<double>(s.tags[i].exposition.impressions);
    }
  }
  return rho;
}

folkso::ScoredRanking read_scores(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw folkso::Error(folkso::ErrorCode::UnreadableInput,
                        "cannot open '" + path + "'");
  }
  folkso::ScoredRanking ranking;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object() || !j.contains("id") ||
        !j.contains("score") || !j["id"].is_string() ||
        !j["score"].is_number()) {
      throw folkso::Error(folkso::ErrorCode::InvalidArgument,
                          path + ":" + std::to_string(lineno) +
                              ": expected {\"id\": str, \"score\": float}");
    }
    ranking.items.emplace_back(j["id"].get<std::string>(),
                               j["score"].get<double>());
  }
  if (in.bad()) {
    throw folkso::Error(folkso::ErrorCode::UnreadableInput,
                        "read from '" + path + "' failed");
  }
  return ranking;
}

json correspondence_json(const folkso::Correspondence& corr) {
  json pairs = json::array();
  for (std::size_t i = 0; i < corr.mapping.size(); ++i) {
    if (corr.mapping[i]) {
      pairs.push_back(json::array({i, *corr.mapping[i], corr.semantic[i]}));
    }
  }
  return json{{"pairs", std::move(pairs)},
              {"matched", corr.matched},
              {"mean_semantic", corr.mean_semantic},
              {"deformation_energy", corr.deformation_energy},
              {"combined", corr.combined},
              {"trace", corr.score_trace}};
}

json report_json(const folkso::LatencyReport& report) {
  return json{{"queries", report.samples_ms.size()},
              {"samples_ms", report.samples_ms},
              {"histogram",
               {{"edges", report.bin_edges}, {"counts", report.counts}}},
              {"min_ms", report.min_ms},
              {"p50_ms", report.p50_ms},
              {"p95_ms", report.p95_ms},
              {"max_ms", report.max_ms},
              {"mean_ms", report.mean_ms}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"folksonomy structure networks with elastic matching"};
  app.require_subcommand(1);

  std::string input, output, snapshot_path, snapshot_b_path, query;
  std::string pred_path, gold_path;
  std::string rho_mode = "uniform";
  double theta = 0.5, mu = 1.0, lambda = 1.0, alpha = 1.0, beta = 1.0;
  std::uint64_t seed = 42;
  std::size_t queries = 500, top_k = 10, cand_m = 5, kmin = 4;

  auto* ingest = app.add_subcommand("ingest", "Parse events and build the tag table");
  ingest->add_option("--input", input, "JSONL event file")->required();
  ingest->add_option("--output", output, "snapshot to write")->required();

  auto* build = app.add_subcommand("build", "Link tags into a structure network");
  build->add_option("--snapshot", snapshot_path, "snapshot with tags")->required();
  build->add_option("--theta", theta, "acquaintance threshold")->capture_default_str();
  build->add_option("--output", output, "snapshot to write")->required();

  auto* embed_cmd = app.add_subcommand("embed", "Compute the spectral layout");
  embed_cmd->add_option("--snapshot", snapshot_path, "snapshot with edges")->required();
  embed_cmd->add_option("--seed", seed, "layout seed")->capture_default_str();
  embed_cmd->add_option("--output", output, "snapshot to write")->required();

  auto* deform = app.add_subcommand("deform", "Strain/stress/energy between two snapshots");
  deform->add_option("--snapshot", snapshot_path, "reference snapshot")->required();
  deform->add_option("--snapshot-b", snapshot_b_path, "deformed snapshot")->required();
  deform->add_option("--mu", mu, "shear modulus")->capture_default_str();
  deform->add_option("--lambda", lambda, "first Lame parameter")->capture_default_str();
  deform->add_option("--rho-mode", rho_mode, "node density source")
      ->check(CLI::IsMember({"uniform", "impressions"}))
      ->capture_default_str();
  deform->add_option("--output", output, "per-node report to write");

  auto* match = app.add_subcommand("match", "Elasto-adaptive snapshot matching");
  match->add_option("--snapshot", snapshot_path, "source snapshot")->required();
  match->add_option("--snapshot-b", snapshot_b_path, "target snapshot")->required();
  match->add_option("--cand-m", cand_m, "candidates per node")->capture_default_str();
  match->add_option("--alpha", alpha, "semantic weight")->capture_default_str();
  match->add_option("--beta", beta, "energy weight")->capture_default_str();
  match->add_option("--mu", mu, "shear modulus")->capture_default_str();
  match->add_option("--lambda", lambda, "first Lame parameter")->capture_default_str();
  match->add_option("--output", output, "correspondence file to write");

  auto* suggest = app.add_subcommand("suggest", "Rank tags for a query");
  suggest->add_option("--snapshot", snapshot_path, "snapshot to query")->required();
  suggest->add_option("--top-k", top_k, "results to return")->capture_default_str();
  suggest->add_option("QUERY", query, "hashtag, topic, or resource URI")->required();

  auto* score = app.add_subcommand("score", "Rank agreement between two score files");
  score->add_option("PRED", pred_path, "predicted scores (JSONL)")->required();
  score->add_option("GOLD", gold_path, "gold scores (JSONL)")->required();

  auto* bench = app.add_subcommand("bench", "Latency distribution over seeded queries");
  bench->add_option("--snapshot", snapshot_path, "snapshot to exercise")->required();
  bench->add_option("--queries", queries, "number of queries")->capture_default_str();
  bench->add_option("--seed", seed, "query seed")->capture_default_str();
  bench->add_option("--top-k", top_k, "suggestions per query")->capture_default_str();
  bench->add_option("--cand-m", cand_m, "candidates per node")->capture_default_str();
  bench->add_option("--alpha", alpha, "semantic weight")->capture_default_str();
  bench->add_option("--beta", beta, "energy weight")->capture_default_str();
  bench->add_option("--mu", mu, "shear modulus")->capture_default_str();
  bench->add_option("--lambda", lambda, "first Lame parameter")->capture_default_str();
  bench->add_option("--output", output, "report file to write");

  auto* fit = app.add_subcommand("fit-degree", "Power-law fit of the degree tail");
  fit->add_option("--snapshot", snapshot_path, "snapshot with edges")->required();
  fit->add_option("--kmin", kmin, "smallest tail degree")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    emit(json{{"error", "Usage"}, {"detail", e.what()}});
    return 1;
  }

  try {
    if (app.got_subcommand(ingest)) {
      const folkso::ParseResult parsed = folkso::parse_events_file(input);
      for (const auto& r : parsed.rejected) {
        log_debug("rejected line " + std::to_string(r.line) + ": " + r.reason);
      }
      const std::vector<folkso::FDTag> tags = folkso::aggregate(parsed.events);
      folkso::Snapshot snap;
      snap.tags = tags;
      folkso::save_snapshot(snap, output);
      log_info("ingested " + std::to_string(parsed.events.size()) + " events");
      emit(json{{"events", parsed.events.size()},
                {"rejected", parsed.rejected.size()},
                {"tags", tags.size()},
                {"output", output}});
    } else if (app.got_subcommand(build)) {
      folkso::Snapshot snap = folkso::load_snapshot(snapshot_path);
      snap.config.theta = theta;
      const auto lex = folkso::make_lexicon(snap.config.lexicon);
      const folkso::FSN fsn =
          folkso::build_fsn(snap.tags, *lex, theta, snap.config.weights);
      snap.tags = fsn.nodes;
      snap.edges = fsn.edges;
      snap.embedding.reset();  // layout is stale once edges change
      folkso::save_snapshot(snap, output);
      log_info("linked " + std::to_string(fsn.edges.size()) + " edges");
      emit(json{{"nodes", fsn.nodes.size()},
                {"edges", fsn.edges.size()},
                {"theta", theta},
                {"output", output}});
    } else if (app.got_subcommand(embed_cmd)) {
      folkso::Snapshot snap = folkso::load_snapshot(snapshot_path);
      snap.config.seed = seed;
      snap.embedding = folkso::embed(snap.fsn(), seed);
      folkso::save_snapshot(snap, output);
      emit(json{{"nodes", snap.embedding->coords.size()},
                {"cell_size", snap.embedding->cell_size},
                {"seed", seed},
                {"output", output}});
    } else if (app.got_subcommand(deform)) {
      const folkso::Snapshot a = folkso::load_snapshot(snapshot_path);
      const folkso::Snapshot b = folkso::load_snapshot(snapshot_b_path);
      const folkso::Embedding ea = ensure_embedding(a);
      const folkso::Embedding eb = ensure_embedding(b);

      // Tags correspond when they share (label, uri).
      std::map<std::pair<std::string, std::string>, std::size_t> index_b;
      for (std::size_t j = 0; j < b.tags.size(); ++j) {
        index_b[{b.tags[j].label, b.tags[j].resource.uri}] = j;
      }
      folkso::NodeMap corr(a.tags.size());
      for (std::size_t i = 0; i < a.tags.size(); ++i) {
        auto it = index_b.find({a.tags[i].label, a.tags[i].resource.uri});
        if (it != index_b.end()) corr[i] = it->second;
      }

      const folkso::DisplacementField disp =
          folkso::displacement_field(ea, eb, corr);
      const folkso::NeighborStencil stencil = folkso::build_stencils(
          ea, std::min(kDeformStencilK, a.tags.size() - 1));
      const std::vector<folkso::Mat3> grads =
          folkso::gradient(disp.u, stencil);
      std::vector<folkso::StrainTensor> eps;
      eps.reserve(grads.size());
      for (const auto& g : grads) eps.push_back(folkso::strain(g));
      const folkso::ElasticModuli moduli{mu, lambda};
      std::vector<double> weights(a.tags.size(), 0.0);
      for (std::size_t i = 0; i < a.tags.size(); ++i) {
        weights[i] = disp.matched[i] ? 1.0 : 0.0;
      }
      const double energy = folkso::deformation_energy(eps, moduli, weights);

      folkso::LatticeState state;
      state.ref = ea.coords;
      state.u = disp.u;
      state.velocity.assign(a.tags.size(), folkso::Vec3::Zero());
      state.body_force.assign(a.tags.size(), folkso::Vec3::Zero());
      state.rho = node_densities(a, rho_mode);
      const double dt = folkso::stable_dt(moduli, state, stencil);

      std::size_t matched = 0;
      double max_stress = 0.0;
      json nodes = json::array();
      for (std::size_t i = 0; i < a.tags.size(); ++i) {
        if (disp.matched[i]) ++matched;
        const folkso::StressTensor sigma = folkso::hooke_stress(eps[i], moduli);
        max_stress = std::max(max_stress, sigma.norm());
        nodes.push_back(json{{"label", a.tags[i].label},
                             {"matched", static_cast<bool>(disp.matched[i])},
                             {"u", {disp.u[i].x(), disp.u[i].y(), disp.u[i].z()}},
                             {"strain_norm", eps[i].norm()},
                             {"stress_norm", sigma.norm()}});
      }
      const json result{{"nodes", a.tags.size()},
                        {"matched", matched},
                        {"energy", energy},
                        {"max_stress_norm", max_stress},
                        {"stable_dt", dt}};
      if (!output.empty()) {
        json detail = result;
        detail["per_node"] = std::move(nodes);
        write_output(detail, output);
      }
      emit(result);
    } else if (app.got_subcommand(match)) {
      const folkso::Snapshot a = folkso::load_snapshot(snapshot_path);
      const folkso::Snapshot b = folkso::load_snapshot(snapshot_b_path);
      folkso::MatchConfig config;
      config.cand_m = cand_m;
      config.alpha = alpha;
      config.beta = beta;
      config.moduli = {mu, lambda};
      config.weights = a.config.weights;
      const auto lex = folkso::make_lexicon(a.config.lexicon);
      const folkso::Correspondence corr = folkso::elasto_adaptive_match(
          a.fsn(), ensure_embedding(a), b.fsn(), ensure_embedding(b), *lex,
          config);
      const json result = correspondence_json(corr);
      if (!output.empty()) write_output(result, output);
      emit(result);
    } else if (app.got_subcommand(suggest)) {
      const folkso::Snapshot snap = folkso::load_snapshot(snapshot_path);
      const auto lex = folkso::make_lexicon(snap.config.lexicon);
      const auto ranked = folkso::suggest_tags(snap.fsn(), *lex, query, top_k,
                                               snap.config.weights);
      json suggestions = json::array();
      for (const auto& [label, s] : ranked) {
        suggestions.push_back(json::array({label, s}));
      }
      emit(json{{"query", query}, {"suggestions", std::move(suggestions)}});
    } else if (app.got_subcommand(score)) {
      const folkso::ScoredRanking pred = read_scores(pred_path);
      const folkso::ScoredRanking gold = read_scores(gold_path);
      emit(json{{"n", pred.items.size()},
                {"kendall_tau", folkso::kendall_tau(pred, gold)},
                {"spearman_rho", folkso::spearman_rho(pred, gold)},
                {"avg_diff", folkso::avg_diff(pred, gold)},
                {"avg_level_diff", folkso::avg_level_diff(pred, gold)},
                {"reference",
                 {{"avg_diff", folkso::kReferenceAvgDiff},
                  {"avg_level_diff", folkso::kReferenceAvgLevelDiff},
                  {"kendall_tau", folkso::kReferenceKendallTau},
                  {"spearman_rho", folkso::kReferenceSpearmanRho}}}});
    } else if (app.got_subcommand(bench)) {
      const folkso::Snapshot snap = folkso::load_snapshot(snapshot_path);
      folkso::MatchConfig config;
      config.cand_m = cand_m;
      config.alpha = alpha;
      config.beta = beta;
      config.moduli = {mu, lambda};
      config.weights = snap.config.weights;
      log_info("benchmarking " + std::to_string(queries) + " queries");
      const folkso::LatencyReport report =
          folkso::bench_matching(snap, queries, seed, top_k, config);
      const json result = report_json(report);
      if (!output.empty()) write_output(result, output);
      emit(result);
    } else if (app.got_subcommand(fit)) {
      const folkso::Snapshot snap = folkso::load_snapshot(snapshot_path);
      const folkso::FSN fsn = snap.fsn();
      const double fitted = folkso::fit_power_law(fsn.degrees(), kmin);
      json dist = json::object();
      for (const auto& [degree, count] : folkso::degree_distribution(fsn)) {
        dist[std::to_string(degree)] = count;
      }
      emit(json{{"alpha", fitted},
                {"k_min", kmin},
                {"nodes", fsn.nodes.size()},
                {"distribution", std::move(dist)}});
    }
  } catch (const folkso::Error& e) {
    emit(json{{"error", folkso::to_string(e.code())}, {"detail", e.detail()}});
    return 2;
  } catch (const std::exception& e) {
    emit(json{{"error", "Internal"}, {"detail", e.what()}});
    return 2;
  }
  return 0;
}
