// Python bindings for the folkso core: ingestion, graph building,
// embedding, elastic matching, suggestion, metrics, and snapshots.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "folkso/bench.hpp"
#include "folkso/elastica.hpp"
#include "folkso/ingest.hpp"
#include "folkso/matching.hpp"
#include "folkso/metrics.hpp"
#include "folkso/snapshot.hpp"
#include "folkso/synth.hpp"

namespace py = pybind11;

namespace {

folkso::ScoredRanking to_ranking(
    const std::vector<std::pair<std::string, double>>& items) {
  return folkso::ScoredRanking{items};
}

std::vector<std::tuple<double, double, double>> coords_list(
    const folkso::Embedding& e) {
  std::vector<std::tuple<double, double, double>> out;
  out.reserve(e.coords.size());
  for (const auto& c : e.coords) out.emplace_back(c.x(), c.y(), c.z());
  return out;
}

}  // namespace

PYBIND11_MODULE(_folkso, m) {
  m.doc() = "folksonomy structure networks with elastic matching";

  py::register_exception<folkso::Error>(m, "FolksoError");

  py::class_<folkso::TagEvent>(m, "TagEvent")
      .def(py::init<>())
      .def_readwrite("label", &folkso::TagEvent::label)
      .def_readwrite("resource_uri", &folkso::TagEvent::resource_uri)
      .def_readwrite("topic", &folkso::TagEvent::topic)
      .def_readwrite("description", &folkso::TagEvent::description)
      .def_readwrite("clicked", &folkso::TagEvent::clicked)
      .def_readwrite("timestamp", &folkso::TagEvent::timestamp)
      .def("__repr__", [](const folkso::TagEvent& e) {
        return "TagEvent(label='" + e.label + "', topic='" + e.topic + "')";
      });

  py::class_<folkso::FDTag>(m, "FDTag")
      .def_property_readonly("label",
                             [](const folkso::FDTag& t) { return t.label; })
      .def_property_readonly(
          "uri", [](const folkso::FDTag& t) { return t.resource.uri; })
      .def_property_readonly(
          "topics", [](const folkso::FDTag& t) { return t.context.topics; })
      .def_property_readonly(
          "clicks", [](const folkso::FDTag& t) { return t.exposition.clicks; })
      .def_property_readonly(
          "impressions",
          [](const folkso::FDTag& t) { return t.exposition.impressions; })
      .def_property_readonly(
          "ctr", [](const folkso::FDTag& t) { return t.exposition.ctr; })
      .def("__repr__", [](const folkso::FDTag& t) {
        return "FDTag(label='" + t.label + "')";
      });

  py::class_<folkso::FsnEdge>(m, "FsnEdge")
      .def_readonly("i", &folkso::FsnEdge::i)
      .def_readonly("j", &folkso::FsnEdge::j)
      .def_readonly("weight", &folkso::FsnEdge::weight);

  py::class_<folkso::FSN>(m, "FSN")
      .def_property_readonly("nodes",
                             [](const folkso::FSN& f) { return f.nodes; })
      .def_property_readonly("edges",
                             [](const folkso::FSN& f) { return f.edges; })
      .def_readonly("theta", &folkso::FSN::theta)
      .def("degrees", &folkso::FSN::degrees)
      .def("__len__", [](const folkso::FSN& f) { return f.nodes.size(); });

  py::class_<folkso::Embedding>(m, "Embedding")
      .def_property_readonly("coords", &coords_list)
      .def_readonly("cell_size", &folkso::Embedding::cell_size)
      .def_readonly("seed", &folkso::Embedding::seed)
      .def("__len__",
           [](const folkso::Embedding& e) { return e.coords.size(); });

  py::class_<folkso::Correspondence>(m, "Correspondence")
      .def_readonly("mapping", &folkso::Correspondence::mapping)
      .def_readonly("semantic", &folkso::Correspondence::semantic)
      .def_readonly("deformation_energy",
                    &folkso::Correspondence::deformation_energy)
      .def_readonly("mean_semantic", &folkso::Correspondence::mean_semantic)
      .def_readonly("combined", &folkso::Correspondence::combined)
      .def_readonly("matched", &folkso::Correspondence::matched)
      .def_readonly("score_trace", &folkso::Correspondence::score_trace);

  py::class_<folkso::Snapshot>(m, "Snapshot")
      .def_property_readonly("tags",
                             [](const folkso::Snapshot& s) { return s.tags; })
      .def_property_readonly("edges",
                             [](const folkso::Snapshot& s) { return s.edges; })
      .def_property_readonly(
          "embedding", [](const folkso::Snapshot& s) { return s.embedding; })
      .def("fsn", &folkso::Snapshot::fsn);

  m.def("normalize_label", &folkso::normalize_label, py::arg("raw"));
  m.def(
      "compute_ctr",
      [](std::uint64_t clicks, std::uint64_t impressions) {
        return folkso::compute_ctr(clicks, impressions).ctr;
      },
      py::arg("clicks"), py::arg("impressions"));

  m.def(
      "parse_events",
      [](const std::string& text) {
        std::istringstream in(text);
        const folkso::ParseResult r = folkso::parse_events(in);
        std::vector<std::pair<std::size_t, std::string>> rejected;
        rejected.reserve(r.rejected.size());
        for (const auto& rej : r.rejected) {
          rejected.emplace_back(rej.line, rej.reason);
        }
        return py::make_tuple(r.events, rejected);
      },
      py::arg("text"), "Parse JSONL text; returns (events, rejected_lines).");

  m.def("aggregate", &folkso::aggregate, py::arg("events"),
        py::arg("time_scale") = 1.0);

  m.def(
      "build_fsn",
      [](std::vector<folkso::FDTag> tags, double theta) {
        const folkso::PrefixLexicon lex;
        return folkso::build_fsn(std::move(tags), lex, theta);
      },
      py::arg("tags"), py::arg("theta") = 0.5);

  m.def(
      "acquaintance_score",
      [](const folkso::FDTag& a, const folkso::FDTag& b) {
        const folkso::PrefixLexicon lex;
        return folkso::acquaintance_score(a, b, lex);
      },
      py::arg("a"), py::arg("b"));

  m.def("detect_hubs", &folkso::detect_hubs, py::arg("fsn"),
        py::arg("percentile"));
  m.def("degree_distribution", &folkso::degree_distribution, py::arg("fsn"));
  m.def("fit_power_law", &folkso::fit_power_law, py::arg("degrees"),
        py::arg("k_min"), py::arg("alpha_max") = 10.0);

  m.def("embed", &folkso::embed, py::arg("fsn"), py::arg("seed") = 42);

  m.def(
      "elasto_adaptive_match",
      [](const folkso::FSN& a, const folkso::Embedding& ea,
         const folkso::FSN& b, const folkso::Embedding& eb, std::size_t cand_m,
         double alpha, double beta, double mu, double lambda) {
        const folkso::PrefixLexicon lex;
        folkso::MatchConfig config;
        config.cand_m = cand_m;
        config.alpha = alpha;
        config.beta = beta;
        config.moduli = {mu, lambda};
        return folkso::elasto_adaptive_match(a, ea, b, eb, lex, config);
      },
      py::arg("fsn_a"), py::arg("embedding_a"), py::arg("fsn_b"),
      py::arg("embedding_b"), py::arg("cand_m") = 5, py::arg("alpha") = 1.0,
      py::arg("beta") = 1.0, py::arg("mu") = 1.0, py::arg("lam") = 1.0);

  m.def(
      "suggest_tags",
      [](const folkso::FSN& fsn, const std::string& query, std::size_t k) {
        const folkso::PrefixLexicon lex;
        return folkso::suggest_tags(fsn, lex, query, k);
      },
      py::arg("fsn"), py::arg("query"), py::arg("k") = 10);

  m.def(
      "kendall_tau",
      [](const std::vector<std::pair<std::string, double>>& x,
         const std::vector<std::pair<std::string, double>>& y) {
        return folkso::kendall_tau(to_ranking(x), to_ranking(y));
      },
      py::arg("x"), py::arg("y"));
  m.def(
      "spearman_rho",
      [](const std::vector<std::pair<std::string, double>>& x,
         const std::vector<std::pair<std::string, double>>& y) {
        return folkso::spearman_rho(to_ranking(x), to_ranking(y));
      },
      py::arg("x"), py::arg("y"));
  m.def(
      "avg_diff",
      [](const std::vector<std::pair<std::string, double>>& pred,
         const std::vector<std::pair<std::string, double>>& gold) {
        return folkso::avg_diff(to_ranking(pred), to_ranking(gold));
      },
      py::arg("pred"), py::arg("gold"));
  m.def(
      "avg_level_diff",
      [](const std::vector<std::pair<std::string, double>>& pred,
         const std::vector<std::pair<std::string, double>>& gold) {
        return folkso::avg_level_diff(to_ranking(pred), to_ranking(gold));
      },
      py::arg("pred"), py::arg("gold"));

  m.def(
      "make_snapshot",
      [](const folkso::FSN& fsn, std::optional<folkso::Embedding> embedding,
         std::uint64_t seed) {
        folkso::Snapshot s;
        s.tags = fsn.nodes;
        s.edges = fsn.edges;
        s.embedding = std::move(embedding);
        s.config.theta = fsn.theta;
        s.config.weights = fsn.weights;
        s.config.seed = seed;
        return s;
      },
      py::arg("fsn"), py::arg("embedding") = std::optional<folkso::Embedding>{},
      py::arg("seed") = 42);
  m.def("save_snapshot", &folkso::save_snapshot, py::arg("snapshot"),
        py::arg("path"));
  m.def("load_snapshot", &folkso::load_snapshot, py::arg("path"));
  m.def("snapshot_to_json", &folkso::snapshot_to_json, py::arg("snapshot"));

  m.def("generate_events", &folkso::synth::generate_events, py::arg("n"),
        py::arg("seed") = 42);
  m.def("preferential_attachment_degrees",
        &folkso::synth::preferential_attachment_degrees, py::arg("n"),
        py::arg("m"), py::arg("seed") = 42);
}
