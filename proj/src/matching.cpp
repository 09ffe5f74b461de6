#include "folkso/matching.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace folkso {

namespace {

double strain_density(const Mat3& G, const ElasticModuli& m) {
  const Mat3 eps = 0.5 * (G + G.transpose());
  const double tr = eps.trace();
  return m.mu * eps.squaredNorm() + 0.5 * m.lambda * tr * tr;
}

// Local least-squares gradient machinery for the matching objective.
// Rank-deficient normal matrices fall back to a pseudo-inverse so thin
// embeddings still produce a (subspace) strain estimate.
struct EnergyLattice {
  bool active = false;
  std::vector<std::vector<StencilEntry>> stencil;
  std::vector<Mat3> pinv;
  std::vector<std::vector<std::size_t>> affected;  // u[i] feeds these gradients

  static EnergyLattice build(const std::vector<Vec3>& coords, std::size_t k) {
    EnergyLattice lat;
    const std::size_t n = coords.size();
    if (n < 2) return lat;
    k = std::min(k, n - 1);
    if (k == 0) return lat;
    lat.active = true;
    lat.stencil.resize(n);
    lat.pinv.resize(n);
    lat.affected.resize(n);

    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < n; ++i) {
      order.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) order.emplace_back((coords[j] - coords[i]).norm(), j);
      }
      std::partial_sort(order.begin(), order.begin() + static_cast<long>(k),
                        order.end());
      Mat3 normal = Mat3::Zero();
      for (std::size_t r = 0; r < k; ++r) {
        const auto& [dist, j] = order[r];
        if (dist == 0.0) continue;  // coincident nodes carry no offset info
        const Vec3 dx = coords[j] - coords[i];
        lat.stencil[i].push_back({j, dx, 1.0 / (dist * dist)});
        normal += (1.0 / (dist * dist)) * dx * dx.transpose();
      }
      Eigen::SelfAdjointEigenSolver<Mat3> solver(normal);
      const double lead = solver.eigenvalues().maxCoeff();
      Mat3 p = Mat3::Zero();
      for (int e = 0; e < 3; ++e) {
        const double lambda = solver.eigenvalues()[e];
        if (lead > 0.0 && lambda > 1e-12 * lead) {
          const Vec3 v = solver.eigenvectors().col(e);
          p += (1.0 / lambda) * v * v.transpose();
        }
      }
      lat.pinv[i] = p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      lat.affected[i].push_back(i);
      for (const StencilEntry& e : lat.stencil[i]) {
        lat.affected[e.neighbor].push_back(i);
      }
    }
    for (auto& a : lat.affected) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return lat;
  }

  Mat3 grad(const std::vector<Vec3>& u, std::size_t i) const {
    Mat3 rhs = Mat3::Zero();
    for (const StencilEntry& e : stencil[i]) {
      rhs += e.weight * (u[e.neighbor] - u[i]) * e.offset.transpose();
    }
    return rhs * pinv[i];
  }
};

// Mutable assignment state with incremental combined-score maintenance.
struct ObjectiveState {
  const EnergyLattice* lat = nullptr;
  const std::vector<Vec3>* coords_a = nullptr;
  const std::vector<Vec3>* coords_b = nullptr;
  ElasticModuli moduli;
  double alpha = 1.0;
  double beta = 1.0;

  NodeMap mapping;
  std::vector<std::optional<std::size_t>> owner;  // target -> source
  std::vector<double> semantic;
  std::vector<Vec3> u;
  std::vector<char> matched;
  std::vector<double> contrib;  // per-node strain density
  double sem_sum = 0.0;
  double e_sum = 0.0;
  std::size_t matched_count = 0;

  void init(std::size_t n_a, std::size_t n_b) {
    mapping.assign(n_a, std::nullopt);
    owner.assign(n_b, std::nullopt);
    semantic.assign(n_a, 0.0);
    u.assign(n_a, Vec3::Zero());
    matched.assign(n_a, 0);
    contrib.assign(n_a, 0.0);
  }

  double combined() const {
    const double n_a = static_cast<double>(mapping.size());
    const double mean_sem = n_a > 0.0 ? sem_sum / n_a : 0.0;
    const double e_norm =
        matched_count > 0 ? e_sum / static_cast<double>(matched_count) : 0.0;
    return alpha * mean_sem - beta * e_norm;
  }

  // Flush accumulated floating-point drift.
  void refresh_energy() {
    e_sum = 0.0;
    if (!lat->active) return;
    for (std::size_t i = 0; i < mapping.size(); ++i) {
      contrib[i] = strain_density(lat->grad(u, i), moduli);
      if (matched[i]) e_sum += contrib[i];
    }
  }

  struct Undo {
    std::size_t src = 0;
    std::optional<std::size_t> old_target;
    double old_semantic = 0.0;
    Vec3 old_u = Vec3::Zero();
    char old_matched = 0;
    double old_sem_sum = 0.0;
    double old_e_sum = 0.0;
    std::size_t old_matched_count = 0;
    std::vector<std::pair<std::size_t, double>> old_contrib;
  };

  // Target must be free. Unassigning passes nullopt.
  void assign(std::size_t src, std::optional<std::size_t> target, double sem,
              Undo& undo) {
    undo.src = src;
    undo.old_target = mapping[src];
    undo.old_semantic = semantic[src];
    undo.old_u = u[src];
    undo.old_matched = matched[src];
    undo.old_sem_sum = sem_sum;
    undo.old_e_sum = e_sum;
    undo.old_matched_count = matched_count;
    undo.old_contrib.clear();

    if (mapping[src]) owner[*mapping[src]] = std::nullopt;
    if (target) owner[*target] = src;
    mapping[src] = target;

    sem_sum += sem - semantic[src];
    semantic[src] = sem;

    const char was = matched[src];
    const char now = target.has_value() ? 1 : 0;
    matched[src] = now;
    matched_count += now;
    matched_count -= was;

    u[src] = now ? Vec3((*coords_b)[*target] - (*coords_a)[src]) : Vec3::Zero();

    if (!lat->active) return;
    for (std::size_t node : lat->affected[src]) {
      const double old_c = contrib[node];
      undo.old_contrib.emplace_back(node, old_c);
      const double new_c = strain_density(lat->grad(u, node), moduli);
      contrib[node] = new_c;
      const char was_on = node == src ? was : matched[node];
      const char now_on = matched[node];
      if (was_on) e_sum -= old_c;
      if (now_on) e_sum += new_c;
    }
  }

  void revert(const Undo& undo) {
    if (mapping[undo.src]) owner[*mapping[undo.src]] = std::nullopt;
    if (undo.old_target) owner[*undo.old_target] = undo.src;
    mapping[undo.src] = undo.old_target;
    semantic[undo.src] = undo.old_semantic;
    u[undo.src] = undo.old_u;
    matched[undo.src] = undo.old_matched;
    sem_sum = undo.old_sem_sum;
    e_sum = undo.old_e_sum;
    matched_count = undo.old_matched_count;
    for (auto it = undo.old_contrib.rbegin(); it != undo.old_contrib.rend(); ++it) {
      contrib[it->first] = it->second;
    }
  }
};

}  // namespace

std::vector<Candidate> candidate_pairs(const FSN& a, const FSN& b,
                                       const Lexicon& lex, std::size_t m,
                                       const AcquaintanceWeights& weights,
                                       CandidateStats* stats) {
  if (m < 1) {
    throw Error(ErrorCode::InvalidArgument, "candidate cap must be >= 1");
  }
  // Total order: higher score first, then lower target index.
  const auto better = [](const Candidate& x, const Candidate& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.target < y.target;
  };

  std::vector<Candidate> result;
  std::size_t held = 0;
  std::size_t peak = 0;
  std::vector<Candidate> kept;
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    kept.clear();
    for (std::size_t j = 0; j < b.nodes.size(); ++j) {
      const double score = acquaintance_score(a.nodes[i], b.nodes[j], lex, weights);
      if (score <= 0.0) continue;
      Candidate c{i, j, score};
      if (kept.size() < m) {
        kept.push_back(c);
        std::push_heap(kept.begin(), kept.end(), better);  // worst on top
        peak = std::max(peak, held + kept.size());
      } else if (better(c, kept.front())) {
        std::pop_heap(kept.begin(), kept.end(), better);
        kept.back() = c;
        std::push_heap(kept.begin(), kept.end(), better);
      }
    }
    std::sort(kept.begin(), kept.end(), better);
    result.insert(result.end(), kept.begin(), kept.end());
    held += kept.size();
    peak = std::max(peak, held);
  }
  if (stats) stats->peak_storage = peak;
  return result;
}

Correspondence elasto_adaptive_match(const FSN& a, const Embedding& ea,
                                     const FSN& b, const Embedding& eb,
                                     const Lexicon& lex,
                                     const MatchConfig& config) {
  if (a.nodes.empty() || b.nodes.empty()) {
    throw Error(ErrorCode::EmptySnapshot, "both snapshots must be non-empty");
  }
  if (ea.coords.size() != a.nodes.size() || eb.coords.size() != b.nodes.size()) {
    throw Error(ErrorCode::InvalidArgument, "embedding does not cover snapshot");
  }

  const std::vector<Candidate> candidates =
      candidate_pairs(a, b, lex, config.cand_m, config.weights);

  // Per-source candidate lists (already sorted score desc, target asc) and
  // a score lookup for hand-off moves.
  std::vector<std::vector<Candidate>> per_source(a.nodes.size());
  std::vector<std::unordered_map<std::size_t, double>> score_of(a.nodes.size());
  for (const Candidate& c : candidates) {
    per_source[c.source].push_back(c);
    score_of[c.source].emplace(c.target, c.score);
  }

  const EnergyLattice lattice = EnergyLattice::build(ea.coords, config.stencil_k);
  ObjectiveState state;
  state.lat = &lattice;
  state.coords_a = &ea.coords;
  state.coords_b = &eb.coords;
  state.moduli = config.moduli;
  state.alpha = config.alpha;
  state.beta = config.beta;
  state.init(a.nodes.size(), b.nodes.size());

  // Greedy seed: global candidate order is score desc, ties by
  // (source, target) ascending.
  std::vector<Candidate> seed_order = candidates;
  std::sort(seed_order.begin(), seed_order.end(),
            [](const Candidate& x, const Candidate& y) {
              if (x.score != y.score) return x.score > y.score;
              if (x.source != y.source) return x.source < y.source;
              return x.target < y.target;
            });
  ObjectiveState::Undo scratch;
  for (const Candidate& c : seed_order) {
    if (state.mapping[c.source] || state.owner[c.target]) continue;
    state.assign(c.source, c.target, c.score, scratch);
  }
  state.refresh_energy();

  Correspondence result;
  result.score_trace.push_back(state.combined());

  // First-improvement local search. Acceptance demands an increase above
  // floating-point noise so incremental bookkeeping cannot loop.
  double current = state.combined();
  const auto improves = [&current](double next) {
    return next > current + 1e-12 * std::max(1.0, std::abs(current));
  };

  for (std::size_t pass = 0; pass < config.max_iters; ++pass) {
    state.refresh_energy();
    current = state.combined();
    bool changed = false;

    for (std::size_t src = 0; src < a.nodes.size(); ++src) {
      // Drop move.
      if (state.mapping[src]) {
        ObjectiveState::Undo undo;
        state.assign(src, std::nullopt, 0.0, undo);
        if (improves(state.combined())) {
          current = state.combined();
          changed = true;
        } else {
          state.revert(undo);
        }
      }
      for (const Candidate& c : per_source[src]) {
        if (state.mapping[src] && *state.mapping[src] == c.target) continue;
        const auto holder = state.owner[c.target];
        if (!holder) {
          ObjectiveState::Undo undo;
          state.assign(src, c.target, c.score, undo);
          if (improves(state.combined())) {
            current = state.combined();
            changed = true;
          } else {
            state.revert(undo);
          }
          continue;
        }
        const std::size_t other = *holder;
        const std::optional<std::size_t> src_old = state.mapping[src];
        // Swap with hand-off: the displaced node takes src's old target
        // when that pair is itself a candidate.
        if (src_old) {
          auto it = score_of[other].find(*src_old);
          if (it != score_of[other].end()) {
            ObjectiveState::Undo u1, u2, u3;
            state.assign(src, std::nullopt, 0.0, u1);
            state.assign(other, *src_old, it->second, u2);
            state.assign(src, c.target, c.score, u3);
            if (improves(state.combined())) {
              current = state.combined();
              changed = true;
              continue;
            }
            state.revert(u3);
            state.revert(u2);
            state.revert(u1);
          }
        }
        // Displace: the holder becomes unmatched.
        {
          ObjectiveState::Undo u1, u2;
          state.assign(other, std::nullopt, 0.0, u1);
          state.assign(src, c.target, c.score, u2);
          if (improves(state.combined())) {
            current = state.combined();
            changed = true;
          } else {
            state.revert(u2);
            state.revert(u1);
          }
        }
      }
    }
    result.score_trace.push_back(state.combined());
    if (!changed) break;
  }

  state.refresh_energy();
  result.mapping = state.mapping;
  result.semantic = state.semantic;
  result.deformation_energy = state.e_sum;
  result.matched = state.matched_count;
  result.mean_semantic =
      state.sem_sum / static_cast<double>(a.nodes.size());
  result.combined = state.combined();
  return result;
}

std::vector<std::pair<std::string, double>> suggest_tags(
    const FSN& fsn, const Lexicon& lex, const std::string& query,
    std::size_t k, const AcquaintanceWeights& weights) {
  if (k < 1) {
    throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  }
  const std::string norm_query = normalize_label(query);

  // Query relevance per node: lexical match on the label, or exact match
  // on a topic name or resource URI. The suggestion anchors on the
  // best-matching node(s).
  std::vector<double> relevance(fsn.nodes.size(), 0.0);
  double best = 0.0;
  for (std::size_t i = 0; i < fsn.nodes.size(); ++i) {
    const FDTag& tag = fsn.nodes[i];
    double r = lex.similarity(norm_query, tag.label);
    if (tag.context.topics.contains(query)) r = std::max(r, 1.0);
    if (tag.resource.uri == query) r = std::max(r, 1.0);
    relevance[i] = r;
    best = std::max(best, r);
  }
  if (best <= 0.0) {
    throw Error(ErrorCode::UnknownQuery,
                "no node matches query '" + query + "'");
  }
  std::vector<std::size_t> anchors;
  for (std::size_t i = 0; i < fsn.nodes.size(); ++i) {
    if (relevance[i] == best) anchors.push_back(i);
  }

  struct Scored {
    std::string label;
    double score;
  };
  std::vector<Scored> scored;
  for (std::size_t t = 0; t < fsn.nodes.size(); ++t) {
    double acq = 0.0;
    for (std::size_t n : anchors) {
      acq += acquaintance_score(fsn.nodes[t], fsn.nodes[n], lex, weights);
    }
    acq /= static_cast<double>(anchors.size());
    if (acq <= 0.0) continue;
    const double score = acq * (0.5 + 0.5 * fsn.nodes[t].exposition.ctr);
    scored.push_back({fsn.nodes[t].label, score});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& x, const Scored& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.label < y.label;
  });

  std::vector<std::pair<std::string, double>> out;
  std::unordered_set<std::string> seen;
  for (const Scored& s : scored) {
    if (out.size() >= k) break;
    if (!seen.insert(s.label).second) continue;  // dedupe repeated labels
    out.emplace_back(s.label, s.score);
  }
  return out;
}

}  // namespace folkso
