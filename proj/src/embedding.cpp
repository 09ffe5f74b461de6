#include "folkso/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace folkso {

namespace {

std::vector<std::vector<std::size_t>> connected_components(const FSN& fsn) {
  const std::size_t n = fsn.nodes.size();
  const auto adj = fsn.adjacency();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(components.size());
    components.emplace_back();
    std::vector<std::size_t> stack{start};
    comp[start] = id;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      components[id].push_back(v);
      for (std::size_t w : adj[v]) {
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
  }
  for (auto& c : components) std::sort(c.begin(), c.end());
  return components;
}

// Sign convention: first entry with magnitude above tolerance is positive.
void fix_sign(Eigen::VectorXd& v) {
  const double tol = 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > tol) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

// Coordinates for one connected component, up to 3 axes.
Eigen::MatrixXd component_coords(const FSN& fsn,
                                 const std::vector<std::size_t>& members) {
  const std::size_t m = members.size();
  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), 3);
  if (m < 2) return coords;

  std::map<std::size_t, Eigen::Index> local;
  for (std::size_t i = 0; i < m; ++i) local[members[i]] = static_cast<Eigen::Index>(i);

  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                              static_cast<Eigen::Index>(m));
  for (const FsnEdge& e : fsn.edges) {
    auto it = local.find(e.i);
    auto jt = local.find(e.j);
    if (it == local.end() || jt == local.end()) continue;
    const Eigen::Index a = it->second;
    const Eigen::Index b = jt->second;
    lap(a, a) += e.weight;
    lap(b, b) += e.weight;
    lap(a, b) -= e.weight;
    lap(b, a) -= e.weight;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  const Eigen::VectorXd& values = solver.eigenvalues();
  // One zero eigenvalue per connected component; skip it, take the next 3.
  const double zero_tol = 1e-9 * std::max(1.0, values.cwiseAbs().maxCoeff());
  Eigen::Index first_nonzero = 0;
  while (first_nonzero < values.size() && values[first_nonzero] <= zero_tol) {
    ++first_nonzero;
  }
  const Eigen::Index axes =
      std::min<Eigen::Index>(3, values.size() - first_nonzero);
  for (Eigen::Index axis = 0; axis < axes; ++axis) {
    Eigen::VectorXd v = solver.eigenvectors().col(first_nonzero + axis);
    fix_sign(v);
    const double rms = std::sqrt(v.squaredNorm() / static_cast<double>(m));
    if (rms > 0.0) v /= rms;
    coords.col(axis) = v;
  }
  return coords;
}

double median_nn_distance(const std::vector<Vec3>& coords) {
  const std::size_t n = coords.size();
  if (n < 2) return 0.5;  // lone node: any positive cell size works
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = (coords[i] - coords[j]).norm();
      nearest[i] = std::min(nearest[i], d);
      nearest[j] = std::min(nearest[j], d);
    }
  }
  std::sort(nearest.begin(), nearest.end());
  const double median = n % 2 == 1
                            ? nearest[n / 2]
                            : 0.5 * (nearest[n / 2 - 1] + nearest[n / 2]);
  return median > 0.0 ? median : 0.5;
}

}  // namespace

Embedding embed(const FSN& fsn, std::uint64_t seed) {
  if (fsn.nodes.empty()) {
    throw Error(ErrorCode::InvalidArgument, "cannot embed an empty FSN");
  }
  Embedding result;
  result.seed = seed;
  result.coords.assign(fsn.nodes.size(), Vec3::Zero());

  const auto components = connected_components(fsn);
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& members = components[c];
    const Eigen::MatrixXd coords = component_coords(fsn, members);
    const double x_offset = 10.0 * static_cast<double>(c);
    for (std::size_t i = 0; i < members.size(); ++i) {
      result.coords[members[i]] =
          Vec3(coords(static_cast<Eigen::Index>(i), 0) + x_offset,
               coords(static_cast<Eigen::Index>(i), 1),
               coords(static_cast<Eigen::Index>(i), 2));
    }
  }

  result.cell_size = 2.0 * median_nn_distance(result.coords);
  result.cells = assign_cells(result.coords, result.cell_size);
  return result;
}

std::map<CellIndex, std::vector<std::size_t>> assign_cells(
    const std::vector<Vec3>& coords, double cell_size) {
  if (!(cell_size > 0.0)) {
    throw Error(ErrorCode::NonPositiveCellSize, "cell_size must be positive");
  }
  std::map<CellIndex, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    CellIndex idx{
        static_cast<std::int64_t>(std::floor(coords[i].x() / cell_size)),
        static_cast<std::int64_t>(std::floor(coords[i].y() / cell_size)),
        static_cast<std::int64_t>(std::floor(coords[i].z() / cell_size))};
    cells[idx].push_back(i);
  }
  return cells;
}

NeighborStencil build_stencils(const Embedding& embedding, std::size_t k) {
  const std::vector<Vec3>& coords = embedding.coords;
  const std::size_t n = coords.size();
  if (n < 2) {
    throw Error(ErrorCode::InvalidArgument, "stencils need at least 2 nodes");
  }
  if (k < 1 || k > n - 1) {
    throw Error(ErrorCode::InvalidArgument, "k must be in [1, n-1]");
  }

  NeighborStencil stencil;
  stencil.neighbors.resize(n);
  stencil.h_min = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    order.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      order.emplace_back((coords[j] - coords[i]).norm(), j);
    }
    std::partial_sort(order.begin(), order.begin() + static_cast<long>(k),
                      order.end());  // pair ordering breaks ties by index
    auto& entries = stencil.neighbors[i];
    entries.reserve(k);
    for (std::size_t r = 0; r < k; ++r) {
      const auto& [dist, j] = order[r];
      if (dist == 0.0) {
        throw Error(ErrorCode::DegenerateGeometry,
                    "nodes " + std::to_string(i) + " and " + std::to_string(j) +
                        " coincide");
      }
      entries.push_back({j, coords[j] - coords[i], 1.0 / (dist * dist)});
    }
    stencil.h_min = std::min(stencil.h_min, order[0].first);
  }
  return stencil;
}

}  // namespace folkso
