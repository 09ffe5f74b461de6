#pragma once
// Spatial layout of FSN nodes: spectral coordinates from the graph
// Laplacian, a uniform cell partition, and k-nearest-neighbor stencils
// for the least-squares differential operators.

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "folkso/fsn.hpp"

namespace folkso {

using Vec3 = Eigen::Vector3d;

struct CellIndex {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  auto operator<=>(const CellIndex&) const = default;
};

struct Embedding {
  std::vector<Vec3> coords;
  double cell_size = 1.0;
  std::map<CellIndex, std::vector<std::size_t>> cells;
  std::uint64_t seed = 0;
};

struct StencilEntry {
  std::size_t neighbor = 0;
  Vec3 offset = Vec3::Zero();  // coords[neighbor] - coords[node]
  double weight = 0.0;         // 1 / |offset|^2
};

struct NeighborStencil {
  std::vector<std::vector<StencilEntry>> neighbors;  // per node
  double h_min = 0.0;  // minimum nearest-neighbor distance
};

// Spectral layout: the three Laplacian eigenvectors with smallest nonzero
// eigenvalues, sign-fixed (first nonzero entry positive) and scaled to
// unit RMS per axis. Disconnected components are laid out independently
// and offset along x by 10 per component. Deterministic for fixed inputs.
Embedding embed(const FSN& fsn, std::uint64_t seed);

// Cell index = floor(coord / cell_size), componentwise.
// Throws NonPositiveCellSize.
std::map<CellIndex, std::vector<std::size_t>> assign_cells(
    const std::vector<Vec3>& coords, double cell_size);

// k nearest neighbors by Euclidean distance, ties broken by node index,
// weights 1/d^2. Throws DegenerateGeometry when two nodes coincide.
NeighborStencil build_stencils(const Embedding& embedding, std::size_t k);

}  // namespace folkso
