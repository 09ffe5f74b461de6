#pragma once
// Small-strain elasticity on the embedded tag lattice: displacement fields
// between snapshots, weighted-least-squares gradients, Hooke stress,
// explicit elastodynamic stepping, and deformation energy.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "folkso/embedding.hpp"

namespace folkso {

using Mat3 = Eigen::Matrix3d;
using StrainTensor = Mat3;  // symmetric by construction
using StressTensor = Mat3;

struct ElasticModuli {
  double mu = 1.0;      // shear modulus, > 0
  double lambda = 1.0;  // second Lame parameter, >= 0

  bool valid() const { return mu > 0.0 && lambda >= 0.0; }
};

// Per-node displacement; nodes without a counterpart carry u = 0 and are
// flagged unmatched.
struct DisplacementField {
  std::vector<Vec3> u;
  std::vector<bool> matched;
};

// Dynamic state of the lattice. Positions are always ref + u.
struct LatticeState {
  std::vector<Vec3> ref;        // reference coordinates
  std::vector<Vec3> u;          // displacement
  std::vector<Vec3> velocity;   // du/de
  std::vector<Vec3> body_force; // defaults to zero
  std::vector<double> rho;      // mass density, > 0
  double clock = 0.0;           // accumulated exposition time

  static LatticeState at_rest(std::vector<Vec3> reference, double density = 1.0);
  std::vector<Vec3> positions() const;
};

// Partial injective map from reference nodes to deformed nodes.
// Correspondence for the displacement field: corr[i] is the deformed index
// of reference node i, or nullopt.
using NodeMap = std::vector<std::optional<std::size_t>>;

// u(i) = deformed[corr(i)] - ref[i] for matched nodes, 0 otherwise.
DisplacementField displacement_field(const Embedding& ref,
                                     const Embedding& deformed,
                                     const NodeMap& corr);

// Per-node G with G(a,b) = du_a/dx_b, minimizing the weighted residual
// sum |du_j - G dx_j|^2 over the stencil. Throws SingularStencil when the
// normal matrix is rank-deficient (condition number above 1e12).
std::vector<Mat3> gradient(const std::vector<Vec3>& u,
                           const NeighborStencil& stencil);

// Symmetric part of the displacement gradient.
StrainTensor strain(const Mat3& G);

// sigma = 2 mu eps + lambda tr(eps) I.
StressTensor hooke_stress(const StrainTensor& eps, const ElasticModuli& m);

// Component a: sum_b d(sigma_ab)/dx_b, each partial from the per-node
// least-squares gradient. Throws SingularStencil as gradient does.
std::vector<Vec3> stress_divergence(const std::vector<StressTensor>& sigma,
                                    const NeighborStencil& stencil);

// CFL-type bound: 0.5 * h_min / v_p with v_p = sqrt((lambda + 2 mu) / rho_min).
double stable_dt(const ElasticModuli& m, const LatticeState& state,
                 const NeighborStencil& stencil);

// One kick-drift-kick leapfrog step with acceleration
// a = (div sigma + f) / rho. Throws UnstableTimeStep when de exceeds
// stable_dt. Returns the new state; inputs are untouched.
LatticeState step_dynamics(const LatticeState& state,
                           const NeighborStencil& stencil,
                           const ElasticModuli& m, double de);

// Sum over nodes of weight * (mu sum eps_ij^2 + lambda/2 tr(eps)^2).
// Empty weights means 1 per node.
double deformation_energy(const std::vector<StrainTensor>& eps,
                          const ElasticModuli& m,
                          const std::vector<double>& weights = {});

// Analytic d(deformation_energy)/d(u): the adjoint of the
// gradient -> strain -> energy chain. Same weights convention.
std::vector<Vec3> deformation_energy_gradient(
    const std::vector<Vec3>& u, const NeighborStencil& stencil,
    const ElasticModuli& m, const std::vector<double>& weights = {});

// Kinetic + strain energy of a state; the conserved quantity of the
// force-free dynamics.
double total_energy(const LatticeState& state, const NeighborStencil& stencil,
                    const ElasticModuli& m);

}  // namespace folkso
