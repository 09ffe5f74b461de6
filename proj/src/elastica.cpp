#include "folkso/elastica.hpp"

#include <cmath>
#include <limits>

namespace folkso {

namespace {

constexpr double kConditionLimit = 1e12;

// Inverse of the 3x3 normal matrix M = sum w dx dx^T per node.
// Throws SingularStencil on rank-deficient geometry.
std::vector<Mat3> normal_inverses(const NeighborStencil& stencil) {
  std::vector<Mat3> inv;
  inv.reserve(stencil.neighbors.size());
  for (std::size_t i = 0; i < stencil.neighbors.size(); ++i) {
    Mat3 m = Mat3::Zero();
    for (const StencilEntry& e : stencil.neighbors[i]) {
      m += e.weight * e.offset * e.offset.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Mat3> solver(m);
    const double lo = solver.eigenvalues().minCoeff();
    const double hi = solver.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > kConditionLimit) {
      throw Error(ErrorCode::SingularStencil,
                  "node " + std::to_string(i) +
                      " has coplanar or collinear neighbors");
    }
    inv.push_back(m.inverse());
  }
  return inv;
}

std::vector<Vec3> acceleration(const LatticeState& state,
                               const NeighborStencil& stencil,
                               const ElasticModuli& m) {
  // div sigma evaluated variationally: the exact negative gradient of the
  // discrete strain energy. The collocation divergence is not self-adjoint
  // on k-NN stencils and pumps energy into the lattice.
  std::vector<Vec3> acc = deformation_energy_gradient(state.u, stencil, m);
  for (std::size_t i = 0; i < acc.size(); ++i) {
    acc[i] = (state.body_force[i] - acc[i]) / state.rho[i];
  }
  return acc;
}

}  // namespace

LatticeState LatticeState::at_rest(std::vector<Vec3> reference, double density) {
  LatticeState s;
  const std::size_t n = reference.size();
  s.ref = std::move(reference);
  s.u.assign(n, Vec3::Zero());
  s.velocity.assign(n, Vec3::Zero());
  s.body_force.assign(n, Vec3::Zero());
  s.rho.assign(n, density);
  return s;
}

std::vector<Vec3> LatticeState::positions() const {
  std::vector<Vec3> pos(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) pos[i] = ref[i] + u[i];
  return pos;
}

DisplacementField displacement_field(const Embedding& ref,
                                     const Embedding& deformed,
                                     const NodeMap& corr) {
  if (corr.size() != ref.coords.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "correspondence must cover every reference node");
  }
  DisplacementField field;
  field.u.assign(ref.coords.size(), Vec3::Zero());
  field.matched.assign(ref.coords.size(), false);
  for (std::size_t i = 0; i < corr.size(); ++i) {
    if (!corr[i]) continue;
    const std::size_t target = *corr[i];
    if (target >= deformed.coords.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "correspondence target out of range");
    }
    field.u[i] = deformed.coords[target] - ref.coords[i];
    field.matched[i] = true;
  }
  return field;
}

std::vector<Mat3> gradient(const std::vector<Vec3>& u,
                           const NeighborStencil& stencil) {
  if (u.size() != stencil.neighbors.size()) {
    throw Error(ErrorCode::InvalidArgument, "field size != stencil size");
  }
  const std::vector<Mat3> inv = normal_inverses(stencil);
  std::vector<Mat3> grads(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    Mat3 rhs = Mat3::Zero();  // sum w du dx^T
    for (const StencilEntry& e : stencil.neighbors[i]) {
      rhs += e.weight * (u[e.neighbor] - u[i]) * e.offset.transpose();
    }
    grads[i] = rhs * inv[i];
  }
  return grads;
}

StrainTensor strain(const Mat3& G) { return 0.5 * (G + G.transpose()); }

StressTensor hooke_stress(const StrainTensor& eps, const ElasticModuli& m) {
  return 2.0 * m.mu * eps + m.lambda * eps.trace() * Mat3::Identity();
}

std::vector<Vec3> stress_divergence(const std::vector<StressTensor>& sigma,
                                    const NeighborStencil& stencil) {
  if (sigma.size() != stencil.neighbors.size()) {
    throw Error(ErrorCode::InvalidArgument, "field size != stencil size");
  }
  const std::vector<Mat3> inv = normal_inverses(stencil);
  std::vector<Vec3> div(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    // rhs.col(c) accumulates sum_j w_j dsigma_(a,b),j dx_j per component;
    // grad_ab = M^-1 rhs_ab, and div_a = sum_b grad_ab[b].
    Vec3 out = Vec3::Zero();
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        Vec3 rhs = Vec3::Zero();
        for (const StencilEntry& e : stencil.neighbors[i]) {
          rhs += e.weight * (sigma[e.neighbor](a, b) - sigma[i](a, b)) * e.offset;
        }
        out[a] += (inv[i] * rhs)[b];
      }
    }
    div[i] = out;
  }
  return div;
}

double stable_dt(const ElasticModuli& m, const LatticeState& state,
                 const NeighborStencil& stencil) {
  constexpr double kCfl = 0.5;
  double rho_min = std::numeric_limits<double>::infinity();
  for (double r : state.rho) rho_min = std::min(rho_min, r);
  if (!(stencil.h_min > 0.0) || !(rho_min > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "need h_min > 0 and rho > 0");
  }
  const double v_p = std::sqrt((m.lambda + 2.0 * m.mu) / rho_min);
  return kCfl * stencil.h_min / v_p;
}

LatticeState step_dynamics(const LatticeState& state,
                           const NeighborStencil& stencil,
                           const ElasticModuli& m, double de) {
  if (!(de > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "time step must be positive");
  }
  const double bound = stable_dt(m, state, stencil);
  if (de > bound) {
    throw Error(ErrorCode::UnstableTimeStep,
                "de " + std::to_string(de) + " exceeds stability bound " +
                    std::to_string(bound));
  }

  LatticeState next = state;
  const std::size_t n = state.u.size();

  // Kick-drift-kick keeps velocity synchronized with displacement, so the
  // sampled energy error stays second order in de.
  std::vector<Vec3> acc = acceleration(next, stencil, m);
  for (std::size_t i = 0; i < n; ++i) next.velocity[i] += 0.5 * de * acc[i];
  for (std::size_t i = 0; i < n; ++i) next.u[i] += de * next.velocity[i];
  acc = acceleration(next, stencil, m);
  for (std::size_t i = 0; i < n; ++i) next.velocity[i] += 0.5 * de * acc[i];

  next.clock += de;
  return next;
}

double deformation_energy(const std::vector<StrainTensor>& eps,
                          const ElasticModuli& m,
                          const std::vector<double>& weights) {
  if (!weights.empty() && weights.size() != eps.size()) {
    throw Error(ErrorCode::InvalidArgument, "weights size != field size");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    const double tr = eps[i].trace();
    total += w * (m.mu * eps[i].squaredNorm() + 0.5 * m.lambda * tr * tr);
  }
  return total;
}

std::vector<Vec3> deformation_energy_gradient(
    const std::vector<Vec3>& u, const NeighborStencil& stencil,
    const ElasticModuli& m, const std::vector<double>& weights) {
  const std::vector<Mat3> inv = normal_inverses(stencil);
  const std::vector<Mat3> grads = gradient(u, stencil);
  std::vector<Vec3> out(u.size(), Vec3::Zero());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double w_node = weights.empty() ? 1.0 : weights[i];
    if (w_node == 0.0) continue;
    // dW/d(eps_i) = w * (2 mu eps + lambda tr I) = w * sigma(eps); the
    // symmetric sensitivity passes through sym() unchanged, so
    // dW = S : dG with S = w * sigma.
    const Mat3 S = w_node * hooke_stress(strain(grads[i]), m);
    const Mat3 SMinv = S * inv[i];
    for (const StencilEntry& e : stencil.neighbors[i]) {
      const Vec3 g = e.weight * (SMinv * e.offset);
      out[e.neighbor] += g;
      out[i] -= g;
    }
  }
  return out;
}

double total_energy(const LatticeState& state, const NeighborStencil& stencil,
                    const ElasticModuli& m) {
  const std::vector<Mat3> grads = gradient(state.u, stencil);
  std::vector<StrainTensor> eps(grads.size());
  for (std::size_t i = 0; i < grads.size(); ++i) eps[i] = strain(grads[i]);
  double kinetic = 0.0;
  for (std::size_t i = 0; i < state.u.size(); ++i) {
    kinetic += 0.5 * state.rho[i] * state.velocity[i].squaredNorm();
  }
  return kinetic + deformation_energy(eps, m);
}

}  // namespace folkso
