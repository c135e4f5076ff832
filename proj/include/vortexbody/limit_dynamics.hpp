#pragma once

#include <vector>

#include "vortexbody/kernels.hpp"
#include "vortexbody/types.hpp"

namespace vortexbody::limit {

/// State of the limit system: a massive point vortex at h with momentum
/// xi = m h', coupled to lab-frame vortex blobs. Blob strengths and cores
/// are constant in time; only positions evolve.
struct LimitState {
  Vec2 h = Vec2::Zero();
  Vec2 xi = Vec2::Zero();
  VorticityField field;
  double t = 0.0;
};

enum class Integrator { Rk4 };

struct LimitParams {
  double m = 1.0;
  double gamma = 0.0;
  double dt = 1e-3;
  Integrator integrator = Integrator::Rk4;
};

/// Free-plane Biot-Savart velocity of the blob field (the background
/// velocity seen by the point mass).
Vec2 u_tilde(const VorticityField& field, const Vec2& x);

struct LimitDerivative {
  Vec2 dh = Vec2::Zero();
  Vec2 dxi = Vec2::Zero();
  std::vector<Vec2> dblob;
};

/// Coupled right-hand side:
///   h' = xi / m,
///   xi' = gamma (xi/m - u_tilde(h))^perp          (Kutta-Joukowski lift),
///   x_j' = u_tilde_{-j}(x_j) + gamma H(x_j - h)   (self term excluded).
/// A blob closer to the point mass than max(core, 1e-12), or two blobs
/// closer than 1e-12, halt with a collision diagnostic.
LimitDerivative limit_rhs(const LimitState& state, const LimitParams& params);

/// Renormalized energy of the coupled system,
///   2H = m |xi/m|^2 - sum_{j != k} G(x_j - x_k) g_j g_k
///        - 2 gamma sum_j G(x_j - h) g_j,  G(x) = ln|x| / 2 pi.
/// The double sum excludes j = k (no atomic self-energy).
struct HamiltonianReport {
  double value = 0.0;
  double kinetic = 0.0;
  double blob_interaction = 0.0;
  double blob_mass_coupling = 0.0;
};
HamiltonianReport hamiltonian(const LimitState& state, const LimitParams& params);

/// Observables F with closed-form derivatives for the bracket identity
/// dF/dt = {F, H}.
enum class Functional { H1, H2, XiSquared, VorticityMomentX, Energy };

struct BracketCheck {
  double lhs = 0.0;  // centered finite difference of F along the flow
  double rhs = 0.0;  // {F, H} from the bracket formula
};
BracketCheck poisson_bracket_check(const LimitState& state, const LimitParams& params,
                                   Functional f, double fd_step = 1e-4);

LimitState step(const LimitState& state, const LimitParams& params);

/// Momentum and blob-strength flip that retraces a trajectory when the
/// run is repeated with gamma negated as well.
LimitState time_reversed(LimitState state);

struct Sample {
  double t = 0.0;
  Vec2 h = Vec2::Zero();
  Vec2 xi = Vec2::Zero();
  double hamiltonian = 0.0;
  double support_radius = 0.0;
  double max_blob_speed = 0.0;  // also the support-growth bound speed
  Vec2 center_of_vorticity = Vec2::Zero();
  std::vector<Vec2> blob_positions;
};

struct Trajectory {
  std::vector<double> strengths;
  std::vector<Sample> samples;
};

/// Integrate to time T, sampling observers every output_stride steps
/// (and at the final time). Deterministic for fixed inputs.
Trajectory run(const LimitState& initial, const LimitParams& params, double T,
               int output_stride = 1);

}  // namespace vortexbody::limit
