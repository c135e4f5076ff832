#pragma once

#include <functional>
#include <vector>

#include "vortexbody/contour.hpp"
#include "vortexbody/kernels.hpp"
#include "vortexbody/limit_dynamics.hpp"
#include "vortexbody/potentials.hpp"
#include "vortexbody/types.hpp"

namespace vortexbody::eps {

/// Body-frame state of the finite-size system: solid velocities (ell, r),
/// attitude theta, lab-frame center h, and body-frame blobs. The
/// integrator maintains theta' = r and h' = Q(theta) ell.
struct EpsState {
  Vec2 ell = Vec2::Zero();
  double r = 0.0;
  double theta = 0.0;
  Vec2 h = Vec2::Zero();
  VorticityField field;
  double t = 0.0;
};

struct EpsParams {
  double m = 1.0;
  double J0 = 1.0;
  double gamma = 0.0;
  double dt = 1e-3;
  int boundary_nodes = 256;  // contour quadrature resolution for the C terms
  limit::Integrator integrator = limit::Integrator::Rk4;
};

/// Per-geometry context: solved Kirchhoff potentials, added-mass entries
/// and the boundary quadrature nodes, built once and reused across force
/// evaluations and time steps.
class Workspace {
 public:
  Workspace(const BodyGeometry& geom, int boundary_nodes = 256);

  const BodyGeometry& geometry() const { return geom_; }
  const KirchhoffPotentials& potentials() const { return phi_; }
  const Mat3& m2() const { return m2_; }
  const BoundaryCurve& curve() const { return curve_; }

  Mat3 total_mass(const EpsParams& params) const;

 private:
  BodyGeometry geom_;
  KirchhoffPotentials phi_;
  Mat3 m2_;
  BoundaryCurve curve_;
};

/// v - gamma H, the part of the velocity with zero circulation around the
/// body: exterior Biot-Savart of the blobs + alpha H + the rigid lifting
/// gradients.
Vec2 tilde_velocity(const Workspace& ws, const EpsState& state, const Vec2& x);

/// Pressure head entering the boundary force integrals,
///   Q = |v~|^2/2 + gamma (v~ - ell - r x^perp) . H + gamma^2 |H|^2 / 2
///       - (ell + r x^perp) . v~.
std::function<double(const Vec2&)> pressure_potential(const EpsState& state,
                                                      const BodyGeometry& geom, double gamma);

/// Pressure force decomposition. B holds the vorticity volume terms
/// (atomic quadrature over the blobs); C_a..C_d the boundary contour
/// terms of the pressure head against K_i = (n_1, n_2, x^perp . n).
/// accel solves (M1 + M2) (ell, r)' = -(B + C) + (-m r ell^perp, 0), and
/// total_force/torque reconstruct the full pressure force
/// F = -(M2 accel + B + C). C_b is evaluated by real quadrature and
/// cross-checked against Blasius' complex form; blasius_defect records the
/// largest disagreement.
struct ForceBreakdown {
  Vec3 B = Vec3::Zero();
  Vec3 C_a = Vec3::Zero();
  Vec3 C_b = Vec3::Zero();
  Vec3 C_c = Vec3::Zero();
  Vec3 C_d = Vec3::Zero();
  Vec3 accel = Vec3::Zero();
  Vec2 total_force = Vec2::Zero();
  double total_torque = 0.0;
  double blasius_defect = 0.0;

  Vec3 C() const { return C_a + C_b + C_c + C_d; }
};

ForceBreakdown force_terms(const Workspace& ws, const EpsState& state, const EpsParams& params);
ForceBreakdown force_terms(const EpsState& state, const BodyGeometry& geom,
                           const EpsParams& params);

struct SolidDerivative {
  Vec2 dell = Vec2::Zero();
  double dr = 0.0;
  double dtheta = 0.0;
  Vec2 dh = Vec2::Zero();
};
SolidDerivative solid_rhs(const Workspace& ws, const EpsState& state, const EpsParams& params);

/// Body-frame blob velocities (v_{-j} - ell - r x_j^perp)(x_j): blob j's
/// direct singular term is removed, its image kept.
std::vector<Vec2> blob_rhs_body_frame(const Workspace& ws, const EpsState& state, double gamma);

/// Conserved quantity of the body+fluid system,
///   2H = X^T M X - sum_{j,k} G_H(x_j, x_k) g_j g_k
///        - 2 gamma sum_j g_j Psi_H(x_j),  X = (ell, r),
/// with the atomic double sum renormalized on the diagonal: the divergent
/// ln|x - y| part of G_H(x_j, x_j) is dropped, its finite remainder
///   (1/2pi)( ln|T'(x)| + ln|T(x)| - ln|T(x) - T(x)*| )
/// is kept (the self-image interaction, which moves with the blob).
struct EnergyReport {
  double value = 0.0;
  double body_kinetic = 0.0;  // X^T M X / 2
  double blob_interaction = 0.0;
  double blob_self = 0.0;
  double circulation_coupling = 0.0;
};
EnergyReport finite_energy(const Workspace& ws, const EpsState& state, const EpsParams& params);

struct Sample {
  double t = 0.0;
  Vec2 ell = Vec2::Zero();
  double r = 0.0;
  double theta = 0.0;
  Vec2 h = Vec2::Zero();
  Vec2 xi = Vec2::Zero();  // m Q(theta) ell, the lab-frame momentum
  double energy = 0.0;
  double support_radius = 0.0;
  double bound_speed = 0.0;  // max_j |v_{-j}(x_j) - ell|, the support-growth rate
  double circulation = 0.0;  // oint v . tau ds, conserved (= gamma)
  ForceBreakdown force;
  std::vector<Vec2> blob_positions;
};

struct Trajectory {
  double epsilon = 1.0;
  std::vector<double> strengths;
  std::vector<Sample> samples;
};

/// Coupled integration of (ell, r, theta, h, blobs); disk geometry only.
Trajectory run_coupled(const EpsState& initial, const BodyGeometry& geom,
                       const EpsParams& params, double T, int output_stride = 1);

/// Matched initial data for the small-size sweep: lab-frame blobs, body
/// initially centered at h0 with theta = 0.
struct MatchedInitialData {
  Vec2 ell0 = Vec2::Zero();
  double r0 = 0.0;
  Vec2 h0 = Vec2::Zero();
  VorticityField field;  // lab frame
};

struct ConvergenceRow {
  double epsilon = 0.0;
  double sup_error = 0.0;    // sup_t |h_eps(t) - h(t)|
  double final_error = 0.0;  // |h_eps(T) - h(T)|
  double energy_drift = 0.0; // relative drift of the finite-size energy
  double max_eps_r = 0.0;    // max_t |eps r_eps(t)|
};

/// Runs the finite-size system for each epsilon and the limit system from
/// the same data, and reports the trajectory gaps (disk only).
std::vector<ConvergenceRow> convergence_study(const MatchedInitialData& data,
                                              const std::vector<double>& eps_list,
                                              const EpsParams& params, double T,
                                              int output_stride = 10);

/// Discrete support-radius inequality: along the samples,
///   rho(t_n) <= rho(t_0) + int_0^{t_n} bound_speed,
/// checked with trapezoid time integration. margin is the worst
/// (rhs - lhs); slack_allowance = -10 dt max_speed is the permitted
/// discretization slack.
struct MonitorReport {
  double min_margin = 0.0;
  double max_speed = 0.0;
  double slack_allowance = 0.0;
  bool ok = true;
};
MonitorReport support_radius_monitor(const std::vector<double>& t,
                                     const std::vector<double>& support_radius,
                                     const std::vector<double>& bound_speed, double dt);
MonitorReport support_radius_monitor(const Trajectory& traj, double dt);
MonitorReport support_radius_monitor(const limit::Trajectory& traj, double dt);

/// Residual of the small-body expansion of the pressure force for a frozen
/// state: what remains of -(B + C) after subtracting the rotated
/// Kutta-Joukowski term and the xi/zeta corrections (third component
/// already divided by epsilon). Shrinks as epsilon does.
Vec3 small_body_residual(const Workspace& ws, const EpsState& state, const EpsParams& params);

}  // namespace vortexbody::eps
