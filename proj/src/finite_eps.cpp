#include "vortexbody/finite_eps.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "vortexbody/ode.hpp"

namespace vortexbody::eps {

Workspace::Workspace(const BodyGeometry& geom, int boundary_nodes)
    : geom_(geom),
      phi_(geom),
      m2_(added_mass_m2(phi_)),
      curve_(BoundaryCurve::body_boundary(geom, boundary_nodes)) {}

Mat3 Workspace::total_mass(const EpsParams& params) const {
  const double e2 = geom_.epsilon * geom_.epsilon;
  return m2_ + Mat3(Vec3(params.m, params.m, e2 * params.J0).asDiagonal());
}

namespace {

void guard_blobs(const Workspace& ws, const EpsState& state) {
  const auto& blobs = state.field.blobs;
  for (std::size_t j = 0; j < blobs.size(); ++j) {
    ws.geometry().require_outside(blobs[j].position, "finite-size system");
    for (std::size_t k = j + 1; k < blobs.size(); ++k) {
      if ((blobs[j].position - blobs[k].position).norm() < 1e-12) {
        throw CollisionError("blobs " + std::to_string(j) + " and " + std::to_string(k) +
                             " collided at t=" + std::to_string(state.t));
      }
    }
  }
}

Vec2 lifting_gradient(const Workspace& ws, const EpsState& state, const Vec2& x) {
  Vec2 v = Vec2::Zero();
  if (state.ell.x() != 0.0) v += state.ell.x() * ws.potentials().gradient(1, x);
  if (state.ell.y() != 0.0) v += state.ell.y() * ws.potentials().gradient(2, x);
  if (state.r != 0.0) v += state.r * ws.potentials().gradient(3, x);
  return v;
}

}  // namespace

Vec2 tilde_velocity(const Workspace& ws, const EpsState& state, const Vec2& x) {
  const double alpha = state.field.total_strength();
  Vec2 v = biot_savart_exterior(ws.geometry(), state.field, x);
  if (alpha != 0.0) v += alpha * harmonic_field(ws.geometry(), x).value;
  return v + lifting_gradient(ws, state, x);
}

std::function<double(const Vec2&)> pressure_potential(const EpsState& state,
                                                      const BodyGeometry& geom, double gamma) {
  auto ws = std::make_shared<Workspace>(geom);
  EpsState frozen = state;
  return [ws, frozen, gamma](const Vec2& x) {
    const Vec2 vt = tilde_velocity(*ws, frozen, x);
    const Vec2 rigid = frozen.ell + frozen.r * perp(x);
    const Vec2 h = harmonic_field(ws->geometry(), x).value;
    return 0.5 * vt.squaredNorm() + gamma * (vt - rigid).dot(h) +
           0.5 * gamma * gamma * h.squaredNorm() - rigid.dot(vt);
  };
}

namespace {

struct BoundarySamples {
  std::vector<Vec2> vt;     // tilde velocity at the nodes
  std::vector<Vec2> hh;     // harmonic field
  std::vector<Vec2> rigid;  // ell + r x^perp
  std::vector<Vec2> k;      // (K_1, K_2) = normal; K_3 separate
  std::vector<double> k3;
  std::vector<double> ds;
};

BoundarySamples sample_boundary(const Workspace& ws, const EpsState& state) {
  const BoundaryCurve& curve = ws.curve();
  const int n = curve.node_count();
  BoundarySamples smp;
  smp.vt.resize(n);
  smp.hh.resize(n);
  smp.rigid.resize(n);
  smp.k.resize(n);
  smp.k3.resize(n);
  smp.ds = curve.ds();
  parallel_for(n, [&](std::size_t i) {
    const Vec2 x = to_vec(curve.points()[i]);
    smp.vt[i] = tilde_velocity(ws, state, x);
    smp.hh[i] = harmonic_field(ws.geometry(), x).value;
    smp.rigid[i] = state.ell + state.r * perp(x);
    smp.k[i] = to_vec(curve.normals()[i]);
    smp.k3[i] = perp(x).dot(to_vec(curve.normals()[i]));
  });
  return smp;
}

Vec3 contour_k_integral(const BoundarySamples& smp, const std::vector<double>& g) {
  const std::size_t n = g.size();
  Vec3 out;
  out.x() = pairwise_sum<double>(n, [&](std::size_t i) { return g[i] * smp.k[i].x() * smp.ds[i]; });
  out.y() = pairwise_sum<double>(n, [&](std::size_t i) { return g[i] * smp.k[i].y() * smp.ds[i]; });
  out.z() = pairwise_sum<double>(n, [&](std::size_t i) { return g[i] * smp.k3[i] * smp.ds[i]; });
  return out;
}

}  // namespace

ForceBreakdown force_terms(const Workspace& ws, const EpsState& state, const EpsParams& params) {
  guard_blobs(ws, state);
  ForceBreakdown out;

  // Vorticity volume terms, exact for atomic blobs. The velocity seen by
  // blob j excludes its own direct singular part.
  const auto& blobs = state.field.blobs;
  const double alpha = state.field.total_strength();
  if (!blobs.empty()) {
    out.B = pairwise_sum<Vec3>(
        blobs.size(),
        [&](std::size_t j) -> Vec3 {
          const Vec2 x = blobs[j].position;
          Vec2 vt_j = biot_savart_exterior_excluding(ws.geometry(), state.field, x, j) +
                      lifting_gradient(ws, state, x);
          const Vec2 hx = harmonic_field(ws.geometry(), x).value;
          if (alpha != 0.0) vt_j += alpha * hx;
          const Vec2 transport = perp(vt_j - state.ell - state.r * perp(x));
          const Vec2 circ = perp(hx);
          Vec3 b;
          for (int i = 1; i <= 3; ++i) {
            const Vec2 grad = ws.potentials().gradient(i, x);
            b(i - 1) = blobs[j].strength * (transport.dot(grad) +
                                            params.gamma * circ.dot(grad));
          }
          return b;
        },
        Vec3::Zero());
  }

  // Boundary contour terms against K_i.
  const BoundarySamples smp = sample_boundary(ws, state);
  const std::size_t n = smp.ds.size();
  std::vector<double> g(n);

  for (std::size_t i = 0; i < n; ++i) g[i] = 0.5 * smp.vt[i].squaredNorm();
  out.C_a = contour_k_integral(smp, g);
  for (std::size_t i = 0; i < n; ++i) g[i] = (smp.vt[i] - smp.rigid[i]).dot(smp.hh[i]);
  out.C_b = params.gamma * contour_k_integral(smp, g);
  for (std::size_t i = 0; i < n; ++i) g[i] = 0.5 * smp.hh[i].squaredNorm();
  out.C_c = params.gamma * params.gamma * contour_k_integral(smp, g);
  for (std::size_t i = 0; i < n; ++i) g[i] = -smp.rigid[i].dot(smp.vt[i]);
  out.C_d = contour_k_integral(smp, g);

  // Blasius cross-check of C_b from the same node samples: both factors
  // are tangent, so the complex contour forms must reproduce the real
  // quadrature.
  if (params.gamma != 0.0) {
    const auto& curve = ws.curve();
    const Complex force_int = pairwise_sum<Complex>(n, [&](std::size_t i) {
      const Vec2 f = smp.vt[i] - smp.rigid[i];
      const Complex fc(f.x(), -f.y());
      const Complex gc(smp.hh[i].x(), -smp.hh[i].y());
      return fc * gc * curve.dz()[i];
    });
    const Complex torque_int = pairwise_sum<Complex>(n, [&](std::size_t i) {
      const Vec2 f = smp.vt[i] - smp.rigid[i];
      const Complex fc(f.x(), -f.y());
      const Complex gc(smp.hh[i].x(), -smp.hh[i].y());
      return curve.points()[i] * fc * gc * curve.dz()[i];
    });
    const Vec2 bf = params.gamma * to_vec(Complex(0.0, 1.0) * std::conj(force_int));
    const double bt = params.gamma * torque_int.real();
    out.blasius_defect = std::max((bf - Vec2(out.C_b(0), out.C_b(1))).norm(),
                                  std::abs(bt - out.C_b(2)));
  }

  // Newton solve with the added-mass terms on the left-hand side.
  const Vec3 coriolis(-params.m * state.r * perp(state.ell).x(),
                      -params.m * state.r * perp(state.ell).y(), 0.0);
  const Vec3 rhs = -(out.B + out.C()) + coriolis;
  out.accel = ws.total_mass(params).llt().solve(rhs);

  const Vec3 f = -(ws.m2() * out.accel + out.B + out.C());
  out.total_force = Vec2(f(0), f(1));
  out.total_torque = f(2);
  return out;
}

ForceBreakdown force_terms(const EpsState& state, const BodyGeometry& geom,
                           const EpsParams& params) {
  const Workspace ws(geom, params.boundary_nodes);
  return force_terms(ws, state, params);
}

SolidDerivative solid_rhs(const Workspace& ws, const EpsState& state, const EpsParams& params) {
  const ForceBreakdown fb = force_terms(ws, state, params);
  SolidDerivative d;
  d.dell = Vec2(fb.accel(0), fb.accel(1));
  d.dr = fb.accel(2);
  d.dtheta = state.r;
  d.dh = rotation(state.theta) * state.ell;
  return d;
}

std::vector<Vec2> blob_rhs_body_frame(const Workspace& ws, const EpsState& state, double gamma) {
  guard_blobs(ws, state);
  const auto& blobs = state.field.blobs;
  const double alpha = state.field.total_strength();
  std::vector<Vec2> v(blobs.size());
  for (std::size_t j = 0; j < blobs.size(); ++j) {
    const Vec2 x = blobs[j].position;
    Vec2 vj = biot_savart_exterior_excluding(ws.geometry(), state.field, x, j) +
              lifting_gradient(ws, state, x);
    vj += (gamma + alpha) * harmonic_field(ws.geometry(), x).value;
    v[j] = vj - state.ell - state.r * perp(x);
  }
  return v;
}

namespace {

// lim_{y -> x} [ G_H(x, y) - ln|x - y| / 2 pi ].
double hydrodynamic_self_term(const BodyGeometry& geom, const Vec2& x) {
  const Complex z = to_complex(x);
  const Complex u = geom.forward(z);
  const Complex us = u / std::norm(u);
  return (std::log(std::abs(geom.derivative(z))) + std::log(std::abs(u)) -
          std::log(std::abs(u - us))) /
         kTwoPi;
}

}  // namespace

EnergyReport finite_energy(const Workspace& ws, const EpsState& state, const EpsParams& params) {
  EnergyReport rep;
  const Vec3 x(state.ell.x(), state.ell.y(), state.r);
  rep.body_kinetic = 0.5 * x.dot(ws.total_mass(params) * x);
  const auto& blobs = state.field.blobs;
  const std::size_t n = blobs.size();
  if (n > 1) {
    rep.blob_interaction = -pairwise_sum<double>(n * n, [&](std::size_t idx) {
      const std::size_t j = idx / n, k = idx % n;
      if (j >= k) return 0.0;
      return green_hydrodynamic(ws.geometry(), blobs[j].position, blobs[k].position) *
             blobs[j].strength * blobs[k].strength;
    });
  }
  if (n > 0) {
    rep.blob_self = -0.5 * pairwise_sum<double>(n, [&](std::size_t j) {
      return hydrodynamic_self_term(ws.geometry(), blobs[j].position) * blobs[j].strength *
             blobs[j].strength;
    });
    rep.circulation_coupling = -params.gamma * pairwise_sum<double>(n, [&](std::size_t j) {
      return harmonic_field(ws.geometry(), blobs[j].position).stream * blobs[j].strength;
    });
  }
  rep.value = rep.body_kinetic + rep.blob_interaction + rep.blob_self + rep.circulation_coupling;
  return rep;
}

namespace {

Eigen::VectorXd pack(const EpsState& s) {
  Eigen::VectorXd y(6 + 2 * s.field.blobs.size());
  y.segment<2>(0) = s.ell;
  y(2) = s.r;
  y(3) = s.theta;
  y.segment<2>(4) = s.h;
  for (std::size_t j = 0; j < s.field.blobs.size(); ++j) {
    y.segment<2>(6 + 2 * j) = s.field.blobs[j].position;
  }
  return y;
}

EpsState unpack(const Eigen::VectorXd& y, const EpsState& like, double t) {
  EpsState s = like;
  s.ell = y.segment<2>(0);
  s.r = y(2);
  s.theta = y(3);
  s.h = y.segment<2>(4);
  for (std::size_t j = 0; j < s.field.blobs.size(); ++j) {
    s.field.blobs[j].position = y.segment<2>(6 + 2 * j);
  }
  s.t = t;
  return s;
}

EpsState eps_step(const Workspace& ws, const EpsState& state, const EpsParams& params) {
  auto rhs = [&](double t, const Eigen::VectorXd& y) {
    const EpsState s = unpack(y, state, t);
    const SolidDerivative sd = solid_rhs(ws, s, params);
    const std::vector<Vec2> bv = blob_rhs_body_frame(ws, s, params.gamma);
    Eigen::VectorXd dy(y.size());
    dy.segment<2>(0) = sd.dell;
    dy(2) = sd.dr;
    dy(3) = sd.dtheta;
    dy.segment<2>(4) = sd.dh;
    for (std::size_t j = 0; j < bv.size(); ++j) dy.segment<2>(6 + 2 * j) = bv[j];
    return dy;
  };
  EpsState out =
      unpack(rk4_step(pack(state), state.t, params.dt, rhs), state, state.t + params.dt);
  if (!pack(out).allFinite()) {
    throw std::runtime_error("coupled run: non-finite state at t=" + std::to_string(out.t));
  }
  return out;
}

double boundary_circulation(const Workspace& ws, const EpsState& state, double gamma) {
  const BoundaryCurve& curve = ws.curve();
  const int n = curve.node_count();
  return pairwise_sum<double>(n, [&](std::size_t i) {
    const Vec2 x = to_vec(curve.points()[i]);
    const Vec2 v = tilde_velocity(ws, state, x) +
                   gamma * harmonic_field(ws.geometry(), x).value;
    return v.dot(to_vec(curve.tangents()[i])) * curve.ds()[i];
  });
}

Sample observe(const Workspace& ws, const EpsState& s, const EpsParams& params) {
  Sample smp;
  smp.t = s.t;
  smp.ell = s.ell;
  smp.r = s.r;
  smp.theta = s.theta;
  smp.h = s.h;
  smp.xi = params.m * (rotation(s.theta) * s.ell);
  smp.energy = finite_energy(ws, s, params).value;
  smp.support_radius = s.field.support_radius();
  smp.circulation = boundary_circulation(ws, s, params.gamma);
  smp.force = force_terms(ws, s, params);
  const std::vector<Vec2> bv = blob_rhs_body_frame(ws, s, params.gamma);
  for (std::size_t j = 0; j < bv.size(); ++j) {
    // |v_{-j} - ell|: the rotation term is tangential and does not grow
    // the support radius.
    smp.bound_speed =
        std::max(smp.bound_speed, (bv[j] + s.r * perp(s.field.blobs[j].position)).norm());
  }
  smp.blob_positions.reserve(s.field.blobs.size());
  for (const auto& b : s.field.blobs) smp.blob_positions.push_back(b.position);
  return smp;
}

void require_disk(const BodyGeometry& geom, const char* what) {
  if (geom.map.name != "disk") {
    throw std::invalid_argument(std::string(what) +
                                ": coupled time integration is restricted to the disk");
  }
}

}  // namespace

Trajectory run_coupled(const EpsState& initial, const BodyGeometry& geom,
                       const EpsParams& params, double T, int output_stride) {
  require_disk(geom, "run_coupled");
  if (!(params.dt > 0.0) || T < 0.0) {
    throw std::invalid_argument("run_coupled: need dt > 0 and T >= 0");
  }
  if (output_stride < 1) output_stride = 1;
  const Workspace ws(geom, params.boundary_nodes);

  Trajectory traj;
  traj.epsilon = geom.epsilon;
  for (const auto& b : initial.field.blobs) traj.strengths.push_back(b.strength);

  const auto steps = static_cast<long>(std::llround(T / params.dt));
  EpsState s = initial;
  traj.samples.push_back(observe(ws, s, params));
  for (long n = 1; n <= steps; ++n) {
    s = eps_step(ws, s, params);
    if (n % output_stride == 0 || n == steps) traj.samples.push_back(observe(ws, s, params));
  }
  return traj;
}

std::vector<ConvergenceRow> convergence_study(const MatchedInitialData& data,
                                              const std::vector<double>& eps_list,
                                              const EpsParams& params, double T,
                                              int output_stride) {
  if (eps_list.empty()) throw std::invalid_argument("convergence_study: empty epsilon list");

  limit::LimitParams lp;
  lp.m = params.m;
  lp.gamma = params.gamma;
  lp.dt = params.dt;
  limit::LimitState ls;
  ls.h = data.h0;
  ls.xi = params.m * data.ell0;
  ls.field = data.field;
  const limit::Trajectory reference = limit::run(ls, lp, T, output_stride);

  std::vector<ConvergenceRow> rows;
  for (double eps : eps_list) {
    BodyGeometry geom{unit_disk_map(), eps};
    EpsState s0;
    s0.ell = data.ell0;
    s0.r = data.r0;
    s0.h = data.h0;
    s0.field = data.field;
    for (auto& b : s0.field.blobs) b.position -= data.h0;  // body frame
    const Trajectory traj = run_coupled(s0, geom, params, T, output_stride);

    ConvergenceRow row;
    row.epsilon = eps;
    const std::size_t count = std::min(traj.samples.size(), reference.samples.size());
    for (std::size_t i = 0; i < count; ++i) {
      row.sup_error =
          std::max(row.sup_error, (traj.samples[i].h - reference.samples[i].h).norm());
      row.max_eps_r = std::max(row.max_eps_r, std::abs(eps * traj.samples[i].r));
    }
    row.final_error = (traj.samples[count - 1].h - reference.samples[count - 1].h).norm();
    const double e0 = traj.samples.front().energy;
    for (const auto& smp : traj.samples) {
      row.energy_drift =
          std::max(row.energy_drift, std::abs(smp.energy - e0) / std::max(1.0, std::abs(e0)));
    }
    rows.push_back(row);
  }
  return rows;
}

MonitorReport support_radius_monitor(const std::vector<double>& t,
                                     const std::vector<double>& support_radius,
                                     const std::vector<double>& bound_speed, double dt) {
  if (t.size() != support_radius.size() || t.size() != bound_speed.size() || t.empty()) {
    throw std::invalid_argument("support_radius_monitor: inconsistent series");
  }
  MonitorReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  double integral = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    rep.max_speed = std::max(rep.max_speed, bound_speed[i]);
    if (i > 0) {
      integral += 0.5 * (bound_speed[i] + bound_speed[i - 1]) * (t[i] - t[i - 1]);
    }
    rep.min_margin = std::min(rep.min_margin, support_radius.front() + integral -
                                                  support_radius[i]);
  }
  rep.slack_allowance = -10.0 * dt * rep.max_speed;
  rep.ok = rep.min_margin >= rep.slack_allowance;
  return rep;
}

MonitorReport support_radius_monitor(const Trajectory& traj, double dt) {
  std::vector<double> t, rho, s;
  for (const auto& smp : traj.samples) {
    t.push_back(smp.t);
    rho.push_back(smp.support_radius);
    s.push_back(smp.bound_speed);
  }
  return support_radius_monitor(t, rho, s, dt);
}

MonitorReport support_radius_monitor(const limit::Trajectory& traj, double dt) {
  std::vector<double> t, rho, s;
  for (const auto& smp : traj.samples) {
    t.push_back(smp.t);
    rho.push_back(smp.support_radius);
    s.push_back(smp.max_blob_speed);
  }
  return support_radius_monitor(t, rho, s, dt);
}

Vec3 small_body_residual(const Workspace& ws, const EpsState& state, const EpsParams& params) {
  const ForceBreakdown fb = force_terms(ws, state, params);
  const XiZeta xz = xi_zeta(ws.geometry().map);
  const double eps = ws.geometry().epsilon;

  const Vec2 k0 = state.field.blobs.empty() ? Vec2::Zero()
                                            : biot_savart_plane(state.field, Vec2::Zero());
  const Vec2 rel = state.ell - k0;
  const Vec3 bc = fb.B + fb.C();
  Vec3 res;
  res(0) = -bc(0) - params.gamma * (perp(rel).x() - eps * state.r * xz.xi.x());
  res(1) = -bc(1) - params.gamma * (perp(rel).y() - eps * state.r * xz.xi.y());
  res(2) = (-bc(2) - params.gamma * eps * xz.zeta.dot(rel)) / eps;
  return res;
}

}  // namespace vortexbody::eps
