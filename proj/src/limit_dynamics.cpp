#include "vortexbody/limit_dynamics.hpp"

#include <cmath>

#include "vortexbody/ode.hpp"

namespace vortexbody::limit {

Vec2 u_tilde(const VorticityField& field, const Vec2& x) { return biot_savart_plane(field, x); }

namespace {

double log_kernel(const Vec2& x) { return std::log(x.norm()) / kTwoPi; }

void guard_collisions(const LimitState& s) {
  const auto& blobs = s.field.blobs;
  for (std::size_t j = 0; j < blobs.size(); ++j) {
    const double dm = (blobs[j].position - s.h).norm();
    if (dm < std::max(blobs[j].core, 1e-12)) {
      throw CollisionError("blob " + std::to_string(j) + " collided with the point mass at t=" +
                           std::to_string(s.t) + " (distance " + std::to_string(dm) + ")");
    }
    for (std::size_t k = j + 1; k < blobs.size(); ++k) {
      if ((blobs[j].position - blobs[k].position).norm() < 1e-12) {
        throw CollisionError("blobs " + std::to_string(j) + " and " + std::to_string(k) +
                             " collided at t=" + std::to_string(s.t));
      }
    }
  }
}

void guard_finite(const LimitState& s) {
  bool ok = s.h.allFinite() && s.xi.allFinite();
  for (const auto& b : s.field.blobs) ok = ok && b.position.allFinite();
  if (!ok) throw std::runtime_error("limit run: non-finite state at t=" + std::to_string(s.t));
}

Eigen::VectorXd pack(const LimitState& s) {
  Eigen::VectorXd y(4 + 2 * s.field.blobs.size());
  y.segment<2>(0) = s.h;
  y.segment<2>(2) = s.xi;
  for (std::size_t j = 0; j < s.field.blobs.size(); ++j) {
    y.segment<2>(4 + 2 * j) = s.field.blobs[j].position;
  }
  return y;
}

LimitState unpack(const Eigen::VectorXd& y, const LimitState& like, double t) {
  LimitState s = like;
  s.h = y.segment<2>(0);
  s.xi = y.segment<2>(2);
  for (std::size_t j = 0; j < s.field.blobs.size(); ++j) {
    s.field.blobs[j].position = y.segment<2>(4 + 2 * j);
  }
  s.t = t;
  return s;
}

}  // namespace

LimitDerivative limit_rhs(const LimitState& state, const LimitParams& params) {
  guard_collisions(state);
  LimitDerivative d;
  d.dh = state.xi / params.m;
  d.dxi = params.gamma * perp(state.xi / params.m - u_tilde(state.field, state.h));
  const auto& blobs = state.field.blobs;
  d.dblob.resize(blobs.size());
  for (std::size_t j = 0; j < blobs.size(); ++j) {
    d.dblob[j] = biot_savart_plane_excluding(state.field, blobs[j].position, j) +
                 params.gamma * plane_kernel(blobs[j].position - state.h);
  }
  return d;
}

HamiltonianReport hamiltonian(const LimitState& state, const LimitParams& params) {
  const auto& blobs = state.field.blobs;
  for (std::size_t j = 0; j < blobs.size(); ++j) {
    for (std::size_t k = j + 1; k < blobs.size(); ++k) {
      if ((blobs[j].position - blobs[k].position).norm() < 1e-12) {
        throw CollisionError("hamiltonian: coincident blobs " + std::to_string(j) + ", " +
                             std::to_string(k));
      }
    }
  }
  HamiltonianReport rep;
  rep.kinetic = state.xi.squaredNorm() / (2.0 * params.m);
  const std::size_t n = blobs.size();
  if (n > 1) {
    rep.blob_interaction = -pairwise_sum<double>(n * n, [&](std::size_t idx) {
      const std::size_t j = idx / n, k = idx % n;
      if (j >= k) return 0.0;
      return log_kernel(blobs[j].position - blobs[k].position) * blobs[j].strength *
             blobs[k].strength;
    });
  }
  if (n > 0) {
    rep.blob_mass_coupling = -params.gamma * pairwise_sum<double>(n, [&](std::size_t j) {
      return log_kernel(blobs[j].position - state.h) * blobs[j].strength;
    });
  }
  rep.value = rep.kinetic + rep.blob_interaction + rep.blob_mass_coupling;
  return rep;
}

LimitState step(const LimitState& state, const LimitParams& params) {
  auto rhs = [&](double t, const Eigen::VectorXd& y) {
    const LimitState s = unpack(y, state, t);
    const LimitDerivative d = limit_rhs(s, params);
    Eigen::VectorXd dy(y.size());
    dy.segment<2>(0) = d.dh;
    dy.segment<2>(2) = d.dxi;
    for (std::size_t j = 0; j < d.dblob.size(); ++j) dy.segment<2>(4 + 2 * j) = d.dblob[j];
    return dy;
  };
  LimitState out =
      unpack(rk4_step(pack(state), state.t, params.dt, rhs), state, state.t + params.dt);
  guard_finite(out);
  return out;
}

LimitState time_reversed(LimitState state) {
  state.xi = -state.xi;
  for (auto& b : state.field.blobs) b.strength = -b.strength;
  return state;
}

namespace {

struct Derivatives {
  Vec2 f_h = Vec2::Zero();
  Vec2 f_xi = Vec2::Zero();
  std::vector<Vec2> grad_f_w;  // grad of the w-derivative at blob positions
};

Derivatives functional_derivatives(Functional f, const LimitState& s, const LimitParams& p) {
  Derivatives d;
  const std::size_t n = s.field.blobs.size();
  d.grad_f_w.assign(n, Vec2::Zero());
  switch (f) {
    case Functional::H1:
      d.f_h = Vec2(1.0, 0.0);
      break;
    case Functional::H2:
      d.f_h = Vec2(0.0, 1.0);
      break;
    case Functional::XiSquared:
      d.f_xi = 2.0 * s.xi;
      break;
    case Functional::VorticityMomentX:
      for (auto& g : d.grad_f_w) g = Vec2(1.0, 0.0);
      break;
    case Functional::Energy: {
      d.f_xi = s.xi / p.m;  // H_xi
      d.f_h = p.gamma * perp(u_tilde(s.field, s.h));
      for (std::size_t j = 0; j < n; ++j) {
        Vec2 g = Vec2::Zero();
        for (std::size_t k = 0; k < n; ++k) {
          if (k == j) continue;
          const Vec2 r = s.field.blobs[j].position - s.field.blobs[k].position;
          g -= s.field.blobs[k].strength * r / (kTwoPi * r.squaredNorm());
        }
        const Vec2 rm = s.field.blobs[j].position - s.h;
        g -= p.gamma * rm / (kTwoPi * rm.squaredNorm());
        d.grad_f_w[j] = g;
      }
      break;
    }
  }
  return d;
}

double evaluate_functional(Functional f, const LimitState& s, const LimitParams& p) {
  switch (f) {
    case Functional::H1:
      return s.h.x();
    case Functional::H2:
      return s.h.y();
    case Functional::XiSquared:
      return s.xi.squaredNorm();
    case Functional::VorticityMomentX: {
      double acc = 0.0;
      for (const auto& b : s.field.blobs) acc += b.strength * b.position.x();
      return acc;
    }
    case Functional::Energy:
      return hamiltonian(s, p).value;
  }
  return 0.0;
}

}  // namespace

BracketCheck poisson_bracket_check(const LimitState& state, const LimitParams& params,
                                   Functional f, double fd_step) {
  BracketCheck out;

  LimitParams fd = params;
  fd.dt = fd_step;
  const LimitState fwd = step(state, fd);
  fd.dt = -fd_step;
  const LimitState bwd = step(state, fd);
  out.lhs = (evaluate_functional(f, fwd, params) - evaluate_functional(f, bwd, params)) /
            (2.0 * fd_step);

  // {F, H} = gamma F_xi . (H_xi)^perp - (F_xi . H_h - F_h . H_xi)
  //          - sum_j g_j grad F_w(x_j) . grad^perp H_w(x_j)
  const Derivatives df = functional_derivatives(f, state, params);
  const Derivatives dH = functional_derivatives(Functional::Energy, state, params);
  double rhs = params.gamma * df.f_xi.dot(perp(dH.f_xi));
  rhs -= df.f_xi.dot(dH.f_h) - df.f_h.dot(dH.f_xi);
  for (std::size_t j = 0; j < state.field.blobs.size(); ++j) {
    rhs -= state.field.blobs[j].strength * df.grad_f_w[j].dot(perp(dH.grad_f_w[j]));
  }
  out.rhs = rhs;
  return out;
}

namespace {

Sample observe(const LimitState& s, const LimitParams& p) {
  Sample smp;
  smp.t = s.t;
  smp.h = s.h;
  smp.xi = s.xi;
  smp.hamiltonian = hamiltonian(s, p).value;
  smp.support_radius = s.field.support_radius();
  smp.center_of_vorticity = s.field.center_of_vorticity();
  const LimitDerivative d = limit_rhs(s, p);
  for (const auto& v : d.dblob) smp.max_blob_speed = std::max(smp.max_blob_speed, v.norm());
  smp.blob_positions.reserve(s.field.blobs.size());
  for (const auto& b : s.field.blobs) smp.blob_positions.push_back(b.position);
  return smp;
}

}  // namespace

Trajectory run(const LimitState& initial, const LimitParams& params, double T,
               int output_stride) {
  if (!(params.dt > 0.0) || T < 0.0) {
    throw std::invalid_argument("limit::run: need dt > 0 and T >= 0");
  }
  if (output_stride < 1) output_stride = 1;
  Trajectory traj;
  for (const auto& b : initial.field.blobs) traj.strengths.push_back(b.strength);

  const auto steps = static_cast<long>(std::llround(T / params.dt));
  LimitState s = initial;
  traj.samples.push_back(observe(s, params));
  for (long n = 1; n <= steps; ++n) {
    s = step(s, params);
    if (n % output_stride == 0 || n == steps) traj.samples.push_back(observe(s, params));
  }
  return traj;
}

}  // namespace vortexbody::limit
