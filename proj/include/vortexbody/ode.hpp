#pragma once

#include <Eigen/Dense>

namespace vortexbody {

/// One classical fixed-step Runge-Kutta 4 stage on a flat state vector.
template <class RHS>
Eigen::VectorXd rk4_step(const Eigen::VectorXd& y, double t, double dt, RHS&& f) {
  const Eigen::VectorXd k1 = f(t, y);
  const Eigen::VectorXd k2 = f(t + 0.5 * dt, Eigen::VectorXd(y + (0.5 * dt) * k1));
  const Eigen::VectorXd k3 = f(t + 0.5 * dt, Eigen::VectorXd(y + (0.5 * dt) * k2));
  const Eigen::VectorXd k4 = f(t + dt, Eigen::VectorXd(y + dt * k3));
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace vortexbody
