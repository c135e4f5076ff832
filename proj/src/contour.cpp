#include "vortexbody/contour.hpp"

#include <cmath>

namespace vortexbody {

BoundaryCurve::BoundaryCurve(std::function<Complex(double)> point,
                             std::function<Complex(double)> velocity, int node_count)
    : point_(std::move(point)) {
  if (node_count < 4) throw std::invalid_argument("BoundaryCurve: need at least 4 nodes");
  points_.resize(node_count);
  dz_.resize(node_count);
  tau_.resize(node_count);
  nrm_.resize(node_count);
  ds_.resize(node_count);
  const double h = 1.0 / node_count;
  for (int n = 0; n < node_count; ++n) {
    const double t = h * n;
    points_[n] = point_(t);
    const Complex v = velocity(t);
    dz_[n] = v * h;
    const double speed = std::abs(v);
    tau_[n] = v / speed;
    // Positive orientation keeps the body on the left, so rotating the
    // tangent by +pi/2 points out of the fluid.
    nrm_[n] = Complex(0.0, 1.0) * tau_[n];
    ds_[n] = speed * h;
  }
}

BoundaryCurve BoundaryCurve::body_boundary(const BodyGeometry& geom, int node_count) {
  const ConformalMap map = geom.map;
  const double eps = geom.epsilon;
  auto point = [map, eps](double t) { return eps * map.inverse(std::polar(1.0, kTwoPi * t)); };
  auto velocity = [map, eps](double t) {
    const Complex w = std::polar(1.0, kTwoPi * t);
    return eps * map.inverse_derivative(w) * Complex(0.0, kTwoPi) * w;
  };
  return BoundaryCurve(std::move(point), std::move(velocity), node_count);
}

double BoundaryCurve::signed_area() const {
  // area = (1/2) Im oint conj(z) dz
  const int n = node_count();
  const Complex s =
      pairwise_sum<Complex>(n, [&](std::size_t i) { return std::conj(points_[i]) * dz_[i]; });
  return 0.5 * s.imag();
}

Complex contour_integral(const BoundaryCurve& curve, const std::function<Complex(Complex)>& f) {
  const int n = curve.node_count();
  const auto& z = curve.points();
  const auto& dz = curve.dz();
  std::vector<Complex> samples(n);
  for (int i = 0; i < n; ++i) {
    samples[i] = f(z[i]);
    if (!std::isfinite(samples[i].real()) || !std::isfinite(samples[i].imag())) {
      throw SingularityError("contour_integral: non-finite sample at node " + std::to_string(i));
    }
  }
  return pairwise_sum<Complex>(n, [&](std::size_t i) { return samples[i] * dz[i]; });
}

Vec2 flux_integral(const BoundaryCurve& curve, const std::vector<double>& g) {
  const int n = curve.node_count();
  const auto& nrm = curve.normals();
  const auto& ds = curve.ds();
  const Complex s =
      pairwise_sum<Complex>(n, [&](std::size_t i) { return g[i] * nrm[i] * ds[i]; });
  return to_vec(s);
}

double moment_integral(const BoundaryCurve& curve, const std::vector<double>& g) {
  const int n = curve.node_count();
  const auto& z = curve.points();
  const auto& nrm = curve.normals();
  const auto& ds = curve.ds();
  return pairwise_sum<double>(n, [&](std::size_t i) {
    const double k3 = perp(to_vec(z[i])).dot(to_vec(nrm[i]));
    return g[i] * k3 * ds[i];
  });
}

BlasiusForce blasius_force(const BoundaryCurve& curve, const VectorField& f,
                           const VectorField& g, double tangency_tol) {
  const int n = curve.node_count();
  const auto& z = curve.points();
  const auto& dz = curve.dz();
  const auto& nrm = curve.normals();

  std::vector<Vec2> fs(n), gs(n);
  double fmax = 0.0, gmax = 0.0;
  for (int i = 0; i < n; ++i) {
    fs[i] = f(to_vec(z[i]));
    gs[i] = g(to_vec(z[i]));
    fmax = std::max(fmax, fs[i].norm());
    gmax = std::max(gmax, gs[i].norm());
  }
  for (int i = 0; i < n; ++i) {
    const Vec2 nv = to_vec(nrm[i]);
    if (std::abs(fs[i].dot(nv)) > tangency_tol * std::max(1.0, fmax) ||
        std::abs(gs[i].dot(nv)) > tangency_tol * std::max(1.0, gmax)) {
      throw std::invalid_argument("blasius_force: field not tangent to the curve at node " +
                                  std::to_string(i));
    }
  }

  const Complex force_int = pairwise_sum<Complex>(n, [&](std::size_t i) {
    const Complex fc(fs[i].x(), -fs[i].y());
    const Complex gc(gs[i].x(), -gs[i].y());
    return fc * gc * dz[i];
  });
  const Complex torque_int = pairwise_sum<Complex>(n, [&](std::size_t i) {
    const Complex fc(fs[i].x(), -fs[i].y());
    const Complex gc(gs[i].x(), -gs[i].y());
    return z[i] * fc * gc * dz[i];
  });

  BlasiusForce out;
  out.force = to_vec(Complex(0.0, 1.0) * std::conj(force_int));
  out.torque = torque_int.real();
  return out;
}

Complex harmonic_conjugate_trace(const ConformalMap& map, Complex z) {
  // H1 - i H2 = -(i/2pi) T'(z) / T(z); holomorphic since div H = curl H = 0.
  return Complex(0.0, -1.0 / kTwoPi) * map.derivative(z) / map.forward(z);
}

namespace {

XiZeta xi_zeta_at(const ConformalMap& map, int node_count) {
  BodyGeometry geom{map, 1.0};
  const BoundaryCurve curve = BoundaryCurve::body_boundary(geom, node_count);
  const Complex xi_int = contour_integral(
      curve, [&](Complex z) { return std::conj(z) * harmonic_conjugate_trace(map, z); });
  const Complex zeta_int =
      contour_integral(curve, [&](Complex z) { return harmonic_conjugate_trace(map, z) * z; });
  XiZeta out;
  out.xi = to_vec(std::conj(xi_int));
  out.zeta = to_vec(zeta_int);
  return out;
}

}  // namespace

XiZeta xi_zeta(const ConformalMap& map, int node_count, double tol) {
  const XiZeta coarse = xi_zeta_at(map, node_count);
  const XiZeta fine = xi_zeta_at(map, 2 * node_count);
  if ((coarse.xi - fine.xi).norm() > tol || (coarse.zeta - fine.zeta).norm() > tol) {
    throw ConvergenceError("xi_zeta: node-doubling disagreement above tolerance");
  }
  return fine;
}

double vanishing_identity_residual(const ConformalMap& map, int node_count) {
  BodyGeometry geom{map, 1.0};
  const BoundaryCurve curve = BoundaryCurve::body_boundary(geom, node_count);
  const Complex val = contour_integral(curve, [&](Complex z) {
    return std::conj(z) * harmonic_conjugate_trace(map, z) * z;
  });
  return std::abs(val.imag());
}

namespace {

// h := H1 - i H2 is holomorphic, so directional derivatives of H = conj(h)
// reduce to h': x^perp . grad H1 = conj(i z h'(z)).
Complex harmonic_conjugate_derivative(const ConformalMap& map, Complex z) {
  if (map.has_second_derivative()) {
    const Complex t = map.forward(z);
    const Complex dt = map.derivative(z);
    const Complex ddt = map.second_derivative(z);
    return Complex(0.0, -1.0 / kTwoPi) * (ddt / t - dt * dt / (t * t));
  }
  const double step = 1e-5 * std::max(1.0, std::abs(z));
  return (harmonic_conjugate_trace(map, z + step) - harmonic_conjugate_trace(map, z - step)) /
         (2.0 * step);
}

}  // namespace

std::vector<FarFieldSample> laurent_far_field_checks(const ConformalMap& map,
                                                     std::vector<double> radii) {
  std::vector<FarFieldSample> out;
  for (double r : radii) {
    FarFieldSample s;
    s.radius = r;
    s.circ_defect = 0.0;
    s.gradient_defect = 0.0;
    for (int n = 0; n < 64; ++n) {
      const Complex z = std::polar(r, kTwoPi * n / 64);
      const Complex h = harmonic_conjugate_trace(map, z);
      const Complex hp = harmonic_conjugate_derivative(map, z);
      // x^perp . H1 = Re(i z h)
      s.circ_defect = std::max(s.circ_defect, std::abs((Complex(0, 1) * z * h).real() -
                                                       1.0 / kTwoPi));
      // (H1)^perp = i conj(h); x^perp . grad H1 = conj(i z h')
      const Complex defect = Complex(0, 1) * std::conj(h) - std::conj(Complex(0, 1) * z * hp);
      s.gradient_defect = std::max(s.gradient_defect, std::abs(defect));
    }
    s.circ_product = s.circ_defect * r;
    s.gradient_product = s.gradient_defect * r * r;
    out.push_back(s);
  }
  return out;
}

}  // namespace vortexbody
