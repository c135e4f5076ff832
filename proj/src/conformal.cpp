#include "vortexbody/conformal.hpp"

#include <cmath>

namespace vortexbody {

void BodyGeometry::require_outside(const Vec2& x, const char* what) const {
  if (mapped_radius(x) < 1.0 - 1e-12) {
    throw InsideBodyError(std::string(what) + ": point (" + std::to_string(x.x()) + ", " +
                          std::to_string(x.y()) + ") lies inside the body");
  }
}

ConformalMap unit_disk_map() {
  ConformalMap m;
  m.forward = [](Complex z) { return z; };
  m.derivative = [](Complex) { return Complex(1.0, 0.0); };
  m.inverse = [](Complex w) { return w; };
  m.second_derivative = [](Complex) { return Complex(0.0, 0.0); };
  m.beta = 1.0;
  m.beta_tilde = Complex(0.0, 0.0);
  m.name = "disk";
  return m;
}

ConformalMap joukowski_family_map(double a) {
  if (!(a >= 0.0 && a < 1.0)) {
    throw std::invalid_argument("joukowski_family_map: parameter must satisfy 0 <= a < 1");
  }
  ConformalMap m;
  // Roots of w^2 - z w + a = 0 have product a < 1, so at most one lies on
  // or outside the unit circle; picking the larger modulus selects the
  // exterior branch without tracking the square-root cut.
  m.forward = [a](Complex z) {
    const Complex s = std::sqrt(z * z - 4.0 * a);
    const Complex w1 = 0.5 * (z + s);
    const Complex w2 = 0.5 * (z - s);
    return std::abs(w1) >= std::abs(w2) ? w1 : w2;
  };
  m.derivative = [fwd = m.forward, a](Complex z) {
    const Complex w = fwd(z);
    return 1.0 / (1.0 - a / (w * w));
  };
  m.second_derivative = [fwd = m.forward, a](Complex z) {
    // T'' = d/dz [ (1 - a/w^2)^{-1} ] with w = T(z).
    const Complex w = fwd(z);
    const Complex g = 1.0 - a / (w * w);
    return -2.0 * a / (w * w * w * g * g * g);
  };
  m.inverse = [a](Complex w) { return w + a / w; };
  m.beta = 1.0;
  m.beta_tilde = Complex(0.0, 0.0);
  m.name = "joukowski";
  return m;
}

std::vector<Complex> laurent_coefficients(const ComplexFn& f, double radius, int count,
                                          int samples) {
  if (radius <= 1.0) throw std::invalid_argument("laurent_coefficients: radius must exceed 1");
  if (count < 1) throw std::invalid_argument("laurent_coefficients: count must be >= 1");
  std::vector<Complex> fw(samples);
  std::vector<Complex> nodes(samples);
  for (int n = 0; n < samples; ++n) {
    const double theta = kTwoPi * n / samples;
    nodes[n] = std::polar(radius, theta);
    fw[n] = f(nodes[n]);
    if (!std::isfinite(fw[n].real()) || !std::isfinite(fw[n].imag())) {
      throw SingularityError("laurent_coefficients: non-finite sample on circle");
    }
  }
  // c_k = (1/2pi i) oint f(w) w^{k-1} dw, trapezoid on the circle.
  std::vector<Complex> c(count);
  for (int k = 1; k <= count; ++k) {
    c[k - 1] = pairwise_sum<Complex>(
                   samples, [&](std::size_t n) { return fw[n] * std::pow(nodes[n], k); }) /
               static_cast<double>(samples);
  }
  return c;
}

std::vector<Complex> laurent_coefficients(const ConformalMap& map, double radius, int count,
                                          int samples) {
  return laurent_coefficients(
      [&map](Complex z) {
        return Complex(0.0, -1.0 / kTwoPi) * map.derivative(z) / map.forward(z);
      },
      radius, count, samples);
}

std::vector<Complex> laurent_coefficients_checked(const ComplexFn& f, double radius1,
                                                  double radius2, int count, double tol,
                                                  int samples) {
  auto c1 = laurent_coefficients(f, radius1, count, samples);
  auto c2 = laurent_coefficients(f, radius2, count, samples);
  for (int k = 0; k < count; ++k) {
    if (std::abs(c1[k] - c2[k]) > tol) {
      throw ConvergenceError("laurent_coefficients: estimates at radii " +
                             std::to_string(radius1) + " and " + std::to_string(radius2) +
                             " disagree for c_" + std::to_string(k + 1));
    }
  }
  return c1;
}

MapValidation validate_map(const ConformalMap& map) {
  MapValidation v;
  for (int ring = 0; ring < 4; ++ring) {
    const double r = 1.5 + 2.0 * ring;
    for (int n = 0; n < 50; ++n) {
      const Complex z = map.inverse(std::polar(r, kTwoPi * n / 50));
      v.max_round_trip = std::max(v.max_round_trip, std::abs(map.inverse(map.forward(z)) - z));
    }
  }
  for (int n = 0; n < 50; ++n) {
    const Complex z = std::polar(100.0, kTwoPi * n / 50);
    const double defect = std::abs(map.forward(z) - map.beta * z - map.beta_tilde);
    v.asymptotic_bound = std::max(v.asymptotic_bound, defect * std::abs(z));
  }
  return v;
}

}  // namespace vortexbody
