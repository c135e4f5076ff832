#pragma once

#include <functional>
#include <vector>

#include "vortexbody/types.hpp"

namespace vortexbody {

using ComplexFn = std::function<Complex(Complex)>;

/// Exterior biholomorphism T from the fluid domain onto {|w| > 1},
/// normalized so that T(z) = beta z + beta_tilde + O(1/z) with beta > 0.
///
/// All closures are pure and safe to share across threads.
struct ConformalMap {
  ComplexFn forward;            // T
  ComplexFn derivative;         // T'
  ComplexFn inverse;            // T^-1, defined on |w| >= 1
  ComplexFn second_derivative;  // T''; optional, used by far-field checks
  double beta = 1.0;
  Complex beta_tilde{0.0, 0.0};
  std::string name = "custom";

  bool has_second_derivative() const { return static_cast<bool>(second_derivative); }

  /// d/dw T^{-1}(w) = 1 / T'(T^{-1}(w)).
  Complex inverse_derivative(Complex w) const { return 1.0 / derivative(inverse(w)); }
};

/// Identity map: the body is the closed unit disk.
ConformalMap unit_disk_map();

/// Family of ellipse-like bodies whose map inverse is w -> w + a/w,
/// 0 <= a < 1. a = 0 degenerates to the unit disk; a -> 1 flattens the
/// body toward a slit, which is rejected.
ConformalMap joukowski_family_map(double a);

/// Body at scale epsilon: the scaled map acts by delegation,
/// T_eps(z) = T(z/eps), never by re-approximation.
struct BodyGeometry {
  ConformalMap map;
  double epsilon = 1.0;

  Complex forward(Complex z) const { return map.forward(z / epsilon); }
  Complex derivative(Complex z) const { return map.derivative(z / epsilon) / epsilon; }
  Complex inverse(Complex w) const { return epsilon * map.inverse(w); }

  /// |T_eps(x)|; < 1 means x lies inside the body.
  double mapped_radius(const Vec2& x) const { return std::abs(forward(to_complex(x))); }

  /// Throws InsideBodyError when x is not strictly in the fluid domain.
  void require_outside(const Vec2& x, const char* what) const;
};

/// Coefficients c_1..c_count of the decaying Laurent expansion
/// f(w) = sum_k c_k / w^k, computed by uniform trapezoid sampling on
/// |w| = radius. Spectrally accurate for f analytic on |w| >= radius'
/// with radius' < radius.
std::vector<Complex> laurent_coefficients(const ComplexFn& f, double radius, int count,
                                          int samples = 512);

/// Expansion of the map's harmonic-field trace H1 - i H2 =
/// -(i/2pi) T'(z)/T(z), sampled on the physical circle |z| = radius.
/// Its leading coefficient is 1/(2 pi i) for every normalized map.
std::vector<Complex> laurent_coefficients(const ConformalMap& map, double radius, int count,
                                          int samples = 512);

/// Two-radius convergence certificate: estimates at radius1 and radius2
/// must agree within tol, otherwise ConvergenceError.
std::vector<Complex> laurent_coefficients_checked(const ComplexFn& f, double radius1,
                                                  double radius2, int count, double tol = 1e-8,
                                                  int samples = 512);

/// Diagnostics for user-supplied maps: round-trip defect on sample rings
/// and the residual of the beta z + beta_tilde normalization at large |z|.
/// The normalization is checked, not enforced.
struct MapValidation {
  double max_round_trip = 0.0;    // sup |T^-1(T(z)) - z|
  double asymptotic_bound = 0.0;  // sup |T(z) - beta z - beta_tilde| * |z| at |z| = 100
};
MapValidation validate_map(const ConformalMap& map);

}  // namespace vortexbody
