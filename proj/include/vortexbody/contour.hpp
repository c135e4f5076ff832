#pragma once

#include <functional>
#include <vector>

#include "vortexbody/conformal.hpp"
#include "vortexbody/types.hpp"

namespace vortexbody {

/// Closed, positively oriented Jordan curve given by a smooth periodic
/// parameterization over [0, 1), discretized at node_count uniform
/// trapezoid nodes. Node data (points, dz/dt, tangents, inward normals,
/// arclength weights) is precomputed at construction.
class BoundaryCurve {
 public:
  BoundaryCurve(std::function<Complex(double)> point, std::function<Complex(double)> velocity,
                int node_count);

  /// Body boundary as the preimage of the unit circle under the scaled map.
  static BoundaryCurve body_boundary(const BodyGeometry& geom, int node_count = 512);

  int node_count() const { return static_cast<int>(points_.size()); }
  const std::vector<Complex>& points() const { return points_; }
  const std::vector<Complex>& dz() const { return dz_; }          // z'(t_n) / N
  const std::vector<Complex>& tangents() const { return tau_; }   // unit, along orientation
  const std::vector<Complex>& normals() const { return nrm_; }    // unit, out of the fluid
  const std::vector<double>& ds() const { return ds_; }           // |z'(t_n)| / N

  Complex point(double t) const { return point_(t); }
  double signed_area() const;

 private:
  std::function<Complex(double)> point_;
  std::vector<Complex> points_, dz_, tau_, nrm_;
  std::vector<double> ds_;
};

/// oint f(z) dz by the uniform trapezoid rule; spectrally accurate for
/// integrands smooth on the curve. Non-finite samples are reported.
Complex contour_integral(const BoundaryCurve& curve, const std::function<Complex(Complex)>& f);

/// oint g(x) n ds and oint g(x) (x^perp . n) ds for a scalar g sampled at
/// the curve nodes.
Vec2 flux_integral(const BoundaryCurve& curve, const std::vector<double>& g);
double moment_integral(const BoundaryCurve& curve, const std::vector<double>& g);

using VectorField = std::function<Vec2(const Vec2&)>;

struct BlasiusForce {
  Vec2 force;     // i ( oint (f1 - i f2)(g1 - i g2) dz )^*
  double torque;  // Re  oint z (f1 - i f2)(g1 - i g2) dz
};

/// Blasius' lemma for two tangent fields on the curve: the complex contour
/// forms above equal the real quadratures oint (f.g) n ds and
/// oint (f.g) (x^perp . n) ds. Tangency of f and g is verified at the
/// nodes (relative to the field magnitude) and violations are reported.
BlasiusForce blasius_force(const BoundaryCurve& curve, const VectorField& f,
                           const VectorField& g, double tangency_tol = 1e-8);

/// (H1_1 - i H1_2)(z) for the unit-scale body: the boundary trace of the
/// unit-circulation harmonic field, as a holomorphic function.
Complex harmonic_conjugate_trace(const ConformalMap& map, Complex z);

/// Residue coefficients xi = (oint conj(z) (H1-iH2) dz)^* and
/// zeta = oint (H1-iH2) z dz on the body boundary at unit scale,
/// returned as 2-vectors under the C ~ R^2 identification. Node-doubling
/// disagreement above tol is reported as non-convergence.
struct XiZeta {
  Vec2 xi;
  Vec2 zeta;
};
XiZeta xi_zeta(const ConformalMap& map, int node_count = 512, double tol = 1e-8);

/// | Im oint conj(z) (H1 - i H2) z dz |, which vanishes for every valid
/// exterior map because the integrand's bracket is real on the boundary.
double vanishing_identity_residual(const ConformalMap& map, int node_count = 512);

/// Far-field behaviour of the unit-circulation harmonic field:
/// x^perp . H1 - 1/(2 pi) decays like 1/|x| and (H1)^perp - x^perp . grad H1
/// like 1/|x|^2; the products with |x| and |x|^2 stay bounded.
struct FarFieldSample {
  double radius;
  double circ_defect;       // sup over the ring of |x^perp . H1 - 1/2pi|
  double circ_product;      // circ_defect * radius
  double gradient_defect;   // sup over the ring of |(H1)^perp - x^perp . grad H1|
  double gradient_product;  // gradient_defect * radius^2
};
std::vector<FarFieldSample> laurent_far_field_checks(const ConformalMap& map,
                                                     std::vector<double> radii = {10.0, 100.0,
                                                                                  1000.0});

}  // namespace vortexbody
