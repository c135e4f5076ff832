#pragma once

#include <array>
#include <vector>

#include "vortexbody/conformal.hpp"
#include "vortexbody/types.hpp"

namespace vortexbody {

/// Kirchhoff potentials Phi_i of the body: harmonic in the fluid, decaying
/// at infinity, with Neumann data (K_1, K_2, K_3) = (n_1, n_2, x^perp . n)
/// on the boundary.
///
/// Each Phi_i is represented as Re F_i(T(z)) with F_i(w) = sum_k a_k w^{-k}
/// holomorphic outside the unit circle. The conjugate trace -int K_i ds has
/// the closed forms (z_2, -z_1, -|z|^2/2) on the boundary, so the solve is
/// a Fourier projection of those on |w| = 1, truncated and doubled until
/// the Neumann residual meets the tolerance. For the disk one coefficient
/// is exact and the projection reproduces the closed forms
/// (Phi_1, Phi_2) = 2 pi (H^1)^perp, Phi_3 = 0.
class KirchhoffPotentials {
 public:
  explicit KirchhoffPotentials(const BodyGeometry& geom, double residual_tol = 1e-9,
                               int initial_terms = 16, int max_terms = 512);

  struct ValueGrad {
    double value;
    Vec2 gradient;
  };

  /// Phi_i and grad Phi_i at x (i in {1,2,3}); x must lie in the fluid.
  ValueGrad evaluate(int i, const Vec2& x) const;
  Vec2 gradient(int i, const Vec2& x) const;

  /// Achieved max |dPhi_i/dn - K_i| over offset boundary nodes.
  double boundary_residual() const { return residual_; }

  /// Laurent coefficients of F_i in the mapped plane.
  const std::vector<Complex>& coefficients(int i) const { return coeff_[i - 1]; }

  const BodyGeometry& geometry() const { return geom_; }

 private:
  BodyGeometry geom_;
  std::array<std::vector<Complex>, 3> coeff_;
  double residual_ = 0.0;
};

/// Convenience one-shot evaluation (solves on each call; prefer holding a
/// KirchhoffPotentials in loops).
KirchhoffPotentials::ValueGrad kirchhoff(const BodyGeometry& geom, int i, const Vec2& x);

/// Added-mass data: m2 holds the Kirchhoff energy inner products
/// int grad Phi_a . grad Phi_b over the fluid, m1 = diag(m, m, eps^2 J0).
/// m2 scales like eps^(2 + [a=3] + [b=3]) entrywise.
struct AddedMass {
  Mat3 m2 = Mat3::Zero();
  Mat3 m1 = Mat3::Zero();
  Mat3 total = Mat3::Zero();
};

/// m2 by polar quadrature in the mapped plane over 1 < |w| <= R plus the
/// analytic tail of the truncated Laurent series beyond R. A two-resolution
/// check certifies the quadrature; disagreement above certify_tol is
/// reported as non-convergence.
Mat3 added_mass_m2(const KirchhoffPotentials& phi, double truncation_radius = 50.0,
                   double certify_tol = 1e-6);

AddedMass added_mass(const BodyGeometry& geom, double m, double J0);

}  // namespace vortexbody
