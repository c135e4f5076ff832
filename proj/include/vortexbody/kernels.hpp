#pragma once

#include <vector>

#include "vortexbody/conformal.hpp"
#include "vortexbody/types.hpp"

namespace vortexbody {

/// Atomic carrier of circulation. core = 0 is a pure point vortex;
/// core > 0 switches the plane kernel to Krasny-style regularization.
struct VortexBlob {
  Vec2 position = Vec2::Zero();
  double strength = 0.0;
  double core = 0.0;
};

struct VorticityField {
  std::vector<VortexBlob> blobs;

  double total_strength() const;
  /// Largest |position| over the blobs (0 for an empty field).
  double support_radius() const;
  /// sum_j gamma_j x_j, conserved by free-plane advection.
  Vec2 center_of_vorticity() const;
};

/// Plane Biot-Savart kernel H(x) = x^perp / (2 pi |x|^2).
inline Vec2 plane_kernel(const Vec2& x) { return perp(x) / (kTwoPi * x.squaredNorm()); }

/// Velocity induced at x by the blobs in the free plane:
///   sum_j gamma_j (x - x_j)^perp / (2 pi max(|x - x_j|^2, core_j^2)).
/// Evaluation within 1e-14 of a core-0 blob is a singularity error, not an
/// extrapolation.
Vec2 biot_savart_plane(const VorticityField& field, const Vec2& x);

/// Same sum with blob `skip` omitted (self-exclusion for transport).
Vec2 biot_savart_plane_excluding(const VorticityField& field, const Vec2& x, std::size_t skip);

/// Dirichlet Green's function of the exterior domain,
///   G(x,y) = (1/2pi) ln( |T(x)-T(y)| / (|T(x)-T(y)*| |T(y)|) ),
/// with the reflection y* = y/|y|^2 taken in the mapped plane.
double green_dirichlet(const BodyGeometry& geom, const Vec2& x, const Vec2& y);

/// Hydrodynamic variant G_H(x,y) = G(x,y) + Psi(x) + Psi(y)
///   = (1/2pi) ln( |T(x)-T(y)| |T(x)| / |T(x)-T(y)*| ).
double green_hydrodynamic(const BodyGeometry& geom, const Vec2& x, const Vec2& y);

/// The unique decaying harmonic field with unit circulation around the
/// body, H(x) = (1/2pi) DT^T(x) T(x)^perp / |T(x)|^2, together with its
/// stream function Psi(x) = (1/2pi) ln |T(x)|.
struct HarmonicField {
  Vec2 value;
  double stream;
};
HarmonicField harmonic_field(const BodyGeometry& geom, const Vec2& x);

/// Exterior Biot-Savart sum K[omega](x) = sum_j gamma_j grad_x^perp G(x, x_j),
/// with gradients taken analytically through the map. Tangent to the body;
/// circulation around the boundary equals -sum_j gamma_j. Blobs with
/// core > 0 are regularized in the direct term only; the image part stays
/// exact.
Vec2 biot_savart_exterior(const BodyGeometry& geom, const VorticityField& field, const Vec2& x);

/// Exterior sum with blob `skip`'s direct term removed but its image
/// retained, used for transport of the blobs themselves.
Vec2 biot_savart_exterior_excluding(const BodyGeometry& geom, const VorticityField& field,
                                    const Vec2& x, std::size_t skip);

class KirchhoffPotentials;  // potentials.hpp

/// Full velocity of the div/curl boundary-value problem,
///   v = K[omega] + (gamma + alpha) H + l1 grad Phi_1 + l2 grad Phi_2
///       + r grad Phi_3,
/// whose normal trace on the boundary is (ell + r x^perp) . n and whose
/// circulation around the body is gamma.
Vec2 velocity_total(const BodyGeometry& geom, const VorticityField& field, const Vec2& ell,
                    double r, double gamma, const Vec2& x);

/// Same, with the Kirchhoff potentials precomputed (hot paths).
Vec2 velocity_total(const BodyGeometry& geom, const KirchhoffPotentials& phi,
                    const VorticityField& field, const Vec2& ell, double r, double gamma,
                    const Vec2& x);

}  // namespace vortexbody
