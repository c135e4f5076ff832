#include "vortexbody/kernels.hpp"
#include "vortexbody/potentials.hpp"

namespace vortexbody {

Vec2 velocity_total(const BodyGeometry& geom, const KirchhoffPotentials& phi,
                    const VorticityField& field, const Vec2& ell, double r, double gamma,
                    const Vec2& x) {
  const double alpha = field.total_strength();
  Vec2 v = biot_savart_exterior(geom, field, x);
  v += (gamma + alpha) * harmonic_field(geom, x).value;
  if (ell.x() != 0.0) v += ell.x() * phi.gradient(1, x);
  if (ell.y() != 0.0) v += ell.y() * phi.gradient(2, x);
  if (r != 0.0) v += r * phi.gradient(3, x);
  return v;
}

Vec2 velocity_total(const BodyGeometry& geom, const VorticityField& field, const Vec2& ell,
                    double r, double gamma, const Vec2& x) {
  const KirchhoffPotentials phi(geom);
  return velocity_total(geom, phi, field, ell, r, gamma, x);
}

}  // namespace vortexbody
