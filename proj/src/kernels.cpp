#include "vortexbody/kernels.hpp"

#include <cmath>

namespace vortexbody {

double VorticityField::total_strength() const {
  if (blobs.empty()) return 0.0;
  return pairwise_sum<double>(blobs.size(), [&](std::size_t j) { return blobs[j].strength; });
}

double VorticityField::support_radius() const {
  double rho = 0.0;
  for (const auto& b : blobs) rho = std::max(rho, b.position.norm());
  return rho;
}

Vec2 VorticityField::center_of_vorticity() const {
  if (blobs.empty()) return Vec2::Zero();
  return pairwise_sum<Vec2>(
      blobs.size(), [&](std::size_t j) -> Vec2 { return blobs[j].strength * blobs[j].position; },
      Vec2::Zero());
}

namespace {

Vec2 blob_plane_term(const VortexBlob& b, const Vec2& x) {
  const Vec2 d = x - b.position;
  const double r2 = d.squaredNorm();
  if (b.core <= 0.0 && r2 < 1e-28) {
    throw SingularityError("biot_savart_plane: evaluation at a point-vortex position");
  }
  return b.strength * perp(d) / (kTwoPi * std::max(r2, b.core * b.core));
}

}  // namespace

Vec2 biot_savart_plane(const VorticityField& field, const Vec2& x) {
  if (field.blobs.empty()) return Vec2::Zero();
  return pairwise_sum<Vec2>(
      field.blobs.size(),
      [&](std::size_t j) { return blob_plane_term(field.blobs[j], x); }, Vec2::Zero());
}

Vec2 biot_savart_plane_excluding(const VorticityField& field, const Vec2& x, std::size_t skip) {
  if (field.blobs.empty()) return Vec2::Zero();
  return pairwise_sum<Vec2>(
      field.blobs.size(),
      [&](std::size_t j) -> Vec2 {
        if (j == skip) return Vec2::Zero();
        return blob_plane_term(field.blobs[j], x);
      },
      Vec2::Zero());
}

namespace {

Complex reflected(Complex v) { return v / std::norm(v); }

void require_mapped_pair(const BodyGeometry& geom, const Vec2& x, const Vec2& y,
                         const char* what) {
  geom.require_outside(x, what);
  geom.require_outside(y, what);
  if ((x - y).squaredNorm() < 1e-28) {
    throw SingularityError(std::string(what) + ": coincident arguments");
  }
}

}  // namespace

double green_dirichlet(const BodyGeometry& geom, const Vec2& x, const Vec2& y) {
  require_mapped_pair(geom, x, y, "green_dirichlet");
  const Complex u = geom.forward(to_complex(x));
  const Complex v = geom.forward(to_complex(y));
  return std::log(std::abs(u - v) / (std::abs(u - reflected(v)) * std::abs(v))) / kTwoPi;
}

double green_hydrodynamic(const BodyGeometry& geom, const Vec2& x, const Vec2& y) {
  require_mapped_pair(geom, x, y, "green_hydrodynamic");
  const Complex u = geom.forward(to_complex(x));
  const Complex v = geom.forward(to_complex(y));
  return std::log(std::abs(u - v) * std::abs(u) / std::abs(u - reflected(v))) / kTwoPi;
}

HarmonicField harmonic_field(const BodyGeometry& geom, const Vec2& x) {
  geom.require_outside(x, "harmonic_field");
  const Complex z = to_complex(x);
  const Complex t = geom.forward(z);
  const Complex dt = geom.derivative(z);
  HarmonicField out;
  // DT^T acts as multiplication by conj(T'), and w^perp/|w|^2 is i/conj(w).
  out.value = to_vec(std::conj(dt) * Complex(0.0, 1.0) / (kTwoPi * std::conj(t)));
  out.stream = std::log(std::abs(t)) / kTwoPi;
  return out;
}

namespace {

// grad_x^perp of the two x-dependent log terms of G(x, x_j), as one
// complex expression: (i/2pi) conj( T'(x) (1/(u-v) - 1/(u-v*)) ).
Vec2 blob_exterior_term(const BodyGeometry& geom, const VortexBlob& b, const Vec2& x,
                        bool include_direct) {
  const Complex z = to_complex(x);
  const Complex u = geom.forward(z);
  const Complex dt = geom.derivative(z);
  const Complex v = geom.forward(to_complex(b.position));
  const Complex vs = reflected(v);

  const Complex ik = Complex(0.0, 1.0) / kTwoPi;
  Complex sum(0.0, 0.0);
  if (include_direct) {
    const Vec2 d = x - b.position;
    const double r2 = d.squaredNorm();
    if (b.core > 0.0 && r2 < b.core * b.core) {
      // Krasny core: regularize the direct singular part in physical
      // coordinates, keep the smooth map-induced remainder exact.
      const Vec2 direct = b.strength * perp(d) / (kTwoPi * b.core * b.core);
      Complex remainder(0.0, 0.0);
      if (r2 >= 1e-28) {
        remainder = ik * std::conj(dt / (u - v)) - to_complex(plane_kernel(d));
      }
      return direct + b.strength * to_vec(remainder - ik * std::conj(dt / (u - vs)));
    }
    if (r2 < 1e-28) {
      throw SingularityError("biot_savart_exterior: evaluation at a blob position");
    }
    sum += 1.0 / (u - v);
  }
  sum -= 1.0 / (u - vs);
  return b.strength * to_vec(ik * std::conj(dt * sum));
}

}  // namespace

Vec2 biot_savart_exterior(const BodyGeometry& geom, const VorticityField& field, const Vec2& x) {
  geom.require_outside(x, "biot_savart_exterior");
  if (field.blobs.empty()) return Vec2::Zero();
  return pairwise_sum<Vec2>(
      field.blobs.size(),
      [&](std::size_t j) { return blob_exterior_term(geom, field.blobs[j], x, true); },
      Vec2::Zero());
}

Vec2 biot_savart_exterior_excluding(const BodyGeometry& geom, const VorticityField& field,
                                    const Vec2& x, std::size_t skip) {
  geom.require_outside(x, "biot_savart_exterior");
  if (field.blobs.empty()) return Vec2::Zero();
  return pairwise_sum<Vec2>(
      field.blobs.size(),
      [&](std::size_t j) {
        return blob_exterior_term(geom, field.blobs[j], x, j != skip);
      },
      Vec2::Zero());
}

}  // namespace vortexbody
