#include <doctest.h>

#include "test_support.hpp"
#include "vortexbody/contour.hpp"
#include "vortexbody/kernels.hpp"
#include "vortexbody/potentials.hpp"

using namespace vortexbody;

TEST_CASE("plane Biot-Savart on single blobs") {
  VorticityField field;
  field.blobs.push_back({Vec2(0.0, 0.0), kTwoPi, 0.0});
  CHECK((biot_savart_plane(field, Vec2(1.0, 0.0)) - Vec2(0.0, 1.0)).norm() < 1e-15);

  field.blobs[0].strength = 1.0;
  CHECK((biot_savart_plane(field, Vec2(0.0, 2.0)) - Vec2(-1.0 / (4.0 * kPi), 0.0)).norm() <
        1e-15);

  CHECK(biot_savart_plane(VorticityField{}, Vec2(3.0, -2.0)) == Vec2::Zero());
  CHECK_THROWS_AS(biot_savart_plane(field, Vec2(0.0, 0.0)), SingularityError);
}

TEST_CASE("plane kernel symmetries") {
  auto gen = vbtest::rng(42);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int n = 0; n < 20; ++n) {
    const Vec2 x(unif(gen), unif(gen));
    if (x.norm() < 1e-3) continue;
    CHECK((plane_kernel(-x) + plane_kernel(x)).norm() < 1e-16);
  }
  // Symmetric pair: zero velocity at the midpoint.
  VorticityField pair;
  pair.blobs.push_back({Vec2(1.0, 0.5), 0.8, 0.0});
  pair.blobs.push_back({Vec2(-1.0, -0.5), 0.8, 0.0});
  CHECK(biot_savart_plane(pair, Vec2(0.0, 0.0)).norm() < 1e-16);
  // Linearity: two blobs give the sum of the individual terms.
  VorticityField one, two;
  one.blobs.push_back(pair.blobs[0]);
  two.blobs.push_back(pair.blobs[1]);
  const Vec2 x(0.3, -0.9);
  CHECK((biot_savart_plane(pair, x) - biot_savart_plane(one, x) - biot_savart_plane(two, x))
            .norm() < 1e-16);
}

TEST_CASE("Krasny core caps the near-field velocity") {
  VorticityField field;
  field.blobs.push_back({Vec2(0.0, 0.0), 1.0, 0.1});
  const double inside = biot_savart_plane(field, Vec2(0.05, 0.0)).norm();
  const double rim = biot_savart_plane(field, Vec2(0.1, 0.0)).norm();
  CHECK(inside <= rim + 1e-15);
  CHECK(biot_savart_plane(field, Vec2(0.0, 0.0)).norm() == 0.0);
}

TEST_CASE("Dirichlet Green function of the disk") {
  const BodyGeometry disk{unit_disk_map(), 1.0};
  // Boundary condition: G -> 0 as x approaches the boundary.
  CHECK(std::abs(green_dirichlet(disk, Vec2(1.0 + 1e-9, 0.0), Vec2(0.0, 3.0))) < 1e-8);
  // Method-of-images oracle.
  auto gen = vbtest::rng(3);
  for (int n = 0; n < 50; ++n) {
    const Vec2 x = vbtest::random_outside(disk, gen);
    const Vec2 y = vbtest::random_outside(disk, gen);
    if ((x - y).norm() < 1e-3) continue;
    CHECK(green_dirichlet(disk, x, y) ==
          doctest::Approx(vbtest::disk_green_oracle(x, y)).epsilon(1e-12));
    CHECK(std::abs(green_dirichlet(disk, x, y) - green_dirichlet(disk, y, x)) < 1e-12);
  }
  CHECK_THROWS_AS(green_dirichlet(disk, Vec2(0.5, 0.0), Vec2(2.0, 0.0)), InsideBodyError);
}

TEST_CASE("hydrodynamic Green function") {
  const BodyGeometry disk{unit_disk_map(), 1.0};
  // Hand value at x=(2,0), y=(-2,0): reflection y* = (-1/2, 0).
  CHECK(green_hydrodynamic(disk, Vec2(2.0, 0.0), Vec2(-2.0, 0.0)) ==
        doctest::Approx(std::log(3.2) / kTwoPi).epsilon(1e-14));

  const BodyGeometry geom{joukowski_family_map(0.4), 0.7};
  auto gen = vbtest::rng(9);
  for (int n = 0; n < 30; ++n) {
    const Vec2 x = 0.7 * vbtest::random_outside(BodyGeometry{geom.map, 1.0}, gen);
    const Vec2 y = 0.7 * vbtest::random_outside(BodyGeometry{geom.map, 1.0}, gen);
    if ((x - y).norm() < 1e-3) continue;
    const double lhs = green_hydrodynamic(geom, x, y);
    const double rhs = green_dirichlet(geom, x, y) + harmonic_field(geom, x).stream +
                       harmonic_field(geom, y).stream;
    CHECK(std::abs(lhs - rhs) < 1e-12);
    CHECK(std::abs(lhs - green_hydrodynamic(geom, y, x)) < 1e-12);
  }
}

TEST_CASE("harmonic field of the disk and its scaling") {
  const BodyGeometry disk{unit_disk_map(), 1.0};
  const HarmonicField h = harmonic_field(disk, Vec2(0.0, 2.0));
  CHECK((h.value - Vec2(-1.0 / (4.0 * kPi), 0.0)).norm() < 1e-15);

  // Stream function vanishes on the boundary.
  CHECK(std::abs(harmonic_field(disk, Vec2(std::cos(0.4), std::sin(0.4))).stream) < 1e-14);

  // H^eps(x) = eps^{-1} H^1(x/eps), for any shape.
  const ConformalMap map = joukowski_family_map(0.45);
  auto gen = vbtest::rng(21);
  for (double eps : {1.0, 0.5, 0.1}) {
    const BodyGeometry scaled{map, eps};
    for (int n = 0; n < 20; ++n) {
      const Vec2 y = vbtest::random_outside(BodyGeometry{map, 1.0}, gen);
      const Vec2 lhs = harmonic_field(scaled, Vec2(eps * y)).value;
      const Vec2 rhs = harmonic_field(BodyGeometry{map, 1.0}, y).value / eps;
      CHECK((lhs - rhs).norm() < 1e-12 * rhs.norm() + 1e-15);
    }
  }
  // Specific instance: H^{1/2}((1,0)) = 2 H^1((2,0)).
  const BodyGeometry half{map, 0.5};
  CHECK((harmonic_field(half, Vec2(1.0, 0.0)).value -
         2.0 * harmonic_field(BodyGeometry{map, 1.0}, Vec2(2.0, 0.0)).value)
            .norm() < 1e-14);
}

TEST_CASE("harmonic field has unit circulation") {
  for (double a : {0.0, 0.5}) {
    const ConformalMap map = a == 0.0 ? unit_disk_map() : joukowski_family_map(a);
    const BodyGeometry geom{map, 0.3};
    const BoundaryCurve curve = BoundaryCurve::body_boundary(geom, 512);
    double circ = 0.0;
    for (int i = 0; i < curve.node_count(); ++i) {
      const Vec2 x = to_vec(curve.points()[i]);
      circ += harmonic_field(geom, x).value.dot(to_vec(curve.tangents()[i])) * curve.ds()[i];
    }
    CHECK(circ == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("exterior Biot-Savart matches the disk image system") {
  auto gen = vbtest::rng(33);
  std::uniform_real_distribution<double> str(-2.0, 2.0);
  for (double eps : {1.0, 0.35}) {
    const BodyGeometry disk{unit_disk_map(), eps};
    for (int n = 0; n < 50; ++n) {
      VorticityField field;
      const int count = 1 + n % 3;
      for (int j = 0; j < count; ++j) {
        field.blobs.push_back(
            {Vec2(eps * vbtest::random_outside(BodyGeometry{unit_disk_map(), 1.0}, gen)),
             str(gen), 0.0});
      }
      const Vec2 x = eps * vbtest::random_outside(BodyGeometry{unit_disk_map(), 1.0}, gen);
      Vec2 oracle = Vec2::Zero();
      for (const auto& b : field.blobs) oracle += vbtest::disk_image_velocity(eps, b, x);
      CHECK((biot_savart_exterior(disk, field, x) - oracle).norm() < 1e-12);
    }
  }
}

TEST_CASE("exterior Biot-Savart circulation and decay") {
  const BodyGeometry geom{joukowski_family_map(0.5), 1.0};
  const BoundaryCurve curve = BoundaryCurve::body_boundary(geom, 512);
  auto gen = vbtest::rng(77);
  std::uniform_real_distribution<double> str(-1.0, 1.0);
  VorticityField field;
  for (int j = 0; j < 4; ++j) {
    field.blobs.push_back({vbtest::random_outside(geom, gen), str(gen), 0.0});
  }
  double circ = 0.0;
  for (int i = 0; i < curve.node_count(); ++i) {
    const Vec2 x = to_vec(curve.points()[i]);
    circ += biot_savart_exterior(geom, field, x).dot(to_vec(curve.tangents()[i])) *
            curve.ds()[i];
  }
  CHECK(std::abs(circ + field.total_strength()) < 1e-6);

  CHECK(biot_savart_exterior(geom, VorticityField{}, Vec2(2.0, 1.0)) == Vec2::Zero());

  // |K[omega]| |x|^2 stays bounded as |x| grows.
  double p10 = 0.0, p100 = 0.0;
  for (int n = 0; n < 32; ++n) {
    const Vec2 x10 = to_vec(std::polar(10.0, kTwoPi * n / 32));
    const Vec2 x100 = to_vec(std::polar(100.0, kTwoPi * n / 32));
    p10 = std::max(p10, biot_savart_exterior(geom, field, x10).norm() * 100.0);
    p100 = std::max(p100, biot_savart_exterior(geom, field, x100).norm() * 1e4);
  }
  CHECK(p10 < 10.0);
  CHECK(p100 < 10.0);
}

TEST_CASE("total velocity decomposition") {
  const BodyGeometry disk{unit_disk_map(), 0.5};

  SUBCASE("pure circulation reduces to the harmonic field") {
    const Vec2 x(0.8, -0.3);
    CHECK((velocity_total(disk, VorticityField{}, Vec2::Zero(), 0.0, 1.0, x) -
           harmonic_field(disk, x).value)
              .norm() < 1e-15);
  }

  SUBCASE("normal trace equals the rigid boundary data") {
    const BoundaryCurve curve = BoundaryCurve::body_boundary(disk, 256);
    const KirchhoffPotentials phi(disk);
    double worst = 0.0;
    for (int i = 0; i < curve.node_count(); ++i) {
      const Vec2 x = to_vec(curve.points()[i]);
      const Vec2 n = to_vec(curve.normals()[i]);
      const Vec2 v =
          velocity_total(disk, phi, VorticityField{}, Vec2(1.0, 0.0), 0.0, 0.0, x);
      worst = std::max(worst, std::abs(v.dot(n) - n.x()));
    }
    CHECK(worst < 1e-8);
  }

  SUBCASE("circulation equals gamma regardless of the other data") {
    const BodyGeometry geom{joukowski_family_map(0.3), 1.0};
    const KirchhoffPotentials phi(geom);
    const BoundaryCurve curve = BoundaryCurve::body_boundary(geom, 512);
    auto gen = vbtest::rng(5);
    VorticityField field;
    field.blobs.push_back({vbtest::random_outside(geom, gen), 0.7, 0.0});
    field.blobs.push_back({vbtest::random_outside(geom, gen), -0.4, 0.0});
    const double gamma = 1.3;
    double circ = 0.0;
    for (int i = 0; i < curve.node_count(); ++i) {
      const Vec2 x = to_vec(curve.points()[i]);
      const Vec2 v = velocity_total(geom, phi, field, Vec2(0.2, -0.5), 0.3, gamma, x);
      circ += v.dot(to_vec(curve.tangents()[i])) * curve.ds()[i];
    }
    CHECK(std::abs(circ - gamma) < 1e-6);
  }
}

TEST_CASE("hydrodynamic kernel matches image plus center-vortex system") {
  // K + alpha H: image of strength -g at the inverse point and a
  // compensating vortex +g at the center, zero circulation around the body.
  const double eps = 0.6;
  const BodyGeometry disk{unit_disk_map(), eps};
  auto gen = vbtest::rng(91);
  for (int n = 0; n < 30; ++n) {
    VorticityField field;
    field.blobs.push_back(
        {Vec2(eps * vbtest::random_outside(BodyGeometry{unit_disk_map(), 1.0}, gen)), 1.3, 0.0});
    const Vec2 x = eps * vbtest::random_outside(BodyGeometry{unit_disk_map(), 1.0}, gen);
    const VortexBlob& b = field.blobs[0];
    const Vec2 oracle = vbtest::disk_image_velocity(eps, b, x) + b.strength * plane_kernel(x);
    const Vec2 got = biot_savart_exterior(disk, field, x) +
                     field.total_strength() * harmonic_field(disk, x).value;
    CHECK((got - oracle).norm() < 1e-12);
  }
}

TEST_CASE("exterior kernel with a finite core") {
  // Inside the core the direct part switches to the Krasny form while the
  // image stays exact; for the disk the map-induced remainder vanishes.
  const double eps = 0.5, delta = 0.2;
  const BodyGeometry disk{unit_disk_map(), eps};
  VorticityField field;
  field.blobs.push_back({Vec2(1.5, 0.0), 1.1, delta});
  const Vec2 image = eps * eps * field.blobs[0].position / field.blobs[0].position.squaredNorm();

  SUBCASE("within the core radius") {
    const Vec2 x(1.5 + 0.05, 0.02);
    const Vec2 d = x - field.blobs[0].position;
    const Vec2 oracle =
        field.blobs[0].strength *
        (perp(d) / (kTwoPi * delta * delta) - plane_kernel(x - image));
    CHECK((biot_savart_exterior(disk, field, x) - oracle).norm() < 1e-13);
  }

  SUBCASE("outside the core the kernel is untouched") {
    const Vec2 x(2.1, -0.4);
    const Vec2 oracle = vbtest::disk_image_velocity(eps, field.blobs[0], x);
    CHECK((biot_savart_exterior(disk, field, x) - oracle).norm() < 1e-13);
  }

  SUBCASE("evaluation at the blob center is finite") {
    const Vec2 got = biot_savart_exterior(disk, field, field.blobs[0].position);
    const Vec2 oracle = -field.blobs[0].strength *
                        plane_kernel(Vec2(field.blobs[0].position - image));
    CHECK((got - oracle).norm() < 1e-13);
  }

  SUBCASE("point blobs still report the singularity") {
    field.blobs[0].core = 0.0;
    CHECK_THROWS_AS(biot_savart_exterior(disk, field, field.blobs[0].position),
                    SingularityError);
  }
}
