#include "vortexbody/verify.hpp"

#include <cmath>
#include <random>

#include "vortexbody/finite_eps.hpp"
#include "vortexbody/kernels.hpp"
#include "vortexbody/potentials.hpp"

namespace vortexbody {

namespace {

Vec2 random_point_outside(const BodyGeometry& geom, std::mt19937_64& rng, double rmin = 1.3,
                          double rmax = 4.0) {
  std::uniform_real_distribution<double> rad(rmin, rmax);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  const Complex w = std::polar(rad(rng), ang(rng));
  return to_vec(geom.inverse(w));
}

VorticityField random_field(const BodyGeometry& geom, std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> str(-1.5, 1.5);
  VorticityField field;
  for (int j = 0; j < count; ++j) {
    VortexBlob b;
    b.position = random_point_outside(geom, rng);
    b.strength = str(rng);
    field.blobs.push_back(b);
  }
  return field;
}

}  // namespace

VectorField random_tangent_field(const BodyGeometry& geom, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<double> ac(5), bc(5);
  for (int k = 0; k < 5; ++k) {
    ac[k] = coef(rng);
    bc[k] = coef(rng);
  }
  return [geom, ac, bc](const Vec2& x) -> Vec2 {
    const Complex w = geom.forward(to_complex(x));
    const double theta = std::arg(w);
    double s = 0.0;
    for (int k = 0; k < 5; ++k) {
      s += ac[k] * std::cos(k * theta) + bc[k] * std::sin(k * theta);
    }
    const Complex dz = geom.epsilon * geom.map.inverse_derivative(w) * Complex(0.0, 1.0) * w;
    return s * to_vec(dz / std::abs(dz));
  };
}

std::vector<CheckResult> run_identity_suite(const VerifyOptions& options) {
  std::vector<CheckResult> results;
  const ConformalMap map =
      options.shape == "disk" ? unit_disk_map() : joukowski_family_map(options.a);
  const BodyGeometry geom{map, 1.0};
  std::mt19937_64 rng(options.seed);

  auto add = [&](const std::string& name, double residual, double default_tol) {
    CheckResult r;
    r.name = name;
    r.residual = residual;
    r.threshold = options.tol_override > 0 ? options.tol_override : default_tol;
    r.pass = residual < r.threshold;
    results.push_back(r);
  };

  const BoundaryCurve curve = BoundaryCurve::body_boundary(geom, 512);

  {  // Residue calculus on the shipped curve.
    double worst = 0.0;
    for (int k = -2; k <= 2; ++k) {
      const Complex got =
          contour_integral(curve, [k](Complex z) { return std::pow(z, k); });
      const Complex expected = (k == -1) ? Complex(0.0, kTwoPi) : Complex(0.0, 0.0);
      worst = std::max(worst, std::abs(got - expected));
    }
    add("residue z^k", worst, 1e-10);
  }

  {  // Blasius complex forms against the real quadratures, random fields.
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const VectorField f = random_tangent_field(geom, options.seed + 17 * trial + 1);
      const VectorField g = random_tangent_field(geom, options.seed + 17 * trial + 9);
      const BlasiusForce bf = blasius_force(curve, f, g);
      std::vector<double> fg(curve.node_count());
      for (int i = 0; i < curve.node_count(); ++i) {
        const Vec2 x = to_vec(curve.points()[i]);
        fg[i] = f(x).dot(g(x));
      }
      const Vec2 real_force = flux_integral(curve, fg);
      const double real_torque = moment_integral(curve, fg);
      const double scale =
          std::max({1e-30, real_force.norm(), std::abs(real_torque)});
      worst = std::max(worst, (bf.force - real_force).norm() / scale);
      worst = std::max(worst, std::abs(bf.torque - real_torque) / scale);
    }
    add("blasius complex vs real", worst, 1e-9);
  }

  {  // Bilinearity is exact (scaling by 2 commutes bit-for-bit).
    const VectorField f = random_tangent_field(geom, options.seed + 3);
    const VectorField g = random_tangent_field(geom, options.seed + 4);
    const VectorField f2 = [f](const Vec2& x) { return Vec2(2.0 * f(x)); };
    const BlasiusForce one = blasius_force(curve, f, g);
    const BlasiusForce two = blasius_force(curve, f2, g);
    add("blasius bilinearity",
        (two.force - 2.0 * one.force).norm() + std::abs(two.torque - 2.0 * one.torque), 1e-14);
  }

  {  // xi/zeta node-doubling certificate (throws on disagreement).
    const XiZeta xz = xi_zeta(map, 512, 1e-8);
    if (options.shape == "disk") {
      add("xi, zeta vanish on the disk", xz.xi.norm() + xz.zeta.norm(), 1e-10);
    } else {
      const XiZeta again = xi_zeta(map, 1024, 1e-8);
      add("xi, zeta node-count stability",
          (xz.xi - again.xi).norm() + (xz.zeta - again.zeta).norm(), 1e-8);
    }
  }

  add("boundary vanishing identity", vanishing_identity_residual(map), 1e-10);

  {  // Scaling law of the harmonic field, exact by delegation.
    double worst = 0.0;
    for (double eps : {1.0, 0.5, 0.1}) {
      const BodyGeometry scaled{map, eps};
      for (int n = 0; n < 20; ++n) {
        const Vec2 x = eps * random_point_outside(geom, rng);
        const Vec2 lhs = harmonic_field(scaled, x).value;
        const Vec2 rhs = harmonic_field(geom, Vec2(x / eps)).value / eps;
        worst = std::max(worst, (lhs - rhs).norm());
      }
    }
    add("harmonic field scaling", worst, 1e-12);
  }

  {  // Kirchhoff potential scalings.
    const KirchhoffPotentials base(geom);
    double worst = 0.0;
    for (double eps : {0.5, 0.1}) {
      const BodyGeometry scaled{map, eps};
      const KirchhoffPotentials phi(scaled);
      for (int n = 0; n < 10; ++n) {
        const Vec2 y = random_point_outside(geom, rng);
        const Vec2 x = eps * y;
        worst = std::max(worst,
                         std::abs(phi.evaluate(1, x).value - eps * base.evaluate(1, y).value));
        worst = std::max(worst, std::abs(phi.evaluate(3, x).value -
                                         eps * eps * base.evaluate(3, y).value));
      }
    }
    add("kirchhoff potential scaling", worst, 1e-12);

    add("kirchhoff neumann residual", base.boundary_residual(), 1e-8);

    {  // Solvability: the Neumann data integrates to zero.
      double worst_k = 0.0;
      std::vector<double> ones(curve.node_count(), 1.0);
      const Vec2 k12 = flux_integral(curve, ones);
      worst_k = std::max(k12.norm(), std::abs(moment_integral(curve, ones)));
      add("boundary data solvability", worst_k, 1e-10);
    }
  }

  {  // Added mass: symmetry, positivity, scaling exponents.
    const AddedMass am = added_mass(geom, 1.0, 1.0);
    add("added mass symmetry", (am.m2 - am.m2.transpose()).cwiseAbs().maxCoeff(), 1e-15);
    double pd = 0.0;
    for (double eps : {1.0, 0.1, 0.01}) {
      const AddedMass a = added_mass(BodyGeometry{map, eps}, 1.0, 1.0);
      const Eigen::LLT<Mat3> llt(a.total);
      if (llt.info() != Eigen::Success) pd = 1.0;
    }
    add("added mass positive definite", pd, 0.5);
    if (options.shape == "disk") {
      Mat3 expected = Mat3::Zero();
      expected(0, 0) = expected(1, 1) = kPi;
      add("disk added mass diag(pi, pi, 0)", (am.m2 - expected).cwiseAbs().maxCoeff(), 1e-6);
    }
    double scale_err = 0.0;
    for (double eps : {0.5, 0.1}) {
      const Mat3 m2e = added_mass(BodyGeometry{map, eps}, 1.0, 1.0).m2;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          const double expo = 2.0 + (a == 2 ? 1.0 : 0.0) + (b == 2 ? 1.0 : 0.0);
          const double predicted = std::pow(eps, expo) * am.m2(a, b);
          const double denom = std::max(1e-9, std::abs(predicted));
          scale_err = std::max(scale_err, std::abs(m2e(a, b) - predicted) / denom);
        }
      }
    }
    add("added mass epsilon scaling", scale_err, 1e-6);
  }

  {  // Circulation of the exterior Biot-Savart field, 20 random blob sets.
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const VorticityField field = random_field(geom, rng, 1 + trial % 4);
      std::vector<double> tang(curve.node_count());
      for (int i = 0; i < curve.node_count(); ++i) {
        const Vec2 x = to_vec(curve.points()[i]);
        tang[i] = biot_savart_exterior(geom, field, x).dot(to_vec(curve.tangents()[i]));
      }
      const double circ = pairwise_sum<double>(
          tang.size(), [&](std::size_t i) { return tang[i] * curve.ds()[i]; });
      worst = std::max(worst, std::abs(circ + field.total_strength()));
    }
    add("exterior circulation = -sum strengths", worst, 1e-6);
  }

  {  // Tangency of the exterior field on the boundary.
    double worst = 0.0;
    const VorticityField field = random_field(geom, rng, 3);
    for (int i = 0; i < curve.node_count(); i += 4) {
      const Vec2 x = to_vec(curve.points()[i]);
      worst = std::max(worst, std::abs(biot_savart_exterior(geom, field, x)
                                           .dot(to_vec(curve.normals()[i]))));
    }
    add("exterior field tangency", worst, 1e-8);
  }

  {  // Green's function symmetry, both kinds.
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const Vec2 x = random_point_outside(geom, rng);
      const Vec2 y = random_point_outside(geom, rng);
      if ((x - y).norm() < 1e-6) continue;
      worst = std::max(worst, std::abs(green_dirichlet(geom, x, y) - green_dirichlet(geom, y, x)));
      worst = std::max(worst,
                       std::abs(green_hydrodynamic(geom, x, y) - green_hydrodynamic(geom, y, x)));
    }
    add("green function symmetry", worst, 1e-12);
  }

  {  // Far-field decay of the harmonic field.
    const auto report = laurent_far_field_checks(map);
    double grow = 0.0;
    for (std::size_t i = 1; i < report.size(); ++i) {
      grow = std::max(grow, report[i].circ_defect - report[i - 1].circ_defect);
      grow = std::max(grow, report[i].gradient_defect - report[i - 1].gradient_defect);
    }
    add("harmonic far-field decay", grow, 1e-12);
  }

  {  // C_c vanishes for random states.
    eps::EpsParams params;
    params.boundary_nodes = 512;
    const eps::Workspace ws(geom, params.boundary_nodes);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      eps::EpsState s;
      s.ell = Vec2(unif(rng), unif(rng));
      s.r = unif(rng);
      s.field = random_field(geom, rng, 2);
      params.gamma = 1.0 + unif(rng);
      const eps::ForceBreakdown fb = force_terms(ws, s, params);
      worst = std::max(worst, fb.C_c.cwiseAbs().maxCoeff());
    }
    add("C_c contour term vanishes", worst, 1e-10);
  }

  {  // Normal trace of the full velocity against the rigid data.
    eps::EpsParams params;
    params.gamma = 0.7;
    const eps::Workspace ws(geom, 256);
    eps::EpsState s;
    s.ell = Vec2(0.4, -0.3);
    s.r = 0.25;
    s.field = random_field(geom, rng, 2);
    const BoundaryCurve check = BoundaryCurve::body_boundary(geom, 256);
    double worst = 0.0;
    for (int i = 0; i < check.node_count(); ++i) {
      const Vec2 x = to_vec(check.points()[i]);
      const Vec2 n = to_vec(check.normals()[i]);
      const Vec2 v = tilde_velocity(ws, s, x) +
                     params.gamma * harmonic_field(geom, x).value;
      worst = std::max(worst, std::abs((v - s.ell - s.r * perp(x)).dot(n)));
    }
    add("velocity normal trace", worst, 1e-8);
  }

  return results;
}

}  // namespace vortexbody
