#pragma once

#include <string>
#include <vector>

#include "vortexbody/conformal.hpp"
#include "vortexbody/contour.hpp"

namespace vortexbody {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  std::string shape = "disk";
  double a = 0.5;           // joukowski parameter
  double tol_override = 0;  // 0 keeps the per-check defaults
  unsigned long seed = 2024;
};

/// The full identity suite for one shape: residue calculus, Blasius
/// real/complex agreement, xi/zeta, the vanishing boundary identity,
/// scaling laws, added mass, circulation, tangency, Neumann residuals,
/// Green-function symmetry and far-field decay.
std::vector<CheckResult> run_identity_suite(const VerifyOptions& options);

/// Smooth random fields tangent to the curve of the given geometry:
/// a random low-order Fourier scalar times the unit tangent.
VectorField random_tangent_field(const BodyGeometry& geom, unsigned long seed);

}  // namespace vortexbody
