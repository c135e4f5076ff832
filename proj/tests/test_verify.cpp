#include <doctest.h>

#include "vortexbody/verify.hpp"

using namespace vortexbody;

TEST_CASE("identity suite passes for both shipped shapes") {
  for (const std::string shape : {"disk", "joukowski"}) {
    VerifyOptions opt;
    opt.shape = shape;
    opt.a = 0.5;
    const auto results = run_identity_suite(opt);
    CHECK(results.size() > 10);
    for (const auto& r : results) {
      INFO(shape, ": ", r.name, " residual ", r.residual, " threshold ", r.threshold);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("tolerance override produces reported failures") {
  VerifyOptions opt;
  opt.tol_override = 1e-15;
  const auto results = run_identity_suite(opt);
  bool any_fail = false;
  for (const auto& r : results) any_fail = any_fail || !r.pass;
  CHECK(any_fail);
}
