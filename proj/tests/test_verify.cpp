#include <doctest.h>

#include <algorithm>

#include "lqnet/errors.hpp"
#include "lqnet/verify.hpp"

using namespace lqnet;

TEST_CASE("every suite passes at the default options") {
  VerifyOptions opt;
  const auto results = run_verify_suite("all", opt);
  CHECK(results.size() >= 10);
  for (const auto& r : results) {
    INFO(r.name << " achieved " << r.achieved << " tolerance " << r.tolerance);
    CHECK(r.passed);
    CHECK(r.achieved <= r.tolerance);
  }
}

TEST_CASE("suites named on the command line exist") {
  const auto names = verify_suite_names();
  for (const char* s : {"convolution", "kernel", "generating-function", "tree-depth", "rho", "variance", "all"})
    CHECK(std::find(names.begin(), names.end(), s) != names.end());
  VerifyOptions opt;
  opt.M = 3;
  opt.G = 2;
  for (const auto& r : run_verify_suite("tree-depth", opt)) CHECK(r.passed);
  CHECK_THROWS_AS(run_verify_suite("nope", opt), ValidationError);
}
