#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lqnet {

struct CheckResult {
  std::string name;
  bool passed = false;
  double achieved = 0.0;
  double tolerance = 0.0;
};

struct VerifyOptions {
  int K = 200;       // convolution length
  int M = 2;         // tree branching
  int G = 3;         // tree generations
  double t = 1.0;    // kernel time
  int dim = 60;      // dense oracle dimension
  double p = 1.0;    // link probability
};

// Suites: convolution, kernel, generating-function, tree-depth, rho, variance, all.
std::vector<CheckResult> run_verify_suite(std::string_view suite, const VerifyOptions& options);
std::vector<std::string_view> verify_suite_names();

}  // namespace lqnet
