#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lqnet/catalan.hpp"
#include "lqnet/errors.hpp"
#include "lqnet/oracle.hpp"
#include "lqnet/twosided.hpp"

using namespace lqnet;

TEST_CASE("symmetric coefficients") {
  TwoSidedParams tp;  // eps = 1, p = 1/2, p1 = q1 = 1
  const auto s = stationary_twosided_coeffs(tp, 40);
  CHECK(s[0] == doctest::Approx(2.0 * std::numbers::sqrt2 / std::numbers::pi).epsilon(1e-14));
  CHECK(std::abs(s[0] - 0.9003163161571061) <= 1e-8);
  const std::pair<int, double> ref[] = {
      {1, -0.30010543871903535652}, {2, -0.060021087743807071304}, {5, -0.0090941042036071320157}};
  for (auto [j, v] : ref) {
    CHECK(s[j] == doctest::Approx(v).epsilon(1e-13));
    CHECK(s[-j] == s[j]);
  }
  // The truncated sum is exactly the tail of an alternating-free series.
  for (int K : {40, 256}) {
    const auto t = stationary_twosided_coeffs(tp, K);
    CHECK(t.sum_residual() == doctest::Approx(2.0 * std::numbers::sqrt2 / (std::numbers::pi * (2 * K + 1))).epsilon(1e-9));
  }
}

// Contour integrals on |z| = sqrt(v/w), 30 digits.
TEST_CASE("asymmetric coefficients match contour references") {
  TwoSidedParams tp;
  tp.epsilon = 1.5;
  tp.p = 0.8;
  tp.p1 = 1.0;
  tp.q1 = 0.1;
  const auto s = stationary_twosided_coeffs(tp, 20);
  const double ref[] = {-1.0613761256713852033e-6, -0.000085044656404927213126, -0.013650138335220075096,
                        1.1023024122070607152,     -0.54600553340880300383,     -0.136071450247883541,
                        -0.067928072042968653011};
  for (int j = -3; j <= 3; ++j) CHECK(s[j] == doctest::Approx(ref[j + 3]).epsilon(1e-12));
}

TEST_CASE("coefficients agree with the contour oracle across parameters") {
  for (auto [p, p1, q1] : {std::tuple{0.5, 1.0, 1.0}, {0.3, 0.9, 0.6}, {0.7, 0.4, 1.0}}) {
    TwoSidedParams tp;
    tp.p = p;
    tp.p1 = p1;
    tp.q1 = q1;
    const auto s = stationary_twosided_coeffs(tp, 32);
    const auto c = cauchy_coeffs([&](std::complex<double> z) { return twosided_symbol(1.0, tp.B(), tp.w(), tp.v(), z); },
                                 32, default_contour_radius(tp.w(), tp.v()));
    for (int j = -32; j <= 32; ++j) CHECK(std::abs(c[j].real() - s[j]) <= 1e-10);
  }
}

TEST_CASE("no left links reduces to the one-sided coefficients") {
  TwoSidedParams tp;
  tp.p = 0.6;
  tp.p1 = 0.5;
  tp.q1 = 0.0;
  const auto s = stationary_twosided_coeffs(tp, 10);
  const auto one = stationary_chain_coeffs(0.3, 1.0, 10);
  for (int k = 0; k <= 10; ++k) CHECK(s[k] == doctest::Approx(one[k]).epsilon(1e-13));
  for (int k = 1; k <= 10; ++k) CHECK(s[-k] == 0.0);
}

TEST_CASE("symbol squares to eps B (1 - w z - v/z)") {
  const std::complex<double> z = std::polar(0.8, 1.1);
  const auto s = twosided_symbol(1.7, 0.9, 0.6, 0.4, z);
  const auto rhs = 1.7 * 0.9 * (1.0 - 0.6 * z - 0.4 / z);
  CHECK(std::abs(s * s - rhs) <= 1e-14);
  CHECK(s.real() >= 0.0);
}

TEST_CASE("hypergeometric function") {
  struct Ref {
    double a, b, c, z, value;
  };
  const Ref ref[] = {{0.25, 0.75, 2, 0.5, 1.0586518057536175233},  {-0.25, 0.25, 1, 1, 0.90031631615710606956},
                     {1.25, 1.75, 3, 0.97, 6.0895490833948201067}, {0.75, 1.25, 2, 0.999, 6.368067603278182301},
                     {1, 1, 2, -0.5, 0.81093021621632876396},      {0.5, 0.5, 1.5, 0.95, 1.3802311542699660083}};
  for (const auto& r : ref) CHECK(hyp2f1(r.a, r.b, r.c, r.z) == doctest::Approx(r.value).epsilon(1e-12));
  CHECK(hyp2f1(1, 1, 2, 0.5) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(hyp2f1(0.3, 0.4, 0.5, 0.0) == 1.0);
  CHECK_THROWS_AS(hyp2f1(1, 1, 1.5, 1.0), DomainError);
  CHECK_THROWS_AS(hyp2f1(1, 1, -2, 0.5), DomainError);
  CHECK_THROWS_AS(hyp2f1(1, 1, 2, 1.5), DomainError);
}

TEST_CASE("two-sided kernel weights") {
  // [z^d] exp(-t sqrt(1 - p z - (1-p)/z)) by contour integration, 30 digits.
  const std::pair<int, double> ref03[] = {{-5, 0.018098774597269581189},
                                          {-1, 0.16851621810830352087},
                                          {0, 0.42370641971674872792},
                                          {1, 0.072221236332130080374},
                                          {5, 0.0002616768148471772612}};
  for (auto [d, v] : ref03) CHECK(twosided_kernel_weight(d, 1.0, 0.3) == doctest::Approx(v).epsilon(1e-12));
  const std::pair<int, double> ref05[] = {
      {0, 0.24652302171926888723}, {1, 0.1411545867666819546}, {30, 0.00049920259914908632228}};
  for (auto [d, v] : ref05) {
    CHECK(std::abs(twosided_kernel_weight(d, 2.0, 0.5) - v) <= 1e-12);
    CHECK(twosided_kernel_weight(-d, 2.0, 0.5) == doctest::Approx(twosided_kernel_weight(d, 2.0, 0.5)).epsilon(1e-12));
  }
  CHECK(twosided_kernel_weight(4, Parity::Even, 1.0, 0.3) == twosided_kernel_weight(8, 1.0, 0.3));
  CHECK(twosided_kernel_weight(4, Parity::Odd, 1.0, 0.3) == twosided_kernel_weight(9, 1.0, 0.3));
  for (int d = 0; d < 10; ++d) {
    CHECK(twosided_kernel_weight(d, 1.5, 1.0) == doctest::Approx(kernel_entry(0, d, 1.5, 1.0)).epsilon(1e-13));
    CHECK(twosided_kernel_weight(-d, 1.5, 0.0) == doctest::Approx(kernel_entry(0, d, 1.5, 1.0)).epsilon(1e-13));
  }
  CHECK(twosided_kernel_weight(-1, 1.5, 1.0) == 0.0);
  CHECK(twosided_kernel_weight(0, 0.0, 0.4) == 1.0);
  CHECK_THROWS_AS(twosided_kernel_weight(0, 1.0, 1.2), ValidationError);
}

TEST_CASE("validation") {
  TwoSidedParams tp;
  CHECK_THROWS_AS(stationary_twosided_coeffs(tp, 1), ValidationError);
  tp.p = 0.0;
  CHECK_THROWS_AS(stationary_twosided_coeffs(tp, 4), ValidationError);
}
