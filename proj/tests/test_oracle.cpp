#include <doctest.h>

#include <cmath>
#include <complex>

#include "lqnet/errors.hpp"
#include "lqnet/oracle.hpp"
#include "lqnet/riccati.hpp"

using namespace lqnet;

TEST_CASE("dense exponential of known matrices") {
  DenseMatrix rot(2);
  rot(0, 1) = 1.0;
  rot(1, 0) = -1.0;
  const auto E = dense_expm(rot, 2.0);
  CHECK(E(0, 0) == doctest::Approx(std::cos(2.0)).epsilon(1e-14));
  CHECK(E(0, 1) == doctest::Approx(std::sin(2.0)).epsilon(1e-14));
  CHECK(E(1, 0) == doctest::Approx(-std::sin(2.0)).epsilon(1e-14));

  DenseMatrix nil(3);  // strictly upper shift: exp = I + tN + t^2 N^2 / 2
  nil(0, 1) = nil(1, 2) = 1.0;
  const auto F = dense_expm(nil, 3.0);
  CHECK(F(0, 0) == 1.0);
  CHECK(F(0, 1) == doctest::Approx(3.0));
  CHECK(F(0, 2) == doctest::Approx(4.5));
  CHECK(F(2, 0) == 0.0);

  const auto I = dense_expm(DenseMatrix(5), 1.0);
  CHECK(max_abs_diff(I, DenseMatrix::identity(5)) == 0.0);

  DenseMatrix big(4);
  for (int i = 0; i < 4; ++i) big(i, i) = -50.0;
  CHECK(dense_expm(big, 1.0)(2, 2) == doctest::Approx(std::exp(-50.0)).epsilon(1e-12));
  CHECK_THROWS_AS(dense_expm(DenseMatrix(1025), 1.0), ResourceError);
}

TEST_CASE("toeplitz construction and products") {
  const double c[] = {1.0, 2.0, 3.0};  // offsets -1, 0, 1
  const auto T = DenseMatrix::toeplitz(4, c, -1);
  CHECK(T(0, 0) == 2.0);
  CHECK(T(1, 0) == 1.0);
  CHECK(T(0, 1) == 3.0);
  CHECK(T(0, 2) == 0.0);
  const auto P = multiply(T, DenseMatrix::identity(4));
  CHECK(max_abs_diff(P, T) == 0.0);
  CHECK_THROWS_AS(multiply(T, DenseMatrix(3)), ValidationError);
}

TEST_CASE("contour extraction") {
  const auto e = cauchy_coeffs([](std::complex<double> z) { return std::exp(z); }, 10, 1.0);
  double fact = 1.0;
  for (int k = 0; k <= 10; ++k) {
    if (k > 0) fact *= k;
    CHECK(std::abs(e[k] - 1.0 / fact) <= 1e-14);
    if (k > 0) CHECK(std::abs(e[-k]) <= 1e-14);
  }
  // Laurent series of 1/(z - 1/2) on |z| = 1: only negative powers, c_{-k} = 2^{-(k-1)}.
  const auto l = cauchy_coeffs([](std::complex<double> z) { return 1.0 / (z - 0.5); }, 6, 1.0);
  for (int k = 1; k <= 6; ++k) CHECK(std::abs(l[-k] - std::ldexp(1.0, -(k - 1))) <= 1e-12);
  CHECK(std::abs(l[0]) <= 1e-12);
  CHECK(l.achieved <= 1e-12);
  CHECK_THROWS_AS(cauchy_coeffs([](std::complex<double> z) { return z; }, 2, 0.0), ValidationError);
}

TEST_CASE("default contour radius") {
  CHECK(default_contour_radius(1.0, 0.0) == 0.5);
  CHECK(default_contour_radius(0.0, 1.0) == 2.0);
  CHECK(default_contour_radius(0.5, 0.5) == 1.0);
  CHECK(default_contour_radius(0.8, 0.2) == doctest::Approx(0.5));
}

TEST_CASE("finite differences") {
  const auto d = finite_difference([](double x) { return std::sin(x); }, 1.0);
  CHECK(d.value == doctest::Approx(std::cos(1.0)).epsilon(1e-11));
  CHECK(d.error <= 1e-9);
}

TEST_CASE("unreduced tree layout") {
  TreeParams tp{3, 0.5, 1.0, 1.0, 1.0, 1.0};
  const auto b = brute_force_tree(tp, 3, 10);
  // 13 nodes; each contributes one pair per descendant generation.
  CHECK(b.pairs.size() == 13 + 12 + 9);
  CHECK(b.grid.size() == 11);
  for (std::size_t i = 0; i < b.pairs.size(); ++i) {
    const auto& pr = b.pairs[i];
    if (pr.depth() == 0) CHECK(b(i, 10) == doctest::Approx(1.0 - 0.125));
  }
  TreeParams wide{10, 0.5, 1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(brute_force_tree(wide, 5, 10), ResourceError);
}

TEST_CASE("deterministic tree system with M = 1 is the deterministic chain") {
  const auto ref = deterministic_tree_system(1, 1.0, 1.0, 2.0, 5, 20);
  const auto sol = solve_chain_riccati(ChainParams{1.0, 1.0, 1.0, 1.0, 2.0}, 5, 20);
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 20; ++n) CHECK(std::abs(ref[m * 21 + n] - sol(m, n)) <= 1e-9);
  // phi^0 solves phi' = phi^2 - 1 with phi_T = 1, so it stays at 1.
  for (int n = 0; n <= 20; ++n) CHECK(ref[n] == doctest::Approx(1.0).epsilon(1e-12));
}
