#include <doctest.h>

#include <cmath>

#include "lqnet/errors.hpp"
#include "lqnet/oracle.hpp"
#include "lqnet/riccati.hpp"
#include "lqnet/tree.hpp"

using namespace lqnet;

TEST_CASE("terminal data") {
  TreeParams tp{2, 0.5, 1.0, 1.0, 1.0, 1.0};
  CHECK(tp.p0() == doctest::Approx(0.25));
  const auto sol = solve_tree_riccati(tp, 3, 10);
  CHECK(sol(0, 10) == 0.75);
  CHECK(sol(1, 10) == -0.375);
  CHECK(sol(2, 10) == 0.0);
}

TEST_CASE("scaled depth coefficients solve the chain system with p = 1 - p0") {
  for (auto [M, p] : {std::pair{2, 0.5}, {3, 0.2}, {1, 0.7}}) {
    TreeParams tp{M, p, 1.3, 0.8, 1.0, 1.5};
    const auto tree = solve_tree_riccati(tp, 6, 30);
    ChainParams cp{1.3, 0.8, 1.0 - tp.p0(), 1.0, 1.5};
    const auto chain = solve_chain_riccati(cp, 6, 30);
    for (int m = 0; m <= 6; ++m)
      for (std::size_t n = 0; n < tree.size(); ++n)
        CHECK(std::pow(M, m) * tree(m, n) == doctest::Approx(chain(m, n)).epsilon(1e-9));
  }
}

TEST_CASE("depth invariance against the unreduced tree") {
  TreeParams a{2, 0.6, 1.0, 0.5, 1.0, 1.0};
  const auto ra = verify_depth_invariance(a, 3, 50);
  CHECK(ra.pairs == 17);  // 7 self pairs, 6 at depth 1, 4 at depth 2
  CHECK(ra.same_depth <= 1e-9);
  CHECK(ra.reduced <= 1e-9);
  TreeParams b{3, 0.4, 2.0, 1.0, 1.0, 2.0};
  const auto rb = verify_depth_invariance(b, 2, 50);
  CHECK(rb.pairs == 7);
  CHECK(rb.max() <= 1e-9);
}

TEST_CASE("deterministic limits") {
  TreeParams tp{2, 1.0, 1.0, 1.0, 1.0, 1.0};
  CHECK(deterministic_limit_check(tp, 5, 40) <= 1e-10);
  tp.p = 0.5;
  CHECK_THROWS_AS(deterministic_limit_check(tp, 5, 40), ValidationError);

  TreeParams line{1, 1.0, 1.0, 1.0, 1.0, 1.0};
  const auto tree = solve_tree_riccati(line, 8, 40);
  const auto chain = solve_chain_riccati(ChainParams{1.0, 1.0, 1.0, 1.0, 1.0}, 8, 40);
  for (int m = 0; m <= 8; ++m)
    for (std::size_t n = 0; n < tree.size(); ++n) CHECK(std::abs(tree(m, n) - chain(m, n)) <= 1e-9);
}

TEST_CASE("tree states and equilibrium drift") {
  TreeStates s(2, 3);
  CHECK(s.x.size() == 7);
  CHECK(TreeStates::offset(2, 2) == 3);
  CHECK(TreeStates::offset(3, 3) == 13);
  for (std::size_t i = 0; i < s.x.size(); ++i) s.x[i] = static_cast<double>(i + 1);
  CHECK(s(1, 1) == 3.0);
  CHECK(s(2, 0) == 4.0);

  TreeParams tp{2, 0.5, 1.0, 1.0, 1.0, 1.0};
  const auto sol = solve_tree_riccati(tp, 4, 10);
  std::vector<double> psi(5);
  sol.slice(0.0, psi);
  // Node (1, 1) has children (2, 2) and (2, 3).
  const auto d = tree_equilibrium_drift(sol, 0.0, s, 1, 1);
  CHECK(d.drift == doctest::Approx(-(psi[0] * 3.0 + psi[1] * (6.0 + 7.0))));
  CHECK(d.depth_used == 1);
  CHECK(d.dropped_weight == doctest::Approx(4 * std::abs(psi[2]) + 8 * std::abs(psi[3]) + 16 * std::abs(psi[4])));
  CHECK_THROWS_AS(tree_equilibrium_drift(sol, 0.0, s, 3, 0), ValidationError);
  CHECK_THROWS_AS(tree_equilibrium_drift(sol, 0.0, s, 1, 2), ValidationError);
  const auto shallow = solve_tree_riccati(tp, 1, 10);
  CHECK_THROWS_AS(tree_equilibrium_drift(shallow, 0.0, s, 0, 0), TruncationError);
}

TEST_CASE("random child-set expectations") {
  const double x[] = {0.3, -1.2, 2.0};
  const double p = 0.35;
  const double p0 = std::pow(1.0 - p, 3);
  CHECK(subset_average_expectation(x, p) == doctest::Approx((1.0 - p0) / 3.0 * (0.3 - 1.2 + 2.0)).epsilon(1e-14));

  const double y[] = {1.0, 4.0};
  const double own = 0.5;
  const double manual = p * (1 - p) * (0.25 + 12.25) + p * p * (2.5 - 0.5) * (2.5 - 0.5);
  CHECK(subset_quadratic_expectation(y, own, p) == doctest::Approx(manual).epsilon(1e-14));
  CHECK(subset_quadratic_expectation(y, own, 1.0) == doctest::Approx(4.0));
}

TEST_CASE("validation") {
  TreeParams tp{2, 0.5, 1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(solve_tree_riccati(tp, 0, 10), ValidationError);
  tp.p = 0.0;
  CHECK_THROWS_AS(solve_tree_riccati(tp, 2, 10), ValidationError);
  tp.p = 0.5;
  tp.M = 0;
  CHECK_THROWS_AS(solve_tree_riccati(tp, 2, 10), ValidationError);
}
