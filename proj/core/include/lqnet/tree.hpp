#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lqnet/params.hpp"

namespace lqnet {

// Depth-indexed tree coefficients Psi^m_t, m = 0..D, shared by every node.
struct TreeRiccatiSolution {
  std::vector<double> grid;
  int depth = 0;
  int M = 1;
  std::vector<double> values;  // values[m * grid.size() + n]
  double step_error = 0.0;
  int substeps = 1;

  std::size_t size() const { return grid.size(); }
  double operator()(int m, std::size_t n) const { return values[static_cast<std::size_t>(m) * grid.size() + n]; }
  void slice(double t, std::span<double> out) const;
};

TreeRiccatiSolution solve_tree_riccati(const TreeParams& params, int D, int steps);

struct DepthInvarianceReport {
  double same_depth = 0.0;  // max spread among brute-force coefficients of equal depth
  double reduced = 0.0;     // max |brute force - reduced solver|
  std::size_t pairs = 0;
  double max() const { return same_depth > reduced ? same_depth : reduced; }
};

// Integrates the unreduced G-generation system and checks the depth theorem.
DepthInvarianceReport verify_depth_invariance(const TreeParams& params, int G, int steps);

// Max difference between the random tree at p = 1 and the deterministic tree system.
double deterministic_limit_check(const TreeParams& params, int D, int steps);

// States of a finite G-generation tree. Generation g holds M^g nodes.
struct TreeStates {
  int M = 1;
  int G = 0;
  std::vector<double> x;

  TreeStates(int M, int G);
  static std::size_t offset(int M, int g);
  double& operator()(int g, long k) { return x[offset(M, g) + static_cast<std::size_t>(k)]; }
  double operator()(int g, long k) const { return x[offset(M, g) + static_cast<std::size_t>(k)]; }
};

struct DriftResult {
  double drift = 0.0;
  double dropped_weight = 0.0;  // sum over depths past the tree of M^m |Psi^m|
  int depth_used = 0;
};

// -sum_m Psi^m_t sum_{descendants at depth m} X, restricted to the stored tree.
DriftResult tree_equilibrium_drift(const TreeRiccatiSolution& sol, double t, const TreeStates& states,
                                   int g, long k);

// E over the random child set of [d >= 1] * mean of the present children.
double subset_average_expectation(std::span<const double> children, double p);
// E over the random child set of [d >= 1] * (mean of present children - x)^2.
double subset_quadratic_expectation(std::span<const double> children, double x, double p);

}  // namespace lqnet
