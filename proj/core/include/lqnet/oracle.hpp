#pragma once

// Brute-force verifiers. None of this shares code with the closed-form paths.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lqnet/params.hpp"

namespace lqnet {

struct DenseMatrix {
  int dim = 0;
  std::vector<double> data;  // row-major

  DenseMatrix() = default;
  explicit DenseMatrix(int n) : dim(n), data(static_cast<std::size_t>(n) * n, 0.0) {}

  double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * dim + j]; }
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * dim + j]; }

  static DenseMatrix identity(int n);
  // Entry (i, i+d) = coeffs[d - min_offset] wherever both indices are in range.
  static DenseMatrix toeplitz(int n, std::span<const double> coeffs, int min_offset);
};

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

// exp(tA) by scaling and squaring of a truncated Taylor series.
DenseMatrix dense_expm(const DenseMatrix& a, double t);

struct CauchyResult {
  std::vector<std::complex<double>> coeffs;  // coeffs[j + K]
  int K = 0;
  double radius = 0.0;
  int nodes = 0;
  double achieved = 0.0;  // max change at the last doubling

  std::complex<double> operator[](int j) const { return coeffs[j + K]; }
};

// Laurent coefficients c_{-K}..c_K of f on |z| = r by trapezoidal contour sums.
CauchyResult cauchy_coeffs(const std::function<std::complex<double>(std::complex<double>)>& f, int K,
                           double r, double tol = 1e-12, int max_nodes = 1 << 22);

// Radius inside the annulus of analyticity of sqrt(1 - w z - v/z), whose branch
// points are 1 and v/w.
double default_contour_radius(double w, double v);

struct Derivative {
  double value = 0.0;
  double error = 0.0;
};

// Central differences at h = 1e-3, 5e-4, 2.5e-4 combined by Richardson extrapolation.
Derivative finite_difference(const std::function<double(double)>& f, double x);

// Every coefficient phi^{a;b} of a G-generation tree, with a an ancestor of b or b itself.
// Nodes are (generation g, index k) with 0 <= k < M^g.
struct BruteForceTree {
  struct Pair {
    int ancestor_gen, ancestor_k, gen, k;
    int depth() const { return gen - ancestor_gen; }
  };
  int M = 1;
  int G = 0;
  std::vector<double> grid;
  std::vector<Pair> pairs;
  std::vector<double> values;  // values[pair * grid.size() + n]

  double operator()(std::size_t pair, std::size_t n) const { return values[pair * grid.size() + n]; }
};

BruteForceTree brute_force_tree(const TreeParams& params, int G, int steps);

// Deterministic depth system Psi' = sum_i Psi^i Psi^{m-i} - eps [m=0] + (eps/M) [m=1]
// with Psi_T = c [m=0] - (c/M) [m=1]. M = 1 is the deterministic one-sided chain.
// Returns values[m * (steps+1) + n].
std::vector<double> deterministic_tree_system(int M, double epsilon, double c, double horizon, int D,
                                              int steps);

}  // namespace lqnet
