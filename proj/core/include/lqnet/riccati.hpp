#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "lqnet/params.hpp"

namespace lqnet {

// Distance-indexed Riccati coefficients phi_t^k on a uniform grid 0 = t_0 < ... < t_N = T.
struct RiccatiSolution {
  std::vector<double> grid;
  int min_index = 0;  // 0 one-sided, -K two-sided
  int max_index = 0;  // K
  std::vector<double> values;  // values[(k - min_index) * grid.size() + n]
  int truncation = 0;
  double residual = 0.0;      // terminal mismatch
  double step_error = 0.0;    // step-doubling difference of the accepted run
  int substeps = 1;
  double sum_residual = 0.0;  // max over the grid of |sum_k phi_t^k|

  std::size_t size() const { return grid.size(); }
  double operator()(int k, std::size_t n) const {
    return values[static_cast<std::size_t>(k - min_index) * grid.size() + n];
  }
  std::span<const double> series(int k) const {
    return {values.data() + static_cast<std::size_t>(k - min_index) * grid.size(), grid.size()};
  }
  // Linear interpolation in time of every index, written to out[k - min_index].
  void slice(double t, std::span<double> out) const;
  // sum_k z^k phi_{t_n}^k over the stored window.
  std::complex<double> series_sum(std::complex<double> z, std::size_t n) const;
};

RiccatiSolution solve_chain_riccati(const ChainParams& params, int K, int steps);
RiccatiSolution solve_twosided_riccati(const TwoSidedParams& params, int K, int steps);

// Closed-form S_t(z). z = 1 returns exactly 0.
std::complex<double> eval_generating_function_chain(const ChainParams& params, std::complex<double> z,
                                                    double t);
// Two-sided S_t(z). z = 0 is accepted only when (1-p)*q1 = 0, where the series has no
// negative powers.
std::complex<double> eval_generating_function_twosided(const TwoSidedParams& params,
                                                       std::complex<double> z, double t);

}  // namespace lqnet
