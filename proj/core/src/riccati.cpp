#include "lqnet/riccati.hpp"

#include <algorithm>
#include <cmath>

#include "integrator.hpp"
#include "lqnet/errors.hpp"

namespace lqnet {

namespace {

using cplx = std::complex<double>;

std::vector<double> uniform_grid(double horizon, int steps) {
  std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
  for (int n = 0; n <= steps; ++n) grid[n] = horizon * n / steps;
  grid.back() = horizon;
  return grid;
}

void fill_sum_residual(RiccatiSolution& sol) {
  const std::size_t cols = sol.size();
  sol.sum_residual = 0.0;
  for (std::size_t n = 0; n < cols; ++n) {
    double s = 0.0;
    for (int k = sol.min_index; k <= sol.max_index; ++k) s += sol(k, n);
    sol.sum_residual = std::max(sol.sum_residual, std::abs(s));
  }
}

// b * [(b+q) - (b-q) e^{-2 b tau}] / [(b+q) + (b-q) e^{-2 b tau}], the solution of
// S' = S^2 - b^2 with S(T) = q. e^{b tau} is factored out so nothing overflows.
cplx riccati_closed_form(cplx b2, cplx q, double tau) {
  const cplx b = std::sqrt(b2);
  if (std::abs(b) < 1e-8) {
    // b -> 0 limit S = q / (1 + q tau); the O(b^2) correction is below round-off.
    const cplx den = 1.0 + q * tau;
    if (den == 0.0) throw DomainError("generating function denominator vanishes");
    return q / den;
  }
  const cplx e = std::exp(-2.0 * b * tau);
  const cplx den = (b + q) + (b - q) * e;
  if (den == 0.0) throw DomainError("generating function denominator vanishes");
  return b * ((b + q) - (b - q) * e) / den;
}

void check_time(double t, double horizon) {
  if (!(t >= 0.0 && t <= horizon)) throw ValidationError("t must lie in [0, T]");
}

}  // namespace

void RiccatiSolution::slice(double t, std::span<double> out) const {
  const std::size_t cols = grid.size();
  double pos = (t - grid.front()) / (grid.back() - grid.front()) * static_cast<double>(cols - 1);
  pos = std::clamp(pos, 0.0, static_cast<double>(cols - 1));
  std::size_t n = static_cast<std::size_t>(pos);
  if (n >= cols - 1) n = cols - 2;
  const double f = pos - static_cast<double>(n);
  for (int k = min_index; k <= max_index; ++k) {
    const double* row = values.data() + static_cast<std::size_t>(k - min_index) * cols;
    out[k - min_index] = (1.0 - f) * row[n] + f * row[n + 1];
  }
}

std::complex<double> RiccatiSolution::series_sum(std::complex<double> z, std::size_t n) const {
  cplx s = 0.0;
  for (int k = min_index; k <= max_index; ++k) {
    const double c = (*this)(k, n);
    if (c != 0.0) s += std::pow(z, k) * c;  // z = 0 with vanishing negative powers
  }
  return s;
}

RiccatiSolution solve_chain_riccati(const ChainParams& params, int K, int steps) {
  params.validate();
  if (K < 2) throw ValidationError("K must be at least 2");
  if (steps < 2) throw ValidationError("steps must be at least 2");

  RiccatiSolution sol;
  sol.grid = uniform_grid(params.horizon, steps);
  sol.min_index = 0;
  sol.max_index = K;
  sol.truncation = K;
  const std::size_t dim = static_cast<std::size_t>(K) + 1;

  if (params.p == 0.0) {
    sol.values.assign(dim * sol.grid.size(), 0.0);
    return sol;
  }

  const double pe = params.p * params.epsilon;
  std::vector<double> terminal(dim, 0.0);
  terminal[0] = params.p * params.c;
  terminal[1] = -params.p * params.c;

  auto rhs = [&](double, std::span<const double> y, std::span<double> dy) {
    for (std::size_t k = 0; k < dim; ++k) {
      double s = 0.0;
      const std::size_t half = k / 2;
      for (std::size_t j = 0; j < (k + 1) / 2; ++j) s += y[j] * y[k - j];
      s *= 2.0;
      if (k % 2 == 0) s += y[half] * y[half];
      dy[k] = s;
    }
    dy[0] -= pe;
    dy[1] += pe;
  };

  auto run = detail::integrate_backward(rhs, terminal, params.horizon, steps);
  sol.values = std::move(run.values);
  sol.step_error = run.step_error;
  sol.substeps = run.substeps;
  sol.residual = 0.0;
  for (std::size_t k = 0; k < dim; ++k)
    sol.residual = std::max(sol.residual, std::abs(sol(static_cast<int>(k), steps) - terminal[k]));
  fill_sum_residual(sol);
  return sol;
}

RiccatiSolution solve_twosided_riccati(const TwoSidedParams& params, int K, int steps) {
  params.validate();
  if (K < 2) throw ValidationError("K must be at least 2");
  if (steps < 2) throw ValidationError("steps must be at least 2");

  RiccatiSolution sol;
  sol.grid = uniform_grid(params.horizon, steps);
  sol.min_index = -K;
  sol.max_index = K;
  sol.truncation = K;
  const int dim = 2 * K + 1;
  const double right = params.p * params.p1;
  const double left = (1.0 - params.p) * params.q1;
  const double eps = params.epsilon;

  std::vector<double> terminal(dim, 0.0);
  terminal[K] = params.c * params.B();
  terminal[K + 1] = -params.c * right;
  terminal[K - 1] = -params.c * left;

  // Index j is stored at j + K; the convolution keeps both factors in the window.
  auto rhs = [&](double, std::span<const double> y, std::span<double> dy) {
    for (int j = -K; j <= K; ++j) {
      const int lo = std::max(-K, j - K);
      const int hi = std::min(K, j + K);
      double s = 0.0;
      for (int k = lo; k <= hi; ++k) s += y[k + K] * y[j - k + K];
      dy[j + K] = s;
    }
    dy[K] -= eps * params.B();
    dy[K + 1] += eps * right;
    dy[K - 1] += eps * left;
  };

  auto run = detail::integrate_backward(rhs, terminal, params.horizon, steps);
  sol.values = std::move(run.values);
  sol.step_error = run.step_error;
  sol.substeps = run.substeps;
  sol.residual = 0.0;
  for (int j = -K; j <= K; ++j)
    sol.residual = std::max(sol.residual, std::abs(sol(j, steps) - terminal[j + K]));
  fill_sum_residual(sol);
  return sol;
}

std::complex<double> eval_generating_function_chain(const ChainParams& params, std::complex<double> z,
                                                    double t) {
  params.validate();
  check_time(t, params.horizon);
  if (z == 1.0) return 0.0;
  const cplx one_minus_z = 1.0 - z;
  return riccati_closed_form(params.p * params.epsilon * one_minus_z, params.p * params.c * one_minus_z,
                             params.horizon - t);
}

std::complex<double> eval_generating_function_twosided(const TwoSidedParams& params,
                                                       std::complex<double> z, double t) {
  params.validate();
  check_time(t, params.horizon);
  const double right = params.p * params.p1;
  const double left = (1.0 - params.p) * params.q1;
  cplx T;
  if (z == 0.0) {
    if (left != 0.0) throw DomainError("two-sided generating function is singular at z=0");
    T = right;
  } else {
    T = (1.0 - 1.0 / z) * left + (1.0 - z) * right;
  }
  if (T == 0.0) return 0.0;
  return riccati_closed_form(params.epsilon * T, params.c * T, params.horizon - t);
}

}  // namespace lqnet
