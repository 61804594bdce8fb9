#pragma once

// Fixed-step RK4 run backward from a terminal value, with step doubling.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "lqnet/errors.hpp"

namespace lqnet::detail {

struct BackwardRun {
  std::vector<double> values;  // values[comp * (steps + 1) + n], n indexes t_n = n*T/steps
  double step_error = 0.0;
  int substeps = 1;
};

// rhs(t, y, dy) fills dy = dy/dt. The terminal value is stored untouched at
// n = steps, so terminal data is exact.
template <class Rhs>
std::vector<double> rk4_backward(Rhs& rhs, std::span<const double> terminal, double horizon,
                                 int steps, int substeps) {
  const std::size_t dim = terminal.size();
  const std::size_t cols = static_cast<std::size_t>(steps) + 1;
  std::vector<double> out(dim * cols);
  std::vector<double> y(terminal.begin(), terminal.end());
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  for (std::size_t c = 0; c < dim; ++c) out[c * cols + steps] = y[c];

  const double h = -horizon / (static_cast<double>(steps) * substeps);
  for (int n = steps; n > 0; --n) {
    for (int s = 0; s < substeps; ++s) {
      const double t = horizon * n / steps + h * s;
      rhs(t, y, k1);
      for (std::size_t c = 0; c < dim; ++c) tmp[c] = y[c] + 0.5 * h * k1[c];
      rhs(t + 0.5 * h, tmp, k2);
      for (std::size_t c = 0; c < dim; ++c) tmp[c] = y[c] + 0.5 * h * k2[c];
      rhs(t + 0.5 * h, tmp, k3);
      for (std::size_t c = 0; c < dim; ++c) tmp[c] = y[c] + h * k3[c];
      rhs(t + h, tmp, k4);
      for (std::size_t c = 0; c < dim; ++c) {
        y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        if (!std::isfinite(y[c])) throw IntegrationError("non-finite Riccati solution", t + h);
      }
    }
    for (std::size_t c = 0; c < dim; ++c) out[c * cols + n - 1] = y[c];
  }
  return out;
}

// Doubles the substep count until two successive runs agree to tol on every
// component and grid point. Returns the finer run.
template <class Rhs>
BackwardRun integrate_backward(Rhs rhs, std::span<const double> terminal, double horizon, int steps,
                               double tol = 1e-10, int max_substeps = 1 << 14) {
  int s = 1;
  std::vector<double> coarse = rk4_backward(rhs, terminal, horizon, steps, s);
  double err = 0.0;
  while (true) {
    s *= 2;
    std::vector<double> fine = rk4_backward(rhs, terminal, horizon, steps, s);
    err = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i) err = std::max(err, std::abs(fine[i] - coarse[i]));
    if (err <= tol) return {std::move(fine), err, s};
    if (s >= max_substeps) throw AccuracyError("step doubling did not reach tolerance", err);
    coarse = std::move(fine);
  }
}

}  // namespace lqnet::detail
