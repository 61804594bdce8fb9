#include "lqnet/tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "integrator.hpp"
#include "lqnet/errors.hpp"
#include "lqnet/oracle.hpp"

namespace lqnet {

void TreeRiccatiSolution::slice(double t, std::span<double> out) const {
  const std::size_t cols = grid.size();
  double pos = t / grid.back() * static_cast<double>(cols - 1);
  pos = std::clamp(pos, 0.0, static_cast<double>(cols - 1));
  std::size_t n = std::min(static_cast<std::size_t>(pos), cols - 2);
  const double f = pos - static_cast<double>(n);
  for (int m = 0; m <= depth; ++m) out[m] = (1.0 - f) * (*this)(m, n) + f * (*this)(m, n + 1);
}

TreeRiccatiSolution solve_tree_riccati(const TreeParams& params, int D, int steps) {
  params.validate();
  if (D < 1) throw ValidationError("depth D must be at least 1");
  if (steps < 2) throw ValidationError("steps must be at least 2");
  const double q = 1.0 - params.p0();
  const double eps = params.epsilon;
  const int M = params.M;
  const std::size_t dim = static_cast<std::size_t>(D) + 1;

  std::vector<double> terminal(dim, 0.0);
  terminal[0] = params.c * q;
  terminal[1] = -params.c * q / M;

  // Each depth-m descendant has exactly one ancestor per intermediate generation,
  // so the ceiling-index sum collapses to sum_i Psi^i Psi^{m-i}.
  auto rhs = [&](double, std::span<const double> y, std::span<double> dy) {
    for (std::size_t m = 0; m < dim; ++m) {
      double s = 0.0;
      for (std::size_t i = 0; i <= m; ++i) s += y[i] * y[m - i];
      dy[m] = s;
    }
    dy[0] -= eps * q;
    dy[1] += eps * q / M;
  };

  auto run = detail::integrate_backward(rhs, terminal, params.horizon, steps);
  TreeRiccatiSolution sol;
  sol.grid.resize(static_cast<std::size_t>(steps) + 1);
  for (int n = 0; n <= steps; ++n) sol.grid[n] = params.horizon * n / steps;
  sol.depth = D;
  sol.M = M;
  sol.values = std::move(run.values);
  sol.step_error = run.step_error;
  sol.substeps = run.substeps;
  return sol;
}

DepthInvarianceReport verify_depth_invariance(const TreeParams& params, int G, int steps) {
  const auto brute = brute_force_tree(params, G, steps);
  const auto reduced = solve_tree_riccati(params, std::max(1, G - 1), steps);
  DepthInvarianceReport rep;
  rep.pairs = brute.pairs.size();
  std::map<int, std::size_t> first_of_depth;
  for (std::size_t i = 0; i < brute.pairs.size(); ++i) first_of_depth.emplace(brute.pairs[i].depth(), i);
  for (std::size_t i = 0; i < brute.pairs.size(); ++i) {
    const int d = brute.pairs[i].depth();
    const std::size_t ref = first_of_depth[d];
    for (std::size_t n = 0; n < brute.grid.size(); ++n) {
      rep.same_depth = std::max(rep.same_depth, std::abs(brute(i, n) - brute(ref, n)));
      rep.reduced = std::max(rep.reduced, std::abs(brute(i, n) - reduced(d, n)));
    }
  }
  return rep;
}

double deterministic_limit_check(const TreeParams& params, int D, int steps) {
  if (params.p != 1.0) throw ValidationError("deterministic limit requires p = 1");
  const auto sol = solve_tree_riccati(params, D, steps);
  const auto ref = deterministic_tree_system(params.M, params.epsilon, params.c, params.horizon, D, steps);
  double worst = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) worst = std::max(worst, std::abs(ref[i] - sol.values[i]));
  return worst;
}

TreeStates::TreeStates(int M_, int G_) : M(M_), G(G_), x(offset(M_, G_), 0.0) {
  if (M < 1 || G < 1) throw ValidationError("tree needs M >= 1 and G >= 1");
}

std::size_t TreeStates::offset(int M, int g) {
  std::size_t total = 0, width = 1;
  for (int i = 0; i < g; ++i) {
    total += width;
    width *= static_cast<std::size_t>(M);
  }
  return total;
}

DriftResult tree_equilibrium_drift(const TreeRiccatiSolution& sol, double t, const TreeStates& states,
                                   int g, long k) {
  if (states.M != sol.M) throw ValidationError("branching factor mismatch");
  if (g < 0 || g >= states.G) throw ValidationError("generation outside the stored tree");
  long width = 1;
  for (int i = 0; i < g; ++i) width *= states.M;
  if (k < 0 || k >= width) throw ValidationError("node index outside its generation");
  const int avail = states.G - 1 - g;
  if (sol.depth < avail) throw TruncationError("solution depth does not cover the stored descendants");

  std::vector<double> psi(static_cast<std::size_t>(sol.depth) + 1);
  sol.slice(t, psi);
  DriftResult out;
  out.depth_used = avail;
  long first = k, count = 1;
  for (int m = 0; m <= avail; ++m) {
    double s = 0.0;
    for (long j = first; j < first + count; ++j) s += states(g + m, j);
    out.drift -= psi[m] * s;
    first *= states.M;
    count *= states.M;
  }
  double mult = std::pow(static_cast<double>(states.M), avail + 1);
  for (int m = avail + 1; m <= sol.depth; ++m) {
    out.dropped_weight += mult * std::abs(psi[m]);
    mult *= states.M;
  }
  return out;
}

namespace {

template <class F>
double enumerate_subsets(std::span<const double> children, double p, F&& value) {
  const int M = static_cast<int>(children.size());
  if (M < 1 || M > 24) throw ValidationError("subset enumeration supports 1..24 children");
  double total = 0.0;
  for (unsigned mask = 1; mask < (1u << M); ++mask) {
    int d = 0;
    double s = 0.0;
    for (int j = 0; j < M; ++j)
      if (mask & (1u << j)) {
        ++d;
        s += children[j];
      }
    // p_d / C(M,d) is exactly the probability of this particular subset.
    const double prob = std::pow(p, d) * std::pow(1.0 - p, M - d);
    total += prob * value(s / d);
  }
  return total;
}

}  // namespace

double subset_average_expectation(std::span<const double> children, double p) {
  return enumerate_subsets(children, p, [](double mean) { return mean; });
}

double subset_quadratic_expectation(std::span<const double> children, double x, double p) {
  return enumerate_subsets(children, p, [x](double mean) { return (mean - x) * (mean - x); });
}

}  // namespace lqnet
