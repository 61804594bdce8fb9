#include "lqnet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "lqnet/catalan.hpp"
#include "lqnet/errors.hpp"
#include "lqnet/oracle.hpp"
#include "lqnet/riccati.hpp"
#include "lqnet/sim.hpp"
#include "lqnet/tree.hpp"
#include "lqnet/twosided.hpp"

namespace lqnet {

namespace {

CheckResult check(std::string name, double achieved, double tol) {
  return {std::move(name), std::isfinite(achieved) && achieved <= tol, achieved, tol};
}

void convolution(const VerifyOptions& o, std::vector<CheckResult>& out) {
  const auto phi = stationary_chain_coeffs(1.0, 1.0, o.K);
  out.push_back(check("stationary convolution residual, n <= " + std::to_string(o.K),
                      phi.convolution_residual(), 1e-12));
  const auto q = catalan_generator(std::max(o.p, 1e-12), o.K);
  double worst = 0.0;
  for (int n = 2; n <= o.K; ++n) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k) s += q.row[k] * q.row[n - k];
    worst = std::max(worst, std::abs(s));
  }
  out.push_back(check("generator row convolution residual", worst, 1e-12));
}

void kernel(const VerifyOptions& o, std::vector<CheckResult>& out) {
  const auto gen = catalan_generator(o.p, o.dim);
  std::vector<double> band(gen.row.begin(), gen.row.end());
  for (double& v : band) v *= std::sqrt(o.p);
  const auto E = dense_expm(DenseMatrix::toeplitz(o.dim, band, 0), o.t);
  double worst = 0.0;
  for (int i = 0; i < o.dim; ++i)
    for (int j = 0; j < o.dim; ++j) worst = std::max(worst, std::abs(E(i, j) - kernel_entry(i, j, o.t, o.p)));
  out.push_back(check("one-sided kernel vs dense expm, dim " + std::to_string(o.dim), worst, 1e-8));

  // Two-sided weights: half-width 255 keeps the truncation edge far from the centre.
  const double pr = 0.3;
  const int H = 255, W = std::min(30, o.dim / 2);
  TwoSidedParams tp;
  tp.p = pr;
  const auto phi = stationary_twosided_coeffs(tp, 2 * H);
  std::vector<double> symbol(static_cast<std::size_t>(4 * H + 1));
  for (int j = -2 * H; j <= 2 * H; ++j) symbol[j + 2 * H] = -phi[j];
  const auto E2 = dense_expm(DenseMatrix::toeplitz(2 * H + 1, symbol, -2 * H), o.t);
  double worst2 = 0.0;
  for (int d = -W; d <= W; ++d)
    worst2 = std::max(worst2, std::abs(E2(H, H + d) - twosided_kernel_weight(d, o.t, pr)));
  out.push_back(check("two-sided kernel weights vs dense expm (p=0.3)", worst2, 1e-8));
}

void generating_function(const VerifyOptions& o, std::vector<CheckResult>& out) {
  ChainParams cp;
  cp.p = o.p;
  cp.c = 1.0;
  cp.horizon = 1.0;
  const auto sol = solve_chain_riccati(cp, 64, 100);
  double worst = 0.0;
  for (double z : {0.0, 0.3, 0.6, -0.5})
    for (std::size_t n = 0; n < sol.size(); n += 10)
      worst = std::max(worst, std::abs(sol.series_sum(z, n) - eval_generating_function_chain(cp, z, sol.grid[n])));
  out.push_back(check("chain series vs closed form", worst, 1e-6));

  TwoSidedParams tp;
  tp.p = 0.6;
  tp.q1 = 0.5;
  tp.c = 1.0;
  const auto ts = solve_twosided_riccati(tp, 32, 100);
  double worst2 = 0.0;
  for (double z : {0.3, 0.6, -0.5})
    for (std::size_t n = 0; n < ts.size(); n += 10)
      worst2 = std::max(worst2, std::abs(ts.series_sum(z, n) - eval_generating_function_twosided(tp, z, ts.grid[n])));
  out.push_back(check("two-sided series vs closed form", worst2, 1e-6));

  TwoSidedParams sym;
  const auto st = stationary_twosided_coeffs(sym, 32);
  const auto cc = cauchy_coeffs(
      [&](std::complex<double> z) { return twosided_symbol(st.epsilon, st.B, st.w, st.v, z); }, 32,
      default_contour_radius(st.w, st.v));
  double worst3 = 0.0;
  for (int j = -32; j <= 32; ++j) worst3 = std::max(worst3, std::abs(cc[j] - st[j]));
  out.push_back(check("symmetric stationary coefficients vs contour oracle", worst3, 1e-10));
}

void tree_depth(const VerifyOptions& o, std::vector<CheckResult>& out) {
  TreeParams tp;
  tp.M = o.M;
  tp.p = o.p == 1.0 ? 0.5 : o.p;
  tp.c = 1.0;
  const auto rep = verify_depth_invariance(tp, o.G, 50);
  out.push_back(check("same-depth spread (unreduced tree)", rep.same_depth, 1e-9));
  out.push_back(check("reduced solver vs unreduced tree", rep.reduced, 1e-9));
  TreeParams det = tp;
  det.p = 1.0;
  out.push_back(check("p=1 tree vs deterministic tree system", deterministic_limit_check(det, 6, 50), 1e-10));
}

void rho_suite(const VerifyOptions&, std::vector<CheckResult>& out) {
  double worst = 0.0;
  for (int k = 0; k <= 10; ++k)
    for (double x = -9.0; x <= -0.25; x += 0.25) {
      const auto d = finite_difference([k](double y) { return rho(k, y); }, x);
      const double rhs = d.value + rho(k, x) / (2.0 * std::sqrt(-x));
      const double lhs = rho(k + 1, x);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
  out.push_back(check("rho recursion vs finite differences", worst, 1e-8));
  double worst2 = 0.0;
  for (int j = 1; j <= 8; ++j)
    for (double nu : {0.5, 1.0, 2.0}) {
      const double lhs = rho(j, -nu * nu);
      const double rhs = std::sqrt(2.0 * nu / std::numbers::pi) * std::exp(nu) * bessel_k_half(j - 1, nu) /
                         (std::pow(2.0, j) * std::pow(nu, j));
      worst2 = std::max(worst2, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
  out.push_back(check("rho vs half-integer Bessel identity", worst2, 1e-10));
}

void variance(const VerifyOptions& o, std::vector<CheckResult>& out) {
  // Oracle: Simpson on [0,t] of the squared first row of exp(s sqrt(p) Q).
  const double t = std::min(o.t, 2.0);
  const int dim = 200, intervals = 64;
  const auto gen = catalan_generator(o.p, dim);
  std::vector<double> band(gen.row.begin(), gen.row.end());
  for (double& v : band) v *= std::sqrt(o.p);
  const auto step = dense_expm(DenseMatrix::toeplitz(dim, band, 0), t / intervals);
  DenseMatrix E = DenseMatrix::identity(dim);
  double integral = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    double mass = 0.0;
    for (int j = 0; j < dim; ++j) mass += E(0, j) * E(0, j);
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    integral += w * mass;
    E = multiply(E, step);
  }
  integral *= t / intervals / 3.0;
  const double quad = variance_chain(t, o.p).value;
  out.push_back(check("variance quadrature vs dense-expm Simpson", std::abs(quad - integral), 1e-6));

  SimConfig cfg;
  cfg.players = 16;
  cfg.paths = 4000;
  cfg.dt = 0.01;
  cfg.seed = 7;
  ChainParams cp;
  cp.p = o.p;
  const auto cross = exact_variance_crosscheck(cp, 1.0, cfg);
  out.push_back(check("variance Monte Carlo |z-score|", std::abs(cross.z), 3.0));
}

}  // namespace

std::vector<std::string_view> verify_suite_names() {
  return {"convolution", "kernel", "generating-function", "tree-depth", "rho", "variance", "all"};
}

std::vector<CheckResult> run_verify_suite(std::string_view suite, const VerifyOptions& o) {
  if (!(o.p > 0.0 && o.p <= 1.0)) throw ValidationError("p must lie in (0,1]");
  if (o.K < 2 || o.dim < 2 || o.M < 1 || o.G < 1 || !(o.t >= 0.0))
    throw ValidationError("invalid verification options");
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  bool known = all;
  auto want = [&](std::string_view name) {
    if (all || suite == name) {
      known = true;
      return true;
    }
    return false;
  };
  if (want("convolution")) convolution(o, out);
  if (want("kernel")) kernel(o, out);
  if (want("generating-function")) generating_function(o, out);
  if (want("tree-depth")) tree_depth(o, out);
  if (want("rho")) rho_suite(o, out);
  if (want("variance")) variance(o, out);
  if (!known) throw ValidationError("unknown verification suite: " + std::string(suite));
  return out;
}

}  // namespace lqnet
