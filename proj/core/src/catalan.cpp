#include "lqnet/catalan.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "lqnet/errors.hpp"
#include "lqnet/riccati.hpp"

namespace lqnet {

namespace {

// log of sum_{m=0}^{k-1} (k+m-1)! / (2^m m! (k-m-1)!) nu^{-m}; every term is positive.
double log_rho_sum(int k, double nu) {
  std::vector<double> logs(static_cast<std::size_t>(k));
  double acc = 0.0;
  logs[0] = 0.0;
  for (int m = 1; m < k; ++m) {
    acc += std::log(static_cast<double>(k + m - 1) * static_cast<double>(k - m)) -
           std::log(2.0 * m * nu);
    logs[m] = acc;
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  double s = 0.0;
  for (double l : logs) s += std::exp(l - top);
  return top + std::log(s);
}

double check_p_kernel(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("p must lie in (0,1]");
  return std::sqrt(p);
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::OdeLimit: return "ode-limit";
    case Provenance::CauchyOracle: return "cauchy-oracle";
  }
  return "unknown";
}

double StationaryCoefficients::sum_residual() const {
  double s = 0.0;
  for (double v : values) s += v;
  return std::abs(s);
}

double StationaryCoefficients::convolution_residual() const {
  double worst = 0.0;
  const int K = static_cast<int>(values.size()) - 1;
  for (int n = 2; n <= K; ++n) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k) s += values[k] * values[n - k];
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

StationaryCoefficients stationary_chain_coeffs(double p, double epsilon, int K) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p must lie in [0,1]");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ValidationError("epsilon must be positive");
  if (K < 2) throw ValidationError("K must be at least 2");

  StationaryCoefficients out;
  out.scale = std::sqrt(p * epsilon);
  out.truncation = K;
  out.values.assign(static_cast<std::size_t>(K) + 1, 0.0);
  if (out.scale == 0.0) return out;
  // phi^{k+1} / phi^k = (2k-1) / (2(k+1)) for k >= 1, which never overflows.
  out.values[0] = out.scale;
  out.values[1] = -0.5 * out.scale;
  for (int k = 1; k < K; ++k) out.values[k + 1] = out.values[k] * (2.0 * k - 1.0) / (2.0 * (k + 1));
  return out;
}

StationaryCoefficients stationary_from_riccati(const RiccatiSolution& sol, double p, double epsilon,
                                               std::size_t n) {
  if (sol.min_index != 0) throw ValidationError("expected a one-sided Riccati solution");
  StationaryCoefficients out;
  out.scale = std::sqrt(p * epsilon);
  out.truncation = sol.max_index;
  out.provenance = Provenance::OdeLimit;
  out.values.resize(static_cast<std::size_t>(sol.max_index) + 1);
  for (int k = 0; k <= sol.max_index; ++k) out.values[k] = sol(k, n);
  return out;
}

double GeneratorMatrix::row_sum() const {
  double s = 0.0;
  for (double q : row) s += q;
  return s;
}

GeneratorMatrix catalan_generator(double p, int K) {
  check_p_kernel(p);
  // q_k = -phi^k / sqrt(p) at epsilon = 1 does not depend on p.
  const auto phi = stationary_chain_coeffs(1.0, 1.0, K);
  GeneratorMatrix g;
  g.row.resize(phi.values.size());
  for (std::size_t k = 0; k < phi.values.size(); ++k) g.row[k] = -phi.values[k];
  return g;
}

double rho(int k, double x) {
  if (k < 0) throw ValidationError("rho order must be nonnegative");
  if (!(x < 0.0)) throw DomainError("rho requires x < 0");
  if (k == 0) return 1.0;
  const double nu = std::sqrt(-x);
  return std::exp(log_rho_sum(k, nu) - k * std::log(2.0 * nu));
}

double kernel_entry(int i, int j, double t, double p) {
  if (!(t >= 0.0)) throw ValidationError("t must be nonnegative");
  const double sp = check_p_kernel(p);
  if (j < i) return 0.0;
  const int k = j - i;
  const double nu = sp * t;
  if (nu == 0.0) return k == 0 ? 1.0 : 0.0;
  if (k == 0) return std::exp(-nu);
  // (nu^2)^k rho_k(-nu^2) e^{-nu} / k! = e^{-nu} (nu/2)^k / k! * sum_m ...
  const double log_entry = -nu + k * std::log(0.5 * nu) - std::lgamma(k + 1.0) + log_rho_sum(k, nu);
  return std::exp(log_entry);
}

std::vector<double> kernel_row(int n, double t, double p) {
  if (n < 0) throw ValidationError("row length must be nonnegative");
  if (!(t >= 0.0)) throw ValidationError("t must be nonnegative");
  const double nu = check_p_kernel(p) * t;
  if (nu > 700.0) throw DomainError("kernel row underflows for sqrt(p)*t > 700");
  std::vector<double> g(static_cast<std::size_t>(n) + 1, 0.0);
  g[0] = std::exp(-nu);
  if (n >= 1) g[1] = 0.5 * nu * g[0];
  // From 4(1-z)G'' = nu^2 G + 2G' for G(z) = exp(-nu sqrt(1-z)); all terms positive.
  const double nu2 = nu * nu;
  for (int k = 0; k + 2 <= n; ++k) {
    const double kk = k;
    g[k + 2] = (nu2 * g[k] + 2.0 * (kk + 1.0) * (2.0 * kk + 1.0) * g[k + 1]) /
               (4.0 * (kk + 1.0) * (kk + 2.0));
  }
  return g;
}

double TransitionKernel::operator()(int i, int j) const {
  if (j < i) return 0.0;
  const int k = j - i;
  if (k < window) return row[k];
  return kernel_entry(i, j, t, p);
}

double TransitionKernel::row_sum() const {
  double s = 0.0;
  for (double v : row) s += v;
  return s;
}

TransitionKernel make_transition_kernel(double p, double t, int window) {
  if (window < 1) throw ValidationError("window must be positive");
  TransitionKernel k;
  k.p = p;
  k.t = t;
  k.window = window;
  k.row.resize(static_cast<std::size_t>(window));
  for (int j = 0; j < window; ++j) k.row[j] = kernel_entry(0, j, t, p);
  return k;
}

namespace {

// sum_k p_{0k}(s)^2 with a k^{-3} tail correction past 16 nu^2.
double squared_row_mass(double nu) {
  const int J = 64 + static_cast<int>(std::ceil(16.0 * nu * nu));
  const auto g = kernel_row(J, nu, 1.0);
  double s = 0.0;
  for (double v : g) s += v * v;
  // g_k ~ C k^{-3/2}, so sum_{k>J} g_k^2 ~ g_J^2 (J - 1) / 2.
  s += g[J] * g[J] * 0.5 * (J - 1);
  return s;
}

}  // namespace

VarianceResult variance_chain(double t, double p, double rel_tol) {
  if (!(t >= 0.0)) throw ValidationError("t must be nonnegative");
  const double sp = check_p_kernel(p);
  VarianceResult out;
  if (t == 0.0) return out;

  using Rule = boost::math::quadrature::gauss<double, 16>;
  auto integrate = [&](int panels) {
    const double h = t / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i)
      total += Rule::integrate([&](double s) { return squared_row_mass(sp * s); }, i * h, (i + 1) * h);
    return total;
  };
  int panels = 1;
  double prev = integrate(panels);
  const int max_panels = 1 << 12;
  while (true) {
    panels *= 2;
    const double cur = integrate(panels);
    const double change = std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
    if (change <= rel_tol) {
      out.value = cur;
      out.achieved = change;
      out.panels = panels;
      return out;
    }
    if (panels >= max_panels) throw AccuracyError("variance quadrature did not converge", change);
    prev = cur;
  }
}

double asymptotic_variance_chain(double p) {
  if (p == 0.0) throw DomainError("variance diverges at p = 0");
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("p must lie in (0,1]");
  return 1.0 / std::sqrt(2.0 * p);
}

double bessel_k_half(int n, double x) {
  if (n < 0) throw ValidationError("order index must be nonnegative");
  if (!(x > 0.0)) throw DomainError("bessel_k_half requires x > 0");
  double term = 1.0;
  double s = 1.0;
  for (int m = 1; m <= n; ++m) {
    term *= static_cast<double>(n + m) * static_cast<double>(n - m + 1) / (2.0 * m * x);
    s += term;
  }
  return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) * s;
}

}  // namespace lqnet
