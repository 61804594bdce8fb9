#pragma once

#include <string_view>
#include <vector>

namespace lqnet {

struct RiccatiSolution;

enum class Provenance { ClosedForm, OdeLimit, CauchyOracle };
std::string_view to_string(Provenance p);

// Stationary one-sided coefficients phi^0..phi^K.
struct StationaryCoefficients {
  std::vector<double> values;
  double scale = 0.0;  // sqrt(p * epsilon)
  Provenance provenance = Provenance::ClosedForm;
  int truncation = 0;

  double operator[](int k) const { return values[k]; }
  // |sum_{k<=K} phi^k|, the truncated sum-zero residual.
  double sum_residual() const;
  // max over 2 <= n <= K of |sum_{k=0}^n phi^k phi^{n-k}|.
  double convolution_residual() const;
};

StationaryCoefficients stationary_chain_coeffs(double p, double epsilon, int K);
// Coefficients read off a long-horizon Riccati solve at grid point n.
StationaryCoefficients stationary_from_riccati(const RiccatiSolution& sol, double p, double epsilon,
                                               std::size_t n = 0);

// Row q_0..q_K of the Catalan generator (upper-triangular Toeplitz).
struct GeneratorMatrix {
  std::vector<double> row;
  int dimension() const { return static_cast<int>(row.size()); }
  double row_sum() const;
};

GeneratorMatrix catalan_generator(double p, int K);

// rho_k(x) for x < 0.
double rho(int k, double x);

// Transition probability p_ij(t) of the Catalan chain run at speed sqrt(p).
double kernel_entry(int i, int j, double t, double p);
// p_{0,k}(t) for k = 0..n by the three-term recurrence of the entries.
std::vector<double> kernel_row(int n, double t, double p);

struct TransitionKernel {
  double p = 1.0;
  double t = 0.0;
  int window = 0;
  std::vector<double> row;  // p_{i,i+k}(t), k < window

  double operator()(int i, int j) const;
  double row_sum() const;
};

TransitionKernel make_transition_kernel(double p, double t, int window);

struct VarianceResult {
  double value = 0.0;
  double achieved = 0.0;  // relative change at the last panel doubling
  int panels = 0;
};

// Var(X_t) for sigma = 1 by composite Gauss-Legendre quadrature.
VarianceResult variance_chain(double t, double p, double rel_tol = 1e-6);
double asymptotic_variance_chain(double p);

// K_{n+1/2}(x) from the finite-sum representation.
double bessel_k_half(int n, double x);

}  // namespace lqnet
