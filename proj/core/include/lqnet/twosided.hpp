#pragma once

#include <complex>
#include <vector>

#include "lqnet/catalan.hpp"
#include "lqnet/params.hpp"

namespace lqnet {

// Stationary two-sided coefficients phi^j, j = -K..K.
struct TwoSidedStationary {
  std::vector<double> values;  // values[j + K]
  int truncation = 0;
  double epsilon = 1.0;
  double w = 0.5;
  double v = 0.5;
  double B = 1.0;
  Provenance provenance = Provenance::ClosedForm;

  double operator[](int j) const { return values[j + truncation]; }
  double sum_residual() const;
  std::complex<double> series_sum(std::complex<double> z) const;
};

TwoSidedStationary stationary_twosided_coeffs(const TwoSidedParams& params, int K);

// sqrt(epsilon*B) * sqrt(1 - w z - v/z), principal branch.
std::complex<double> twosided_symbol(double epsilon, double B, double w, double v, std::complex<double> z);

// Gauss hypergeometric 2F1(a,b;c;z) for -1 < z <= 1.
double hyp2f1(double a, double b, double c, double z);

enum class Parity { Even, Odd };

// Weight of exp(tQ) at offset 2m (Even) or 2m+1 (Odd) for the deterministic
// two-sided chain with right weight p.
double twosided_kernel_weight(int m, Parity parity, double t, double p);
double twosided_kernel_weight(int offset, double t, double p);

}  // namespace lqnet
