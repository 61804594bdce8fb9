#include "lqnet/twosided.hpp"

#include <algorithm>
#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <limits>

#include "lqnet/errors.hpp"

namespace lqnet {

namespace {

constexpr double kSeriesTol = 1e-15;

bool nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double gamma_sign(double x) {
  if (x > 0.0) return 1.0;
  return static_cast<long long>(std::floor(x)) % 2 == 0 ? 1.0 : -1.0;
}

double series_2f1(double a, double b, double c, double z, int max_terms = 200000) {
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < max_terms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) <= kSeriesTol * std::abs(sum) && n > 4) return sum;
  }
  throw AccuracyError("hypergeometric series did not converge", 0.0);
}

// c = a + b + m with m a positive integer, |1 - z| small (logarithmic case).
double log_case_2f1(double a, double b, int m, double z) {
  using boost::math::digamma;
  const double c = a + b + m;
  const double w = 1.0 - z;
  double finite = 0.0;
  {
    double term = 1.0;
    for (int n = 0; n < m; ++n) {
      finite += term;
      term *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n)) * w;
    }
    finite *= std::tgamma(m) * std::tgamma(c) / (std::tgamma(a + m) * std::tgamma(b + m));
  }
  const double pre = std::pow(z - 1.0, m) * std::tgamma(c) / (std::tgamma(a) * std::tgamma(b));
  const double lw = std::log(w);
  double sum = 0.0;
  double coef = 1.0 / std::tgamma(m + 1.0);  // (a+m)_n (b+m)_n / (n! (n+m)!) w^n
  for (int n = 0; n < 10000; ++n) {
    const double bracket = lw - digamma(n + 1.0) - digamma(n + m + 1.0) + digamma(a + n + m) +
                           digamma(b + n + m);
    const double term = coef * bracket;
    sum += term;
    if (std::abs(term) <= kSeriesTol * std::abs(sum) && n > 2) break;
    coef *= (a + m + n) * (b + m + n) / ((n + 1.0) * (n + m + 1.0)) * w;
  }
  return finite - pre * sum;
}

// Connection to 1 - z when c - a - b is not an integer.
double reflected_2f1(double a, double b, double c, double z) {
  const double w = 1.0 - z;
  const double s = c - a - b;
  const double t1 = std::tgamma(c) * std::tgamma(s) / (std::tgamma(c - a) * std::tgamma(c - b)) *
                    series_2f1(a, b, 1.0 - s, w);
  const double t2 = std::pow(w, s) * std::tgamma(c) * std::tgamma(-s) / (std::tgamma(a) * std::tgamma(b)) *
                    series_2f1(c - a, c - b, s + 1.0, w);
  return t1 + t2;
}

}  // namespace

double hyp2f1(double a, double b, double c, double z) {
  if (nonpositive_integer(c)) throw DomainError("2F1 undefined for c a nonpositive integer");
  if (!(z > -1.0 && z <= 1.0)) throw DomainError("2F1 argument must lie in (-1, 1]");
  if (z == 0.0 || a == 0.0 || b == 0.0) return 1.0;
  const bool polynomial = nonpositive_integer(a) || nonpositive_integer(b);
  if (polynomial) return series_2f1(a, b, c, z);
  const double s = c - a - b;
  if (z == 1.0) {
    if (!(s > 0.0)) throw DomainError("2F1 diverges at z=1 unless c-a-b > 0");
    return gamma_sign(c) * gamma_sign(s) * gamma_sign(c - a) * gamma_sign(c - b) *
           std::exp(std::lgamma(c) + std::lgamma(s) - std::lgamma(c - a) - std::lgamma(c - b));
  }
  if (z <= 0.9) return series_2f1(a, b, c, z);
  const double m = std::round(s);
  if (std::abs(s - m) < 1e-14) {
    if (m >= 1.0) return log_case_2f1(a, b, static_cast<int>(m), z);
    return series_2f1(a, b, c, z);  // slow but convergent only for s > 0; throws otherwise
  }
  return reflected_2f1(a, b, c, z);
}

double TwoSidedStationary::sum_residual() const {
  double s = 0.0;
  for (double v : values) s += v;
  return std::abs(s);
}

std::complex<double> TwoSidedStationary::series_sum(std::complex<double> z) const {
  std::complex<double> s = 0.0;
  for (int j = -truncation; j <= truncation; ++j) s += std::pow(z, j) * (*this)[j];
  return s;
}

std::complex<double> twosided_symbol(double epsilon, double B, double w, double v, std::complex<double> z) {
  return std::sqrt(epsilon * B) * std::sqrt(1.0 - w * z - v / z);
}

TwoSidedStationary stationary_twosided_coeffs(const TwoSidedParams& params, int K) {
  params.validate();
  if (K < 2) throw ValidationError("K must be at least 2");
  TwoSidedStationary out;
  out.truncation = K;
  out.epsilon = params.epsilon;
  out.B = params.B();
  out.w = params.w();
  out.v = params.v();
  double x = 4.0 * out.w * out.v;
  if (x > 1.0 + 1e-14) throw DomainError("w*v exceeds 1/4");
  x = std::min(x, 1.0);

  const double scale = std::sqrt(params.epsilon * out.B);
  out.values.assign(static_cast<std::size_t>(2 * K + 1), 0.0);
  // b_j = (-1)^j C(1/2, j) by its ratio recurrence.
  double bj = 1.0;
  for (int j = 0; j <= K; ++j) {
    const double F = hyp2f1(0.5 * j - 0.25, 0.5 * j + 0.25, j + 1.0, x);
    const double common = scale * bj * F;
    out.values[K + j] = common * std::pow(out.w, j);
    if (j > 0) out.values[K - j] = common * std::pow(out.v, j);
    bj *= (j - 0.5) / (j + 1.0);
  }
  return out;
}

namespace {

// sum_k g_k(t) P(S_k = d) for a +-1 walk with right probability p, summed until
// the geometric tail is negligible.
double walk_sum_direct(int d, double t, double p, int max_terms) {
  const int ad = std::abs(d);
  const auto g = kernel_row(max_terms + 2, t, 1.0);
  const double q = 1.0 - p;
  double P = d >= 0 ? std::pow(p, ad) : std::pow(q, ad);
  double sum = 0.0;
  for (int k = ad; k <= max_terms; k += 2) {
    sum += g[k] * P;
    const int a = (k + d) / 2;  // right steps
    P *= (k + 2.0) * (k + 1.0) / ((a + 1.0) * (k - a + 1.0)) * p * q;
  }
  return sum;
}

}  // namespace

double twosided_kernel_weight(int offset, double t, double p) {
  if (!(t >= 0.0)) throw ValidationError("t must be nonnegative");
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p must lie in [0,1]");
  if (t == 0.0) return offset == 0 ? 1.0 : 0.0;
  if (p == 1.0) return offset >= 0 ? kernel_entry(0, offset, t, 1.0) : 0.0;
  if (p == 0.0) return offset <= 0 ? kernel_entry(0, -offset, t, 1.0) : 0.0;

  const double r = 2.0 * std::sqrt(p * (1.0 - p));  // per-step decay of the walk law
  const int ad = std::abs(offset);
  const int base = 64 + ad + static_cast<int>(std::ceil(8.0 * t * t));
  if (r < 0.999) {
    // Terms fall like r^k; stop once r^k is below 1e-18 relative to the leading mass.
    const int L = base + static_cast<int>(std::ceil(std::log(1e-18) / std::log(r)));
    return walk_sum_direct(offset, t, p, L);
  }
  // Near p = 1/2 the terms decay like k^{-2}. Partial sums at L, 2L, 4L, 8L have
  // a tail expansion in integer powers of 1/L; eliminate the first three.
  // The walk needs about d^2 steps to reach offset d, so L must sit well past that.
  int L = 1024;
  while (L < 64 * (ad * ad + static_cast<int>(std::ceil(t * t)) + 16)) L *= 2;
  double S[4];
  for (int i = 0; i < 4; ++i) S[i] = walk_sum_direct(offset, t, p, (L << i) + (ad % 2));
  double R[4] = {S[0], S[1], S[2], S[3]};
  for (int level = 1; level < 4; ++level) {
    const double f = std::ldexp(1.0, level);
    for (int i = 3; i >= level; --i) R[i] = (f * R[i] - R[i - 1]) / (f - 1.0);
  }
  return R[3];
}

double twosided_kernel_weight(int m, Parity parity, double t, double p) {
  return twosided_kernel_weight(parity == Parity::Even ? 2 * m : 2 * m + 1, t, p);
}

}  // namespace lqnet
