#include "lqnet/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "lqnet/errors.hpp"

namespace lqnet {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMat> view(const DenseMatrix& m) { return {m.data.data(), m.dim, m.dim}; }
Eigen::Map<RowMat> view(DenseMatrix& m) { return {m.data.data(), m.dim, m.dim}; }

// Entries below 1e-250 are dropped so that products never run on subnormals.
const auto flush_tiny = [](double x) { return std::abs(x) < 1e-250 ? 0.0 : x; };

// Plain RK4, halving the step until the grid values stop moving by more than 1e-12.
template <class Rhs>
std::vector<double> reference_backward(Rhs rhs, const std::vector<double>& terminal, double horizon,
                                       int steps) {
  const std::size_t dim = terminal.size();
  const std::size_t cols = static_cast<std::size_t>(steps) + 1;
  auto run = [&](int sub) {
    std::vector<double> out(dim * cols);
    std::vector<double> y = terminal, a(dim), b(dim), c(dim), d(dim), tmp(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i * cols + steps] = y[i];
    const double h = horizon / (static_cast<double>(steps) * sub);
    for (long s = static_cast<long>(steps) * sub; s > 0; --s) {
      rhs(y, a);
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] - 0.5 * h * a[i];
      rhs(tmp, b);
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] - 0.5 * h * b[i];
      rhs(tmp, c);
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] - h * c[i];
      rhs(tmp, d);
      for (std::size_t i = 0; i < dim; ++i) y[i] -= h * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]) / 6.0;
      if ((s - 1) % sub == 0) {
        const std::size_t n = static_cast<std::size_t>((s - 1) / sub);
        for (std::size_t i = 0; i < dim; ++i) out[i * cols + n] = y[i];
      }
    }
    return out;
  };
  int sub = 2;
  auto prev = run(sub);
  while (true) {
    sub *= 2;
    auto cur = run(sub);
    double diff = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (!std::isfinite(cur[i])) throw IntegrationError("reference integration blew up", 0.0);
      diff = std::max(diff, std::abs(cur[i] - prev[i]));
    }
    if (diff <= 1e-12) return cur;
    if (sub >= (1 << 16)) throw AccuracyError("reference integration did not settle", diff);
    prev = std::move(cur);
  }
}

}  // namespace

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::toeplitz(int n, std::span<const double> coeffs, int min_offset) {
  DenseMatrix m(n);
  const int max_offset = min_offset + static_cast<int>(coeffs.size()) - 1;
  for (int i = 0; i < n; ++i)
    for (int d = min_offset; d <= max_offset; ++d) {
      const int j = i + d;
      if (j >= 0 && j < n) m(i, j) = coeffs[d - min_offset];
    }
  return m;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.dim != b.dim) throw ValidationError("dimension mismatch");
  DenseMatrix out(a.dim);
  view(out).noalias() = view(a) * view(b);
  return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.dim != b.dim) throw ValidationError("dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

DenseMatrix dense_expm(const DenseMatrix& a, double t) {
  if (a.dim < 1 || a.dim > 1024) throw ResourceError("dense_expm supports dimension 1..1024");
  for (double x : a.data)
    if (!std::isfinite(x)) throw ValidationError("matrix has non-finite entries");
  const int n = a.dim;
  RowMat B = t * view(a);
  const double norm = B.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  if (squarings > 60) throw ResourceError("matrix norm too large for the squaring budget");
  B /= std::ldexp(1.0, squarings);

  RowMat E = RowMat::Identity(n, n);
  RowMat term = RowMat::Identity(n, n);
  RowMat next(n, n);
  for (int k = 1; k <= 40; ++k) {
    next.noalias() = term * B;
    term = (next / static_cast<double>(k)).unaryExpr(flush_tiny);
    E += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * E.cwiseAbs().maxCoeff()) break;
  }
  for (int s = 0; s < squarings; ++s) {
    next.noalias() = E * E;
    E = next.unaryExpr(flush_tiny);
  }
  DenseMatrix out(n);
  view(out) = E;
  return out;
}

CauchyResult cauchy_coeffs(const std::function<std::complex<double>(std::complex<double>)>& f, int K,
                           double r, double tol, int max_nodes) {
  if (K < 0) throw ValidationError("K must be nonnegative");
  if (!(r > 0.0)) throw ValidationError("radius must be positive");
  using cplx = std::complex<double>;
  auto extract = [&](int n) {
    std::vector<cplx> c(static_cast<std::size_t>(2 * K + 1), 0.0);
    std::vector<double> acc_re(c.size(), 0.0), acc_im(c.size(), 0.0);
    for (int m = 0; m < n; ++m) {
      const double theta = 2.0 * std::numbers::pi * m / n;
      const cplx z = std::polar(r, theta);
      const cplx fz = f(z);
      if (!std::isfinite(fz.real()) || !std::isfinite(fz.imag()))
        throw DomainError("function is not finite on the contour");
      // fz * z^{-j} for j = -K..K by repeated multiplication from z^{K}, in real arithmetic.
      const double sr = std::cos(theta) / r, si = -std::sin(theta) / r;
      const double rk = std::pow(r, K);
      double zr = rk * std::cos(K * theta), zi = rk * std::sin(K * theta);
      const double fr = fz.real(), fi = fz.imag();
      for (int j = 0; j <= 2 * K; ++j) {
        acc_re[j] += fr * zr - fi * zi;
        acc_im[j] += fr * zi + fi * zr;
        const double nr = zr * sr - zi * si;
        zi = zr * si + zi * sr;
        zr = nr;
      }
    }
    for (int j = 0; j <= 2 * K; ++j) c[j] = {acc_re[j], acc_im[j]};
    for (auto& v : c) v /= static_cast<double>(n);
    return c;
  };
  int n = 64;
  while (n < 8 * K) n *= 2;
  auto prev = extract(n);
  while (true) {
    n *= 2;
    auto cur = extract(n);
    double change = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) change = std::max(change, std::abs(cur[i] - prev[i]));
    if (change <= tol) return {std::move(cur), K, r, n, change};
    if (n >= max_nodes) throw AccuracyError("contour coefficients did not stabilise", change);
    prev = std::move(cur);
  }
}

double default_contour_radius(double w, double v) {
  if (v == 0.0) return 0.5;
  if (w == 0.0) return 2.0;
  if (v == w) return 1.0;
  return std::sqrt(v / w);
}

Derivative finite_difference(const std::function<double(double)>& f, double x) {
  auto central = [&](double h) {
    const double hi = f(x + h), lo = f(x - h);
    if (!std::isfinite(hi) || !std::isfinite(lo)) throw DomainError("non-finite function value");
    return (hi - lo) / (2.0 * h);
  };
  const double d1 = central(1e-3), d2 = central(5e-4), d3 = central(2.5e-4);
  const double r1 = (4.0 * d2 - d1) / 3.0;
  const double r2 = (4.0 * d3 - d2) / 3.0;
  const double best = (16.0 * r2 - r1) / 15.0;
  return {best, std::abs(best - r2)};
}

BruteForceTree brute_force_tree(const TreeParams& params, int G, int steps) {
  params.validate();
  if (G < 1) throw ValidationError("G must be at least 1");
  if (steps < 2) throw ValidationError("steps must be at least 2");
  const int M = params.M;
  std::vector<long> width(static_cast<std::size_t>(G));
  long nodes = 0;
  for (int g = 0; g < G; ++g) {
    width[g] = g == 0 ? 1 : width[g - 1] * M;
    nodes += width[g];
    if (nodes > 10000) throw ResourceError("tree has more than 1e4 nodes");
  }

  BruteForceTree out;
  out.M = M;
  out.G = G;
  std::unordered_map<long long, int> index;
  auto key = [&](int ag, long ak, int g, long k) {
    return ((static_cast<long long>(ag) * 64 + g) << 40) ^ (ak << 20) ^ k;
  };
  for (int ag = 0; ag < G; ++ag)
    for (long ak = 0; ak < width[ag]; ++ak)
      for (int g = ag; g < G; ++g) {
        long span = 1;
        for (int i = ag; i < g; ++i) span *= M;
        for (long k = ak * span; k < (ak + 1) * span; ++k) {
          index[key(ag, ak, g, k)] = static_cast<int>(out.pairs.size());
          out.pairs.push_back({ag, static_cast<int>(ak), g, static_cast<int>(k)});
        }
      }

  // Product list for each pair: sum over intermediate generations i of
  // phi^{a; anc_i(b)} phi^{anc_i(b); b}, anc_i(b) = floor(k / M^{g-i}).
  std::vector<std::vector<std::pair<int, int>>> terms(out.pairs.size());
  for (std::size_t idx = 0; idx < out.pairs.size(); ++idx) {
    const auto& pr = out.pairs[idx];
    for (int i = pr.ancestor_gen; i <= pr.gen; ++i) {
      long div = 1;
      for (int s = i; s < pr.gen; ++s) div *= M;
      const long mid = pr.k / div;
      terms[idx].emplace_back(index.at(key(pr.ancestor_gen, pr.ancestor_k, i, mid)),
                              index.at(key(i, mid, pr.gen, pr.k)));
    }
  }

  const double q = 1.0 - params.p0();
  std::vector<double> terminal(out.pairs.size(), 0.0);
  for (std::size_t idx = 0; idx < out.pairs.size(); ++idx) {
    const int d = out.pairs[idx].depth();
    if (d == 0) terminal[idx] = params.c * q;
    if (d == 1) terminal[idx] = -params.c * q / M;
  }
  auto rhs = [&](const std::vector<double>& y, std::vector<double>& dy) {
    for (std::size_t idx = 0; idx < y.size(); ++idx) {
      double s = 0.0;
      for (const auto& [u, w] : terms[idx]) s += y[u] * y[w];
      const int d = out.pairs[idx].depth();
      if (d == 0) s -= params.epsilon * q;
      if (d == 1) s += params.epsilon * q / M;
      dy[idx] = s;
    }
  };
  out.values = reference_backward(rhs, terminal, params.horizon, steps);
  out.grid.resize(static_cast<std::size_t>(steps) + 1);
  for (int n = 0; n <= steps; ++n) out.grid[n] = params.horizon * n / steps;
  return out;
}

std::vector<double> deterministic_tree_system(int M, double epsilon, double c, double horizon, int D,
                                              int steps) {
  if (M < 1 || D < 1 || steps < 2) throw ValidationError("need M >= 1, D >= 1, steps >= 2");
  const std::size_t dim = static_cast<std::size_t>(D) + 1;
  std::vector<double> terminal(dim, 0.0);
  terminal[0] = c;
  terminal[1] = -c / M;
  auto rhs = [&](const std::vector<double>& y, std::vector<double>& dy) {
    for (std::size_t m = 0; m < dim; ++m) {
      double s = 0.0;
      for (std::size_t i = 0; i <= m; ++i) s += y[i] * y[m - i];
      dy[m] = s;
    }
    dy[0] -= epsilon;
    dy[1] += epsilon / M;
  };
  return reference_backward(rhs, terminal, horizon, steps);
}

}  // namespace lqnet
