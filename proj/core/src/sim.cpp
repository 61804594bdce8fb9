#include "lqnet/sim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <set>
#include <thread>

#include "lqnet/errors.hpp"
#include "lqnet/rng.hpp"

namespace lqnet {

namespace {

constexpr double kDivergence = 1e100;

constexpr int kBlock = 128;

struct Common {
  double sigma, horizon;
};

Common common_of(const ModelParams& params) {
  return std::visit(
      [](const auto& p) {
        p.validate();
        return Common{p.sigma, p.horizon};
      },
      params);
}

long tree_nodes(int M, int G) {
  long total = 0, width = 1;
  for (int g = 0; g < G; ++g) {
    total += width;
    width *= M;
    if (total > 100000) throw ResourceError("tree too large to simulate");
  }
  return total;
}

int tree_generation(int M, long id, long* index_in_gen) {
  long width = 1;
  int g = 0;
  while (id >= width) {
    id -= width;
    width *= M;
    ++g;
  }
  if (index_in_gen) *index_in_gen = id;
  return g;
}

// Coefficients at time t over offsets [lo, hi], plus the model geometry.
class DriftModel {
 public:
  DriftModel(const SimConfig& cfg, const ModelParams& params, const StrategySource& strategy) : cfg_(cfg) {
    if (cfg.model == ModelKind::Tree) {
      if (!std::holds_alternative<TreeParams>(params)) throw ValidationError("tree model needs TreeParams");
      if (!std::holds_alternative<TreeRiccatiSolution>(strategy))
        throw ValidationError("tree model needs a TreeRiccatiSolution");
      M_ = std::get<TreeParams>(params).M;
      if (cfg.generations < 1) throw ValidationError("generations must be at least 1");
      n_ = static_cast<int>(tree_nodes(M_, cfg.generations));
      tree_ = &std::get<TreeRiccatiSolution>(strategy);
      if (tree_->M != M_) throw ValidationError("tree solution has a different branching factor");
      if (tree_->depth < cfg.generations - 1)
        throw TruncationError("tree solution depth does not cover the simulated generations");
      lo_ = 0;
      hi_ = cfg.generations - 1;
      time_dependent_ = true;
      label_ = "tree-riccati";
      return;
    }
    n_ = cfg.players;
    if (n_ < 2) throw ValidationError("need at least 2 players");
    const bool chain = cfg.model == ModelKind::Chain;
    if (chain != std::holds_alternative<ChainParams>(params))
      throw ValidationError("model kind does not match the parameter type");
    int avail_lo = 0, avail_hi = 0;
    if (const auto* r = std::get_if<RiccatiSolution>(&strategy)) {
      if ((r->min_index == 0) != chain) throw ValidationError("Riccati solution does not match the model");
      riccati_ = r;
      avail_lo = r->min_index;
      avail_hi = r->max_index;
      time_dependent_ = true;
      label_ = chain ? "chain-riccati" : "twosided-riccati";
    } else if (const auto* s = std::get_if<StationaryCoefficients>(&strategy)) {
      if (!chain) throw ValidationError("one-sided coefficients given for a two-sided model");
      fixed_ = s->values;
      avail_hi = static_cast<int>(s->values.size()) - 1;
      label_ = std::string("chain-stationary/") + std::string(to_string(s->provenance));
    } else if (const auto* s2 = std::get_if<TwoSidedStationary>(&strategy)) {
      if (chain) throw ValidationError("two-sided coefficients given for a one-sided model");
      fixed_ = s2->values;
      avail_lo = -s2->truncation;
      avail_hi = s2->truncation;
      label_ = std::string("twosided-stationary/") + std::string(to_string(s2->provenance));
    } else {
      throw ValidationError("tree coefficients given for a chain model");
    }
    const bool periodic = cfg.boundary == BoundaryPolicy::Periodic;
    const int limit = chain ? n_ - 1 : (n_ - 1) / 2;
    int K = cfg.truncation;
    if (K < 0) K = periodic ? std::min(avail_hi, limit) : avail_hi;
    if (K > avail_hi) throw ValidationError("coefficients do not cover the requested truncation");
    if (periodic && K > limit)
      throw ValidationError("periodic closure needs distinct wrapped offsets (N >= K+1 one-sided, N >= 2K+1 two-sided)");
    avail_lo_ = avail_lo;
    lo_ = chain ? 0 : -K;
    hi_ = K;
  }

  int size() const { return n_; }
  int truncation() const { return hi_; }
  bool time_dependent() const { return time_dependent_; }
  const std::string& label() const { return label_; }

  template <class Mat>
  void build(double t, Mat& A) const {
    A.setZero(n_, n_);
    if (tree_) {
      std::vector<double> psi(static_cast<std::size_t>(tree_->depth) + 1);
      tree_->slice(t, psi);
      long first = 0, width = 1;
      for (int g = 0; g < cfg_.generations; ++g) {
        for (long k = 0; k < width; ++k) {
          const long node = first + k;
          long dfirst = first, dwidth = width, dk = k, count = 1;
          for (int m = 0; g + m < cfg_.generations; ++m) {
            for (long j = 0; j < count; ++j) A(node, dfirst + dk + j) = psi[m];
            dfirst += dwidth;
            dwidth *= M_;
            dk *= M_;
            count *= M_;
          }
        }
        first += width;
        width *= M_;
      }
      return;
    }
    std::vector<double> coeff(static_cast<std::size_t>(hi_ - lo_ + 1));
    if (riccati_) {
      std::vector<double> all(static_cast<std::size_t>(riccati_->max_index - riccati_->min_index + 1));
      riccati_->slice(t, all);
      for (int j = lo_; j <= hi_; ++j) coeff[j - lo_] = all[j - riccati_->min_index];
    } else {
      for (int j = lo_; j <= hi_; ++j) coeff[j - lo_] = fixed_[j - avail_lo_];
    }
    const bool periodic = cfg_.boundary == BoundaryPolicy::Periodic;
    for (int i = 0; i < n_; ++i)
      for (int j = lo_; j <= hi_; ++j) {
        int col = i + j;
        if (periodic) {
          col %= n_;
          if (col < 0) col += n_;
        } else if (col < 0 || col >= n_) {
          continue;
        }
        A(i, col) += coeff[j - lo_];
      }
  }

 private:
  const SimConfig& cfg_;
  int n_ = 0, M_ = 1;
  int lo_ = 0, hi_ = 0, avail_lo_ = 0;
  bool time_dependent_ = false;
  const RiccatiSolution* riccati_ = nullptr;
  const TreeRiccatiSolution* tree_ = nullptr;
  std::vector<double> fixed_;
  std::string label_;
};

int steps_for(double horizon, double dt) {
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  if (dt > horizon / 10.0 * (1.0 + 1e-12)) throw ValidationError("dt must not exceed T/10");
  const double r = horizon / dt;
  const double n = std::round(r);
  if (std::abs(r - n) > 1e-9 * n) throw ValidationError("T must be an integer multiple of dt");
  return static_cast<int>(n);
}

}  // namespace

std::string_view to_string(ModelKind m) {
  switch (m) {
    case ModelKind::Chain: return "chain";
    case ModelKind::TwoSided: return "twosided";
    case ModelKind::Tree: return "tree";
  }
  return "unknown";
}

std::string_view to_string(BoundaryPolicy b) {
  return b == BoundaryPolicy::Periodic ? "periodic" : "zero-tail";
}

std::string_view to_string(DeviationStatus s) {
  switch (s) {
    case DeviationStatus::Positive: return "positive";
    case DeviationStatus::Negative: return "negative";
    case DeviationStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

int PathEnsemble::slot_of(int player) const {
  auto it = std::find(players.begin(), players.end(), player);
  return it == players.end() ? -1 : static_cast<int>(it - players.begin());
}

PathEnsemble simulate(const SimConfig& config, const ModelParams& params, const StrategySource& strategy) {
  const Common cm = common_of(params);
  if (config.paths < 1) throw ValidationError("paths must be at least 1");
  if (config.workers < 1) throw ValidationError("workers must be at least 1");
  if (config.record_every < 0) throw ValidationError("record_every must be nonnegative");
  if (!std::isfinite(config.initial_state)) throw ValidationError("initial state must be finite");
  const int steps = steps_for(cm.horizon, config.dt);
  const DriftModel model(config, params, strategy);
  const int n = model.size();

  PathEnsemble ens;
  ens.config = config;
  ens.horizon = cm.horizon;
  ens.sigma = cm.sigma;
  ens.steps = steps;
  ens.truncation = model.truncation();
  ens.strategy = model.label();
  ens.rng_id = kRngId;
  if (config.tracked.empty()) {
    for (int i = 0; i < n; ++i) ens.players.push_back(i);
  } else {
    for (int i : config.tracked) {
      if (i < 0 || i >= n) throw ValidationError("tracked player out of range");
      ens.players.push_back(i);
    }
  }
  std::vector<int> record_step;
  for (int s = 0; s <= steps; ++s)
    if (s == 0 || s == steps || (config.record_every > 0 && s % config.record_every == 0)) {
      record_step.push_back(s);
      ens.times.push_back(cm.horizon * s / steps);
    }
  const std::size_t slots = ens.players.size();
  const std::size_t R = ens.times.size();
  ens.states.assign(static_cast<std::size_t>(config.paths) * slots * R, 0.0);
  ens.controls.assign(ens.states.size(), 0.0);
  if (config.retain_increments) ens.increments.assign(static_cast<std::size_t>(config.paths) * slots * steps, 0.0);

  using Mat = Eigen::MatrixXd;
  Mat A_fixed;
  if (!model.time_dependent()) model.build(0.0, A_fixed);

  const double sqdt = std::sqrt(config.dt);
  const double noise = cm.sigma * sqdt;
  const int blocks = (config.paths + kBlock - 1) / kBlock;

  std::mutex fail_mu;
  long fail_path = -1;
  double fail_time = 0.0;

  auto run_block = [&](int block) {
    const int p0 = block * kBlock;
    const int B = std::min(kBlock, config.paths - p0);
    Mat X = Mat::Constant(n, B, config.initial_state);
    Mat AX(n, B), Z(n, B), A;
    boost::random::normal_distribution<double> normal;
    std::size_t r = 0;
    for (int s = 0; s <= steps; ++s) {
      const double t = cm.horizon * s / steps;
      const Mat* Ap = &A_fixed;
      if (model.time_dependent()) {
        model.build(t, A);
        Ap = &A;
      }
      AX.noalias() = (*Ap) * X;
      if (r < R && record_step[r] == s) {
        for (int b = 0; b < B; ++b)
          for (std::size_t sl = 0; sl < slots; ++sl) {
            const std::size_t at = ((static_cast<std::size_t>(p0 + b)) * slots + sl) * R + r;
            ens.states[at] = X(ens.players[sl], b);
            ens.controls[at] = -AX(ens.players[sl], b);
          }
        ++r;
      }
      // Explicit Euler blow-up shows up as overflow long before it turns into inf.
      const auto bounded = [](const auto& v) { return (v.array().abs() < kDivergence).all(); };
      if ((s % 64 == 0 || s == steps) && !bounded(X)) {
        for (int b = 0; b < B; ++b)
          if (!bounded(X.col(b))) {
            std::lock_guard lock(fail_mu);
            if (fail_path < 0 || p0 + b < fail_path) {
              fail_path = p0 + b;
              fail_time = t;
            }
            return;
          }
      }
      if (s == steps) break;
      for (int b = 0; b < B; ++b) {
        auto eng = row_stream(config.seed, static_cast<std::uint64_t>(p0 + b), static_cast<std::uint64_t>(s));
        double* col = Z.col(b).data();
        for (int i = 0; i < n; ++i) col[i] = normal(eng);
      }
      if (config.retain_increments)
        for (int b = 0; b < B; ++b)
          for (std::size_t sl = 0; sl < slots; ++sl)
            ens.increments[((static_cast<std::size_t>(p0 + b)) * slots + sl) * steps + s] =
                sqdt * Z(ens.players[sl], b);
      X = X - config.dt * AX + noise * Z;
    }
  };

  if (config.workers == 1 || blocks == 1) {
    for (int b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    const int w = std::min(config.workers, blocks);
    for (int k = 0; k < w; ++k)
      pool.emplace_back([&, k] {
        for (int b = k; b < blocks; b += w) run_block(b);
      });
    for (auto& th : pool) th.join();
  }
  if (fail_path >= 0) throw SimulationError("state diverged", fail_path, fail_time);
  return ens;
}

Estimate sample_variance(const PathEnsemble& ens, int player, std::size_t r) {
  const int sl = ens.slot_of(player);
  if (sl < 0) throw ValidationError("player is not tracked");
  if (r >= ens.times.size()) throw ValidationError("time index out of range");
  const int P = ens.config.paths;
  if (P < 2) throw ValidationError("variance needs at least 2 paths");
  double mean = 0.0;
  for (int p = 0; p < P; ++p) mean += ens.x(p, sl, r);
  mean /= P;
  double m2 = 0.0, m4 = 0.0;
  for (int p = 0; p < P; ++p) {
    const double d = ens.x(p, sl, r) - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  const double var = m2 / (P - 1);
  const double mu2 = m2 / P, mu4 = m4 / P;
  return {var, std::sqrt(std::max(0.0, mu4 - mu2 * mu2) / P)};
}

namespace {

struct Neighbour {
  int slot;
  double weight;
};

struct CostLayout {
  int self = -1;
  std::vector<Neighbour> neighbours;  // chain and two-sided: weighted squared distance
  std::vector<int> children;          // tree: subset expectation over children
  double tree_p = 1.0;
  double epsilon = 0.0, c = 0.0;
};

CostLayout cost_layout(const PathEnsemble& ens, const ModelParams& params, int player) {
  CostLayout L;
  L.self = ens.slot_of(player);
  if (L.self < 0) throw ValidationError("player is not tracked");
  const auto& cfg = ens.config;
  auto need = [&](int who) {
    const int s = ens.slot_of(who);
    if (s < 0) throw ValidationError("cost neighbour " + std::to_string(who) + " is not tracked");
    return s;
  };
  auto wrap = [&](int j) -> int {
    if (cfg.boundary == BoundaryPolicy::Periodic) return ((j % cfg.players) + cfg.players) % cfg.players;
    return (j < 0 || j >= cfg.players) ? -1 : j;
  };
  if (const auto* cp = std::get_if<ChainParams>(&params)) {
    L.epsilon = cp->epsilon;
    L.c = cp->c;
    if (const int r = wrap(player + 1); r >= 0) L.neighbours.push_back({need(r), cp->p});
  } else if (const auto* tp = std::get_if<TwoSidedParams>(&params)) {
    L.epsilon = tp->epsilon;
    L.c = tp->c;
    if (const int r = wrap(player + 1); r >= 0) L.neighbours.push_back({need(r), tp->p * tp->p1});
    if (const int l = wrap(player - 1); l >= 0) L.neighbours.push_back({need(l), (1.0 - tp->p) * tp->q1});
  } else {
    const auto& tr = std::get<TreeParams>(params);
    L.epsilon = tr.epsilon;
    L.c = tr.c;
    L.tree_p = tr.p;
    long k = 0;
    const int g = tree_generation(tr.M, player, &k);
    if (g + 1 < cfg.generations) {
      const long first = static_cast<long>(TreeStates::offset(tr.M, g + 1)) + k * tr.M;
      for (int j = 0; j < tr.M; ++j) L.children.push_back(need(static_cast<int>(first + j)));
    }
  }
  return L;
}

// Per-path cost along the recorded grid. own_x / own_a replace the tracked player's path.
double path_cost(const PathEnsemble& ens, const CostLayout& L, int path, const std::vector<double>& own_x,
                 const std::vector<double>& own_a) {
  const std::size_t R = ens.times.size();
  std::vector<double> kids(L.children.size());
  auto penalty = [&](std::size_t r) {
    const double xi = own_x[r];
    if (!L.children.empty()) {
      for (std::size_t j = 0; j < kids.size(); ++j) kids[j] = ens.x(path, L.children[j], r);
      return subset_quadratic_expectation(kids, xi, L.tree_p);
    }
    double s = 0.0;
    for (const auto& nb : L.neighbours) {
      const double d = ens.x(path, nb.slot, r) - xi;
      s += nb.weight * d * d;
    }
    return s;
  };
  double total = 0.0;
  double prev = 0.5 * own_a[0] * own_a[0] + 0.5 * L.epsilon * penalty(0);
  for (std::size_t r = 1; r < R; ++r) {
    const double cur = 0.5 * own_a[r] * own_a[r] + 0.5 * L.epsilon * penalty(r);
    total += 0.5 * (ens.times[r] - ens.times[r - 1]) * (prev + cur);
    prev = cur;
  }
  return total + 0.5 * L.c * penalty(R - 1);
}

// Own path and control of player `slot` on `path`, optionally re-integrated with a perturbation.
void own_path(const PathEnsemble& ens, int slot, int path, const Perturbation* pert, std::vector<double>& x,
              std::vector<double>& a) {
  const std::size_t R = ens.times.size();
  x.resize(R);
  a.resize(R);
  for (std::size_t r = 0; r < R; ++r) {
    x[r] = ens.x(path, slot, r);
    a[r] = ens.alpha(path, slot, r);
  }
  if (!pert) return;
  if (static_cast<int>(R) != ens.steps + 1 || ens.increments.empty())
    throw ValidationError("perturbed cost needs every step recorded and increments retained");
  const double dt = ens.config.dt;
  for (std::size_t r = 0; r + 1 < R; ++r) {
    const double ar = a[r] + pert->delta * pert->h(ens.times[r]);
    x[r + 1] = x[r] + ar * dt + ens.sigma * ens.dW(path, slot, static_cast<int>(r));
    a[r] = ar;
  }
  a[R - 1] += pert->delta * pert->h(ens.times[R - 1]);
}

}  // namespace

CostEstimate estimate_cost(const PathEnsemble& ens, const ModelParams& params, int player,
                           const Perturbation* perturbation) {
  const CostLayout L = cost_layout(ens, params, player);
  const int P = ens.config.paths;
  std::vector<double> x, a;
  double sum = 0.0, sum2 = 0.0;
  for (int p = 0; p < P; ++p) {
    own_path(ens, L.self, p, perturbation, x, a);
    const double c = path_cost(ens, L, p, x, a);
    sum += c;
    sum2 += c * c;
  }
  CostEstimate out;
  out.mean = sum / P;
  const double var = P > 1 ? std::max(0.0, (sum2 - P * out.mean * out.mean) / (P - 1)) : 0.0;
  out.std_error = std::sqrt(var / P);
  out.ci_low = out.mean - 1.96 * out.std_error;
  out.ci_high = out.mean + 1.96 * out.std_error;
  if (P < 30)
    out.status = "warning: fewer than 30 paths";
  else if (1.96 * out.std_error > std::abs(out.mean) && out.mean != 0.0)
    out.status = "warning: 95% interval wider than the estimate";
  return out;
}

std::vector<DeviationRow> nash_deviation_test(SimConfig config, const ModelParams& params,
                                              const StrategySource& strategy, int player,
                                              const std::function<double(double)>& h,
                                              std::span<const double> magnitudes) {
  // Track the player and its cost neighbours on every step, with increments kept.
  std::set<int> track{player};
  if (config.model == ModelKind::Tree) {
    const int M = std::get<TreeParams>(params).M;
    long k = 0;
    const int g = tree_generation(M, player, &k);
    if (g + 1 < config.generations) {
      const long first = static_cast<long>(TreeStates::offset(M, g + 1)) + k * M;
      for (int j = 0; j < M; ++j) track.insert(static_cast<int>(first + j));
    }
  } else {
    const int N = config.players;
    for (int d : {-1, 1}) {
      const int j = player + d;
      if (config.boundary == BoundaryPolicy::Periodic)
        track.insert(((j % N) + N) % N);
      else if (j >= 0 && j < N)
        track.insert(j);
    }
  }
  config.tracked.assign(track.begin(), track.end());
  config.record_every = 1;
  config.retain_increments = true;
  const PathEnsemble ens = simulate(config, params, strategy);
  const CostLayout L = cost_layout(ens, params, player);

  std::vector<DeviationRow> rows;
  std::vector<double> x0, a0, x1, a1;
  for (double delta : magnitudes) {
    const Perturbation zero{h, 0.0};
    const Perturbation pert{h, delta};
    double sum = 0.0, sum2 = 0.0;
    for (int p = 0; p < config.paths; ++p) {
      own_path(ens, L.self, p, &zero, x0, a0);
      own_path(ens, L.self, p, &pert, x1, a1);
      const double d = path_cost(ens, L, p, x1, a1) - path_cost(ens, L, p, x0, a0);
      sum += d;
      sum2 += d * d;
    }
    const int P = config.paths;
    DeviationRow row;
    row.magnitude = delta;
    row.delta = sum / P;
    const double var = P > 1 ? std::max(0.0, (sum2 - P * row.delta * row.delta) / (P - 1)) : 0.0;
    row.std_error = std::sqrt(var / P);
    if (row.delta - 3.0 * row.std_error > 0.0)
      row.status = DeviationStatus::Positive;
    else if (row.delta + 3.0 * row.std_error < 0.0)
      row.status = DeviationStatus::Negative;
    rows.push_back(row);
  }
  return rows;
}

VarianceCrosscheck exact_variance_crosscheck(const ChainParams& params, double t, SimConfig config) {
  params.validate();
  if (!(params.p > 0.0)) throw ValidationError("variance cross-check needs p > 0");
  if (!(t >= 0.0)) throw ValidationError("t must be nonnegative");
  VarianceCrosscheck out;
  if (t == 0.0) return out;
  ChainParams run = params;
  run.horizon = t;
  config.model = ModelKind::Chain;
  config.tracked = {0};
  config.record_every = 0;
  config.retain_increments = false;
  const int K = config.boundary == BoundaryPolicy::Periodic ? config.players - 1 : std::max(2, config.players - 1);
  const auto coeffs = stationary_chain_coeffs(params.p, params.epsilon, std::max(2, K));
  const auto ens = simulate(config, run, coeffs);
  const auto est = sample_variance(ens, 0, ens.times.size() - 1);
  out.analytic = params.sigma * params.sigma * variance_chain(t, params.p).value;
  out.simulated = est.value;
  out.std_error = est.std_error;
  out.z = est.std_error > 0.0 ? (out.simulated - out.analytic) / est.std_error : 0.0;
  return out;
}

double periodic_em_variance(std::span<const double> phi, int N, double dt, int steps, double sigma) {
  if (N < 1 || steps < 0 || !(dt > 0.0)) throw ValidationError("invalid periodic variance inputs");
  double total = 0.0;
  for (int k = 0; k < N; ++k) {
    std::complex<double> sym = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j)
      sym += phi[j] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((j * k) % N) / N);
    const double m = std::norm(1.0 - dt * sym);
    total += std::abs(1.0 - m) < 1e-15 ? static_cast<double>(steps) : (1.0 - std::pow(m, steps)) / (1.0 - m);
  }
  return sigma * sigma * dt * total / N;
}

}  // namespace lqnet
