#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lqnet/catalan.hpp"
#include "lqnet/params.hpp"
#include "lqnet/riccati.hpp"
#include "lqnet/tree.hpp"
#include "lqnet/twosided.hpp"

namespace lqnet {

enum class ModelKind { Chain, TwoSided, Tree };
enum class BoundaryPolicy { Periodic, ZeroTail };

std::string_view to_string(ModelKind m);
std::string_view to_string(BoundaryPolicy b);

struct SimConfig {
  ModelKind model = ModelKind::Chain;
  int players = 64;     // chain and two-sided
  int generations = 3;  // tree
  int paths = 1000;
  double dt = 0.01;
  std::uint64_t seed = 1;
  BoundaryPolicy boundary = BoundaryPolicy::Periodic;
  int truncation = -1;   // coefficient window in the drift; -1 takes the widest the closure allows
  int record_every = 0;  // record every n steps; 0 records only t = 0 and t = T
  std::vector<int> tracked;  // recorded players (tree: breadth-first node ids); empty = all
  bool retain_increments = false;
  double initial_state = 0.0;
  int workers = 1;
};

using ModelParams = std::variant<ChainParams, TwoSidedParams, TreeParams>;
using StrategySource = std::variant<RiccatiSolution, StationaryCoefficients, TwoSidedStationary, TreeRiccatiSolution>;

struct PathEnsemble {
  SimConfig config;
  double horizon = 0.0;
  double sigma = 0.0;
  int steps = 0;
  int truncation = 0;          // coefficient window actually used
  std::string strategy;        // provenance of the coefficients
  std::string rng_id;
  std::vector<double> times;   // recorded times
  std::vector<int> players;    // tracked players
  std::vector<double> states;    // [path][slot][time]
  std::vector<double> controls;  // [path][slot][time]
  std::vector<double> increments;  // [path][slot][step], Brownian increments if retained

  std::size_t slots() const { return players.size(); }
  int slot_of(int player) const;  // -1 when not tracked
  double x(int path, int slot, std::size_t r) const {
    return states[(static_cast<std::size_t>(path) * slots() + slot) * times.size() + r];
  }
  double alpha(int path, int slot, std::size_t r) const {
    return controls[(static_cast<std::size_t>(path) * slots() + slot) * times.size() + r];
  }
  double dW(int path, int slot, int n) const {
    return increments[(static_cast<std::size_t>(path) * slots() + slot) * steps + n];
  }
};

PathEnsemble simulate(const SimConfig& config, const ModelParams& params, const StrategySource& strategy);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Sample variance of a tracked player at recorded time index r, with a fourth-moment standard error.
Estimate sample_variance(const PathEnsemble& ens, int player, std::size_t r);

// Deterministic control perturbation delta * h(t) added to one player.
struct Perturbation {
  std::function<double(double)> h;
  double delta = 0.0;
};

struct CostEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::string status = "ok";  // "warning: ..." when the interval is too wide to be useful
};

// Monte Carlo cost of player i with trapezoidal time quadrature on the recorded grid.
CostEstimate estimate_cost(const PathEnsemble& ens, const ModelParams& params, int player,
                           const Perturbation* perturbation = nullptr);

enum class DeviationStatus { Positive, Negative, Inconclusive };
std::string_view to_string(DeviationStatus s);

struct DeviationRow {
  double magnitude = 0.0;
  double delta = 0.0;
  double std_error = 0.0;
  DeviationStatus status = DeviationStatus::Inconclusive;
};

// J(equilibrium + delta*h) - J(equilibrium) for each magnitude, others frozen, common random numbers.
std::vector<DeviationRow> nash_deviation_test(SimConfig config, const ModelParams& params,
                                              const StrategySource& strategy, int player,
                                              const std::function<double(double)>& h,
                                              std::span<const double> magnitudes);

struct VarianceCrosscheck {
  double analytic = 0.0;
  double simulated = 0.0;
  double std_error = 0.0;
  double z = 0.0;
};

// Quadrature variance of the infinite chain against a periodic simulation with
// stationary coefficients run to time t.
VarianceCrosscheck exact_variance_crosscheck(const ChainParams& params, double t, SimConfig config);

// Exact variance of one player under the Euler-Maruyama recursion of the periodic
// chain with coefficients phi^0..phi^K on N players, after `steps` steps of size dt.
double periodic_em_variance(std::span<const double> phi, int N, double dt, int steps, double sigma = 1.0);

}  // namespace lqnet
