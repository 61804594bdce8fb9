#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "lqnet/lqnet.hpp"

namespace lqnet::cli {

namespace {

using nlohmann::ordered_json;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// For messages meant to be read.
std::string brief(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct Options {
  // global
  std::string config, out;
  std::uint64_t seed = 1;
  bool quiet = false;
  // model
  std::string model = "chain";
  double p = 1.0, eps = 1.0, c = 0.0, sigma = 1.0, T = 1.0, p1 = 1.0, q1 = 1.0;
  int M = 2;
  // grids and windows
  int K = 32, steps = 1000, window = 60, grid = 1;
  double t = 1.0;
  // simulation
  int N = 64, G = 3, paths = 1000, truncation = -1, record_every = 0, workers = 1, var_player = 0;
  double dt = 0.01, x0 = 0.0;
  std::string boundary = "periodic", strategy = "stationary";
  std::vector<int> track;
  bool track_var = false, mc = false;
  // verify and tree
  std::string suite = "all";
  int dim = 60, verify_K = 200;
  double tol = 1e-9;
};

ModelKind model_kind(const std::string& m) {
  if (m == "chain") return ModelKind::Chain;
  if (m == "twosided") return ModelKind::TwoSided;
  if (m == "tree") return ModelKind::Tree;
  throw ValidationError("unknown model '" + m + "'");
}

ChainParams chain_params(const Options& o) { return {o.eps, o.c, o.p, o.sigma, o.T}; }

TwoSidedParams twosided_params(const Options& o) {
  TwoSidedParams tp;
  tp.epsilon = o.eps;
  tp.c = o.c;
  tp.sigma = o.sigma;
  tp.horizon = o.T;
  tp.p = o.p;
  tp.p1 = o.p1;
  tp.q1 = o.q1;
  return tp;
}

TreeParams tree_params(const Options& o) { return {o.M, o.p, o.eps, o.c, o.sigma, o.T}; }

ordered_json params_json(const Options& o) {
  ordered_json j;
  j["epsilon"] = o.eps;
  j["c"] = o.c;
  j["p"] = o.p;
  j["sigma"] = o.sigma;
  j["T"] = o.T;
  if (o.model == "twosided") {
    j["p1"] = o.p1;
    j["q1"] = o.q1;
  }
  if (o.model == "tree") j["M"] = o.M;
  return j;
}

// Collects CSV rows and the sidecar, then writes both.
class Output {
 public:
  Output(const Options& o, std::string command, std::ostream& out)
      : o_(o), command_(std::move(command)), out_(out) {
    meta_["tool-version"] = kVersion;
    meta_["command"] = command_;
    meta_["model"] = o.model;
    meta_["params"] = params_json(o);
    meta_["seed"] = o.seed;
    meta_["rng-id"] = kRngId;
  }

  ordered_json& meta() { return meta_; }
  std::ostringstream& csv() { return csv_; }

  void header(const std::string& h) { csv_ << h << '\n'; }

  template <class... Xs>
  void row(const Xs&... xs) {
    bool first = true;
    ((csv_ << (first ? "" : ",") << cell(xs), first = false), ...);
    csv_ << '\n';
  }

  void write(bool csv_to_stream = true) const {
    if (o_.out.empty()) {
      if (csv_to_stream) out_ << csv_.str();
      return;
    }
    std::ofstream f(o_.out, std::ios::binary);
    if (!f) throw ValidationError("cannot open output file " + o_.out);
    f << csv_.str();
    std::ofstream s(sidecar_path(o_.out), std::ios::binary);
    if (!s) throw ValidationError("cannot open sidecar file " + sidecar_path(o_.out));
    s << meta_.dump(2) << '\n';
  }

  static std::string sidecar_path(const std::string& out) {
    const auto dot = out.rfind('.');
    const auto slash = out.find_last_of("/\\");
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return out.substr(0, dot) + ".json";
    return out + ".json";
  }

 private:
  static std::string cell(double x) { return num(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(long x) { return std::to_string(x); }
  static std::string cell(std::size_t x) { return std::to_string(x); }
  static std::string cell(const std::string& x) { return x; }
  static std::string cell(const char* x) { return x; }

  const Options& o_;
  std::string command_;
  std::ostream& out_;
  ordered_json meta_;
  std::ostringstream csv_;
};

int cmd_coeffs(const Options& o, std::ostream& out, std::ostream&) {
  if (o.K < 0) throw ValidationError("K must be nonnegative");
  Output w(o, "coeffs", out);
  w.meta()["truncation"] = o.K;
  w.meta()["grid"] = nullptr;
  switch (model_kind(o.model)) {
    case ModelKind::Chain: {
      chain_params(o).validate();
      const auto s = stationary_chain_coeffs(o.p, o.eps, o.K);
      w.header("k,phi");
      for (int k = 0; k <= o.K; ++k) w.row(k, s[k]);
      w.meta()["provenance"] = to_string(s.provenance);
      w.meta()["tail-residual"] = s.sum_residual();
      w.meta()["convolution-residual"] = s.convolution_residual();
      break;
    }
    case ModelKind::TwoSided: {
      const auto s = stationary_twosided_coeffs(twosided_params(o), o.K);
      w.header("k,phi");
      for (int k = -o.K; k <= o.K; ++k) w.row(k, s[k]);
      w.meta()["provenance"] = to_string(s.provenance);
      w.meta()["tail-residual"] = s.sum_residual();
      break;
    }
    case ModelKind::Tree:
      throw ValidationError("coeffs has no stationary tree form; use riccati --model tree");
  }
  w.write();
  return kOk;
}

int cmd_riccati(const Options& o, std::ostream& out, std::ostream&) {
  Output w(o, "riccati", out);
  w.meta()["grid"] = {{"T", o.T}, {"steps", o.steps}};
  w.header("t,k,phi");
  auto dump = [&](const auto& grid, int lo, int hi, auto&& at) {
    for (std::size_t n = 0; n < grid.size(); ++n)
      for (int k = lo; k <= hi; ++k) w.row(grid[n], k, at(k, n));
  };
  switch (model_kind(o.model)) {
    case ModelKind::Chain:
    case ModelKind::TwoSided: {
      const auto sol = o.model == "chain" ? solve_chain_riccati(chain_params(o), o.K, o.steps)
                                          : solve_twosided_riccati(twosided_params(o), o.K, o.steps);
      dump(sol.grid, sol.min_index, sol.max_index, [&](int k, std::size_t n) { return sol(k, n); });
      w.meta()["truncation"] = sol.truncation;
      w.meta()["step-error"] = sol.step_error;
      w.meta()["substeps"] = sol.substeps;
      w.meta()["sum-residual"] = sol.sum_residual;
      break;
    }
    case ModelKind::Tree: {
      const auto sol = solve_tree_riccati(tree_params(o), o.K, o.steps);
      dump(sol.grid, 0, sol.depth, [&](int k, std::size_t n) { return sol(k, n); });
      w.meta()["truncation"] = sol.depth;
      w.meta()["step-error"] = sol.step_error;
      w.meta()["substeps"] = sol.substeps;
      break;
    }
  }
  w.write();
  return kOk;
}

int cmd_kernel(const Options& o, std::ostream& out, std::ostream&) {
  if (o.window < 1) throw ValidationError("window must be at least 1");
  Output w(o, "kernel", out);
  w.meta()["truncation"] = o.window;
  w.meta()["grid"] = {{"t", o.t}};
  switch (model_kind(o.model)) {
    case ModelKind::Chain: {
      const auto kern = make_transition_kernel(o.p, o.t, o.window);
      w.header("k,p");
      for (int k = 0; k < o.window; ++k) w.row(k, kern.row[k]);
      w.meta()["row-sum"] = kern.row_sum();
      break;
    }
    case ModelKind::TwoSided: {
      w.header("d,p");
      double total = 0.0;
      for (int d = -o.window; d <= o.window; ++d) {
        const double x = twosided_kernel_weight(d, o.t, o.p);
        total += x;
        w.row(d, x);
      }
      w.meta()["row-sum"] = total;
      break;
    }
    case ModelKind::Tree:
      throw ValidationError("kernel supports chain and twosided");
  }
  w.write();
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  SimConfig cfg;
  cfg.model = model_kind(o.model);
  cfg.players = o.N;
  cfg.generations = o.G;
  cfg.paths = o.paths;
  cfg.dt = o.dt;
  cfg.seed = o.seed;
  if (o.boundary == "periodic")
    cfg.boundary = BoundaryPolicy::Periodic;
  else if (o.boundary == "zero-tail")
    cfg.boundary = BoundaryPolicy::ZeroTail;
  else
    throw ValidationError("boundary must be periodic or zero-tail");
  cfg.truncation = o.truncation;
  cfg.record_every = o.record_every;
  cfg.tracked = o.track;
  cfg.initial_state = o.x0;
  cfg.workers = o.workers;
  if (o.strategy != "stationary" && o.strategy != "riccati")
    throw ValidationError("strategy must be stationary or riccati");
  if (!(o.dt > 0.0)) throw ValidationError("dt must be positive");
  const int steps = static_cast<int>(std::lround(o.T / o.dt));
  const bool periodic = cfg.boundary == BoundaryPolicy::Periodic;

  ModelParams params;
  StrategySource strategy;
  switch (cfg.model) {
    case ModelKind::Chain: {
      const auto cp = chain_params(o);
      cp.validate();
      params = cp;
      const int K = o.truncation >= 0 ? o.truncation : o.N - 1;
      if (o.strategy == "stationary")
        strategy = stationary_chain_coeffs(o.p, o.eps, K);
      else
        strategy = solve_chain_riccati(cp, K, steps);
      break;
    }
    case ModelKind::TwoSided: {
      const auto tp = twosided_params(o);
      params = tp;
      const int K = o.truncation >= 0 ? o.truncation : (periodic ? (o.N - 1) / 2 : o.N - 1);
      if (o.strategy == "stationary")
        strategy = stationary_twosided_coeffs(tp, K);
      else
        strategy = solve_twosided_riccati(tp, K, steps);
      break;
    }
    case ModelKind::Tree: {
      const auto tp = tree_params(o);
      params = tp;
      if (o.strategy != "riccati" && o.strategy != "stationary")
        throw ValidationError("unknown strategy");
      strategy = solve_tree_riccati(tp, std::max(0, o.G - 1), steps);
      break;
    }
  }
  const auto ens = simulate(cfg, params, strategy);

  Output w(o, "simulate", out);
  w.meta()["truncation"] = ens.truncation;
  w.meta()["grid"] = {{"T", ens.horizon}, {"dt", o.dt}, {"steps", ens.steps}, {"record-every", o.record_every}};
  w.meta()["boundary"] = to_string(cfg.boundary);
  w.meta()["paths"] = o.paths;
  w.meta()["players"] = cfg.model == ModelKind::Tree ? o.G : o.N;
  w.meta()["strategy"] = ens.strategy;
  w.header("path,player,t,x");
  for (int path = 0; path < o.paths; ++path)
    for (std::size_t sl = 0; sl < ens.slots(); ++sl)
      for (std::size_t r = 0; r < ens.times.size(); ++r)
        w.row(path, ens.players[sl], ens.times[r], ens.x(path, static_cast<int>(sl), r));

  if (o.track_var) {
    if (ens.slot_of(o.var_player) < 0) throw ValidationError("variance player is not tracked");
    const auto est = sample_variance(ens, o.var_player, ens.times.size() - 1);
    w.meta()["variance"] = {{"player", o.var_player}, {"t", ens.horizon}, {"value", est.value}, {"std-error", est.std_error}};
    if (!o.quiet) {
      std::ostream& s = o.out.empty() ? err : out;
      s << "variance of player " << o.var_player << " at t=" << brief(ens.horizon) << ": " << brief(est.value)
        << " +- " << brief(3.0 * est.std_error) << " (3 standard errors, " << o.paths << " paths)\n";
    }
  }
  // With --track-var and no file the ensemble itself is not echoed.
  w.write(!o.track_var);
  return kOk;
}

int cmd_variance(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.grid < 1) throw ValidationError("grid must be at least 1");
  if (!(o.t >= 0.0)) throw ValidationError("t must be nonnegative");
  chain_params(o).validate();
  if (!(o.p > 0.0)) throw ValidationError("variance needs p > 0");
  Output w(o, "variance", out);
  w.meta()["model"] = "chain";
  w.meta()["truncation"] = nullptr;
  w.meta()["grid"] = {{"t", o.t}, {"points", o.grid}};
  w.meta()["limit"] = o.sigma * o.sigma * asymptotic_variance_chain(o.p);
  w.header(o.mc ? "t,variance,simulated,std_error,z" : "t,variance");
  for (int i = 1; i <= o.grid; ++i) {
    const double t = o.t * i / o.grid;
    const auto v = variance_chain(t, o.p);
    if (!o.mc) {
      w.row(t, o.sigma * o.sigma * v.value);
      continue;
    }
    SimConfig cfg;
    cfg.players = o.N;
    cfg.paths = o.paths;
    cfg.dt = o.dt;
    cfg.seed = o.seed;
    cfg.workers = o.workers;
    const auto x = exact_variance_crosscheck(chain_params(o), t, cfg);
    w.row(t, x.analytic, x.simulated, x.std_error, x.z);
    if (!o.quiet)
      err << "t=" << brief(t) << " analytic " << brief(x.analytic) << " simulated " << brief(x.simulated) << " +- "
          << brief(x.std_error) << " z " << brief(x.z) << '\n';
  }
  w.write();
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
  VerifyOptions v;
  v.K = o.verify_K;
  v.M = o.M;
  v.G = o.G;
  v.t = o.t;
  v.dim = o.dim;
  v.p = o.p;
  const auto results = run_verify_suite(o.suite, v);
  bool ok = true;
  Output w(o, "verify", out);
  w.meta()["suite"] = o.suite;
  w.meta()["truncation"] = v.K;
  w.meta()["grid"] = nullptr;
  w.header("check,passed,achieved,tolerance");
  std::ostringstream report;
  for (const auto& r : results) {
    ok = ok && r.passed;
    w.row(r.name, r.passed ? "1" : "0", r.achieved, r.tolerance);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s %-56s achieved %.3e  tolerance %.1e\n", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.achieved, r.tolerance);
    report << buf;
  }
  if (!o.out.empty()) w.write();
  if (!o.quiet || o.out.empty()) out << report.str();
  return ok ? kOk : kVerifyFailed;
}

int cmd_tree(const Options& o, std::ostream& out, std::ostream& err) {
  const auto tp = tree_params(o);
  tp.validate();
  if (o.G < 1) throw ValidationError("G must be at least 1");
  const auto brute = brute_force_tree(tp, o.G, o.steps);
  const auto reduced = solve_tree_riccati(tp, std::max(1, o.G - 1), o.steps);
  double same_depth = 0.0, mismatch = 0.0;
  std::map<int, double> first;
  Output w(o, "tree", out);
  w.meta()["model"] = "tree";
  w.meta()["truncation"] = reduced.depth;
  w.meta()["grid"] = {{"T", o.T}, {"steps", o.steps}};
  w.meta()["generations"] = o.G;
  w.header("ancestor_gen,ancestor_k,gen,k,depth,brute_force,reduced");
  for (std::size_t i = 0; i < brute.pairs.size(); ++i) {
    const auto& pr = brute.pairs[i];
    for (std::size_t n = 0; n < brute.grid.size(); ++n) {
      const double b = brute(i, n), r = reduced(pr.depth(), n);
      mismatch = std::max(mismatch, std::abs(b - r));
      if (n == 0) {
        auto [it, fresh] = first.emplace(pr.depth(), b);
        if (!fresh) same_depth = std::max(same_depth, std::abs(b - it->second));
      }
    }
    w.row(pr.ancestor_gen, pr.ancestor_k, pr.gen, pr.k, pr.depth(), brute(i, 0), reduced(pr.depth(), 0));
  }
  w.meta()["same-depth-spread"] = same_depth;
  w.meta()["reduced-mismatch"] = mismatch;
  w.write();
  const bool ok = same_depth <= o.tol && mismatch <= o.tol;
  if (!o.quiet)
    err << (ok ? "PASS" : "FAIL") << " depth invariance: same-depth spread " << brief(same_depth)
        << ", reduced mismatch " << brief(mismatch) << " (" << brute.pairs.size() << " pairs, tolerance "
        << brief(o.tol) << ")\n";
  return ok ? kOk : kVerifyFailed;
}

void add_model(CLI::App* sub, Options& o, bool with_model = true) {
  if (with_model) sub->add_option("--model", o.model, "chain, twosided or tree")->capture_default_str();
  sub->add_option("--p", o.p, "link probability (chain, tree) or right weight (twosided)")->capture_default_str();
  sub->add_option("--eps", o.eps, "neighbour penalty")->capture_default_str();
  sub->add_option("--c", o.c, "terminal penalty")->capture_default_str();
  sub->add_option("--sigma", o.sigma, "noise level")->capture_default_str();
  sub->add_option("--T", o.T, "horizon")->capture_default_str();
  sub->add_option("--p1", o.p1, "right link probability (twosided)")->capture_default_str();
  sub->add_option("--q1", o.q1, "left link probability (twosided)")->capture_default_str();
  sub->add_option("--M", o.M, "branching factor (tree)")->capture_default_str();
}

// Finds --config in args and splices its entries in front of the explicit flags.
std::vector<std::string> expand_config(const std::vector<std::string>& args, CLI::App& app) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot read config file " + path);
  ordered_json cfg;
  try {
    cfg = ordered_json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw ValidationError("config must be a JSON object");

  std::vector<std::string> result = args;
  std::size_t at = 0;
  CLI::App* sub = nullptr;
  for (std::size_t i = 0; i < args.size() && !sub; ++i) {
    if (auto* s = app.get_subcommand_no_throw(args[i])) {
      sub = s;
      at = i + 1;
    }
  }
  if (cfg.contains("command")) {
    if (!cfg["command"].is_string()) throw ValidationError("config key 'command' must be a string");
    const auto name = cfg["command"].get<std::string>();
    if (!sub) {
      sub = app.get_subcommand_no_throw(name);
      if (!sub) throw ValidationError("config names unknown command '" + name + "'");
      result.insert(result.begin(), name);
      at = 1;
    }
  }
  if (!sub) throw ValidationError("no command given");

  auto explicit_flag = [&](const std::string& flag) {
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  std::vector<std::string> tokens;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command" || key == "config") continue;
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt) opt = app.get_option_no_throw(flag);
    if (!opt) throw ValidationError("unknown config key '" + key + "' for command " + sub->get_name());
    if (explicit_flag(flag)) continue;
    const bool is_flag = opt->get_expected_min() == 0;
    if (is_flag) {
      if (!value.is_boolean()) throw ValidationError("config key '" + key + "' must be true or false");
      if (value.get<bool>()) tokens.push_back(flag);
      continue;
    }
    auto scalar = [&](const ordered_json& v) -> std::string {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
      if (v.is_number_float()) return num(v.get<double>());
      throw ValidationError("config key '" + key + "' has an unsupported value");
    };
    tokens.push_back(flag);
    if (value.is_array()) {
      if (opt->get_expected_max() <= 1) throw ValidationError("config key '" + key + "' takes a single value");
      for (const auto& v : value) tokens.push_back(scalar(v));
    } else {
      tokens.push_back(scalar(value));
    }
  }
  result.insert(result.begin() + static_cast<std::ptrdiff_t>(at), tokens.begin(), tokens.end());
  return result;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Nash equilibria of linear-quadratic games on random chains and trees", "lqnet"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));
  app.add_option("--config", o.config, "JSON file of option values; explicit flags win");
  app.add_option("--out", o.out, "CSV output path; the JSON sidecar is written next to it");
  app.add_option("--seed", o.seed, "master seed")->capture_default_str();
  app.add_flag("--quiet", o.quiet, "suppress summaries");

  auto* coeffs = app.add_subcommand("coeffs", "stationary coefficients, CSV k,phi");
  add_model(coeffs, o);
  coeffs->add_option("--K", o.K, "truncation window")->capture_default_str();

  auto* riccati = app.add_subcommand("riccati", "backward Riccati solve, CSV t,k,phi");
  add_model(riccati, o);
  riccati->add_option("--K", o.K, "truncation window (tree: depth)")->capture_default_str();
  riccati->add_option("--steps", o.steps, "grid intervals")->capture_default_str();

  auto* kernel = app.add_subcommand("kernel", "transition kernel row at time t");
  kernel->add_option("--model", o.model, "chain or twosided")->capture_default_str();
  kernel->add_option("--p", o.p, "link probability (chain) or right weight (twosided)")->capture_default_str();
  kernel->add_option("--t", o.t, "time")->capture_default_str();
  kernel->add_option("--window", o.window, "number of entries (twosided: offsets -window..window)")
      ->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Euler-Maruyama ensemble, CSV path,player,t,x");
  add_model(sim, o);
  sim->add_option("--N", o.N, "players (chain, twosided)")->capture_default_str();
  sim->add_option("--G", o.G, "generations (tree)")->capture_default_str();
  sim->add_option("--paths", o.paths, "Monte Carlo paths")->capture_default_str();
  sim->add_option("--dt", o.dt, "time step")->capture_default_str();
  sim->add_option("--boundary", o.boundary, "periodic or zero-tail")->capture_default_str();
  sim->add_option("--strategy", o.strategy, "stationary or riccati coefficients")->capture_default_str();
  sim->add_option("--truncation", o.truncation, "coefficient window, -1 for the widest allowed")
      ->capture_default_str();
  sim->add_option("--track", o.track, "players to record (default all)");
  sim->add_option("--record-every", o.record_every, "record every n steps, 0 for endpoints only")
      ->capture_default_str();
  sim->add_option("--workers", o.workers, "threads")->capture_default_str();
  sim->add_option("--x0", o.x0, "initial state of every player")->capture_default_str();
  sim->add_flag("--track-var", o.track_var, "print the sample variance at T");
  sim->add_option("--var-player", o.var_player, "player for --track-var")->capture_default_str();

  auto* var = app.add_subcommand("variance", "variance of the random chain for sigma, p");
  var->add_option("--p", o.p, "link probability")->capture_default_str();
  var->add_option("--sigma", o.sigma, "noise level")->capture_default_str();
  var->add_option("--t", o.t, "time")->capture_default_str();
  var->add_option("--grid", o.grid, "evaluate at t*i/grid for i = 1..grid")->capture_default_str();
  var->add_flag("--mc", o.mc, "also simulate a periodic chain and report z-scores");
  var->add_option("--N", o.N, "players for --mc")->capture_default_str();
  var->add_option("--paths", o.paths, "paths for --mc")->capture_default_str();
  var->add_option("--dt", o.dt, "time step for --mc")->capture_default_str();
  var->add_option("--workers", o.workers, "threads for --mc")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "oracle cross-checks; exit 1 if any fails");
  verify->add_option("--suite", o.suite, "convolution, kernel, generating-function, tree-depth, rho, variance, all")
      ->capture_default_str();
  verify->add_option("--K", o.verify_K, "convolution length")->capture_default_str();
  verify->add_option("--M", o.M, "tree branching")->capture_default_str();
  verify->add_option("--G", o.G, "tree generations")->capture_default_str();
  verify->add_option("--t", o.t, "kernel time")->capture_default_str();
  verify->add_option("--dim", o.dim, "dense oracle dimension")->capture_default_str();
  verify->add_option("--p", o.p, "link probability")->capture_default_str();

  auto* tree = app.add_subcommand("tree", "unreduced tree integration against the depth solver");
  add_model(tree, o, false);
  tree->add_option("--G", o.G, "generations")->capture_default_str();
  tree->add_option("--steps", o.steps, "grid intervals")->capture_default_str();
  tree->add_option("--tol", o.tol, "allowed discrepancy")->capture_default_str();

  try {
    auto argv = expand_config(args, app);
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
  if (tree->parsed()) o.model = "tree";

  try {
    if (coeffs->parsed()) return cmd_coeffs(o, out, err);
    if (riccati->parsed()) return cmd_riccati(o, out, err);
    if (kernel->parsed()) return cmd_kernel(o, out, err);
    if (sim->parsed()) return cmd_simulate(o, out, err);
    if (var->parsed()) return cmd_variance(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (tree->parsed()) return cmd_tree(o, out, err);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kInvalid;
  } catch (const SimulationError& e) {
    err << "simulation error: " << e.what() << '\n';
    return kSimulation;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kInvalid;
}

}  // namespace lqnet::cli
