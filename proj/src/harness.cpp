#include "otp/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "otp/error.hpp"

namespace otp {
namespace {

constexpr int kMaxResamples = 10000;

using Clock = std::chrono::steady_clock;

struct Timed {
  StrategyOutcome outcome;
  double ms;
};

template <typename F>
Timed timed(F&& f) {
  const auto t0 = Clock::now();
  StrategyOutcome o = f();
  const auto t1 = Clock::now();
  return {std::move(o), std::chrono::duration<double, std::milli>(t1 - t0).count()};
}

double er_probability(int n, double a) { return a * std::log(static_cast<double>(n)) / n; }

/// Mean of the per-step visited counts divided by N.
double step_fraction(const StrategyOutcome& o, int n) {
  if (o.visited_per_step.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t s : o.visited_per_step) total += static_cast<double>(s);
  return total / (static_cast<double>(o.visited_per_step.size()) * n);
}

ResultRow base_row(const ExperimentConfig& cfg, int n, int trial) {
  ResultRow r;
  r.experiment = std::string(experiment_name(cfg.experiment));
  r.n = n;
  r.k_plus = cfg.k_plus;
  r.minus_count = cfg.minus_count;
  r.trial = trial;
  return r;
}

ResultRow outcome_row(ResultRow r, std::string_view algorithm, const Timed& t, double fraction,
                      std::optional<bool> ok) {
  r.algorithm = std::string(algorithm);
  r.f_plus = t.outcome.objective;
  r.visited_fraction = fraction;
  r.evaluations = t.outcome.equilibrium_evaluations;
  r.success = ok;
  r.wall_time_ms = t.ms;
  return r;
}

bool same_optimum(double f_star, double f) { return std::abs(f_star - f) <= 1e-9; }

/// Single-target comparison of `search` against brute force on one instance.
void stp_rows(const Instance& inst, const ResultRow& proto, std::string_view search_name,
              const Timed& search, const Timed& exact, bool exactness_flag,
              std::vector<ResultRow>& rows) {
  const int n = inst.node_count();
  const double f_star = exact.outcome.objective;
  const double f_hat = search.outcome.objective;
  rows.push_back(outcome_row(proto, "brute", exact, 1.0, true));
  const bool ok = exactness_flag ? same_optimum(f_star, f_hat) : success(f_star, f_hat);
  rows.push_back(outcome_row(proto, search_name, search,
                             static_cast<double>(search.outcome.visited_nodes) / n, ok));
}

}  // namespace

std::string_view experiment_name(Experiment e) {
  switch (e) {
    case Experiment::er_blocking:
      return "er-blocking";
    case Experiment::random_trees:
      return "random-trees";
    case Experiment::er_treelike:
      return "er-treelike";
    case Experiment::treelike_otp:
      return "treelike-otp";
    case Experiment::facebook:
      return "facebook";
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view name) {
  for (Experiment e : {Experiment::er_blocking, Experiment::random_trees, Experiment::er_treelike,
                       Experiment::treelike_otp, Experiment::facebook}) {
    if (experiment_name(e) == name) return e;
  }
  throw InvalidArgument("unknown experiment '" + std::string(name) + "'");
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig cfg;
  cfg.experiment = e;
  switch (e) {
    case Experiment::er_blocking:
      cfg.n = {400};
      for (int i = 3; i <= 20; ++i) cfg.a.push_back(0.5 * i);
      cfg.trials = 50;
      cfg.k_plus = 5;
      cfg.minus_count = 3;
      break;
    case Experiment::random_trees:
      cfg.n = {50, 100, 200, 300, 400, 500};
      cfg.lambda = {3, 6, 9, 12};
      cfg.trials = 50;
      cfg.k_plus = 1;
      cfg.minus_count = 1;
      break;
    case Experiment::er_treelike:
      cfg.n = {100, 200, 300, 400, 500, 600, 700, 800};
      cfg.a = {1.5, 3, 4.5, 6};
      cfg.trials = 50;
      cfg.k_plus = 1;
      cfg.minus_count = 1;
      break;
    case Experiment::treelike_otp:
      cfg.n = {200};
      cfg.p = 0.1;
      cfg.trials = 15;
      cfg.k_plus = 5;
      cfg.minus_count = 3;
      break;
    case Experiment::facebook:
      cfg.trials = 10;
      cfg.k_plus = 1;
      cfg.minus_count = 1;
      break;
  }
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw InvalidArgument("trials must be at least 1");
  if (cfg.k_plus < 1) throw InvalidArgument("k-plus must be at least 1");
  if (cfg.minus_count < 1) throw InvalidArgument("minus-count must be at least 1");
  for (int n : cfg.n)
    if (n < 2) throw InvalidArgument("every n must be at least 2");
  for (double a : cfg.a)
    if (!(a > 0.0)) throw InvalidArgument("every a must be positive");
  for (double l : cfg.lambda)
    if (!(l > 0.0)) throw InvalidArgument("every lambda must be positive");
  const bool single = cfg.experiment == Experiment::random_trees ||
                      cfg.experiment == Experiment::er_treelike ||
                      cfg.experiment == Experiment::facebook;
  if (single && (cfg.k_plus != 1 || cfg.minus_count != 1)) {
    throw InvalidArgument(std::string(experiment_name(cfg.experiment)) +
                          " is a single targeting experiment: k-plus and minus-count must be 1");
  }
  switch (cfg.experiment) {
    case Experiment::er_blocking:
    case Experiment::er_treelike:
      if (cfg.n.empty() || cfg.a.empty()) throw InvalidArgument("experiment needs --n and --a");
      break;
    case Experiment::random_trees:
      if (cfg.n.empty() || cfg.lambda.empty()) throw InvalidArgument("experiment needs --n and --lambda");
      break;
    case Experiment::treelike_otp:
      if (cfg.n.empty()) throw InvalidArgument("experiment needs --n");
      if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw InvalidArgument("p must lie in [0, 1]");
      break;
    case Experiment::facebook:
      if (cfg.graph.empty()) throw InvalidArgument("facebook experiment needs --graph");
      break;
  }
  for (int n : cfg.n) {
    if (cfg.minus_count > n || cfg.k_plus > n) throw InvalidArgument("budget or minus-count exceeds n");
  }
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, std::size_t cell, int trial) {
  return derive_seed(cfg.seed, hash_tag(experiment_name(cfg.experiment)), cell,
                     static_cast<std::uint64_t>(trial));
}

Graph connected_erdos_renyi(int n, double p, std::uint64_t seed) {
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    Graph g = generate_erdos_renyi(n, p, derive_seed(seed, attempt));
    if (is_connected(g)) return g;
  }
  throw InvalidArgument("no connected G(n, p) sample found; p is too small");
}

NodeSet sample_nodes(int n, int count, Rng& rng) {
  if (count > n) throw InvalidArgument("cannot sample more nodes than exist");
  std::vector<Node> pool(n);
  for (Node i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < count; ++i) {
    const auto j = static_cast<std::size_t>(i) + uniform_below(rng, static_cast<std::uint64_t>(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return make_node_set(std::move(pool));
}

ExperimentResult run_er_blocking(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentResult res;
  std::size_t cell = 0;
  for (int n : cfg.n) {
    for (double a : cfg.a) {
      const double p = er_probability(n, a);
      for (int t = 0; t < cfg.trials; ++t) {
        Rng rng(trial_seed(cfg, cell, t));
        Graph g = connected_erdos_renyi(n, p, rng());
        NodeSet minus = sample_nodes(n, cfg.minus_count, rng);
        const Instance inst(std::move(g), std::move(minus), {}, cfg.k_plus);

        ResultRow proto = base_row(cfg, n, t);
        proto.a = a;
        proto.p = p;
        const Timed deg = timed([&] { return degree_heuristic(inst); });
        const Timed gre = timed([&] { return greedy(inst); });
        const Timed blo = timed([&] { return blocking(inst); });
        res.rows.push_back(outcome_row(proto, "degree", deg, step_fraction(deg.outcome, n), {}));
        res.rows.push_back(outcome_row(proto, "greedy", gre, step_fraction(gre.outcome, n), {}));
        res.rows.push_back(outcome_row(proto, "blocking", blo, step_fraction(blo.outcome, n), {}));
      }
      ++cell;
    }
  }
  return res;
}

ExperimentResult run_random_trees(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentResult res;
  std::size_t cell = 0;
  for (double lambda : cfg.lambda) {
    for (int n : cfg.n) {
      for (int t = 0; t < cfg.trials; ++t) {
        Rng rng(trial_seed(cfg, cell, t));
        // Resample until the branching process survives to the full size.
        std::optional<Graph> tree;
        for (int attempt = 0; attempt < kMaxResamples && !tree; ++attempt) {
          try {
            tree = generate_poisson_tree(lambda, n, rng(), n);
          } catch (const DegenerateTree&) {
          }
        }
        if (!tree) throw InvalidArgument("Poisson tree never reached the requested size");
        const Node v_minus = static_cast<Node>(uniform_below(rng, static_cast<std::uint64_t>(n)));
        const Instance inst(std::move(*tree), {v_minus}, {}, 1);

        ResultRow proto = base_row(cfg, n, t);
        proto.lambda = lambda;
        const Timed exact = timed([&] { return brute_force(inst); });
        const Timed search = timed([&] { return tgsta(inst); });
        stp_rows(inst, proto, "tgsta", search, exact, true, res.rows);
      }
      ++cell;
    }
  }
  return res;
}

ExperimentResult run_er_treelike(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentResult res;
  std::size_t cell = 0;
  std::size_t zero_optimum_resamples = 0;
  for (int n : cfg.n) {
    for (double a : cfg.a) {
      const double p = er_probability(n, a);
      for (int t = 0; t < cfg.trials; ++t) {
        Rng rng(trial_seed(cfg, cell, t));
        // Instances whose optimum is exactly zero are redrawn: the relative
        // success test is undefined there.
        for (int attempt = 0;; ++attempt) {
          if (attempt == kMaxResamples) throw InvalidArgument("no instance with nonzero optimum");
          Graph g = connected_erdos_renyi(n, p, rng());
          const Node v_minus = static_cast<Node>(uniform_below(rng, static_cast<std::uint64_t>(n)));
          const Instance inst(std::move(g), {v_minus}, {}, 1);
          const Timed exact = timed([&] { return brute_force(inst); });
          if (std::abs(exact.outcome.objective) <= 1e-12) {
            ++zero_optimum_resamples;
            continue;
          }
          ResultRow proto = base_row(cfg, n, t);
          proto.a = a;
          proto.p = p;
          const Timed search = timed([&] { return tree_like_sta(inst, v_minus); });
          stp_rows(inst, proto, "tree-like", search, exact, false, res.rows);
          break;
        }
      }
      ++cell;
    }
  }
  res.notes.push_back("zero-optimum instances redrawn: " + std::to_string(zero_optimum_resamples));
  return res;
}

ExperimentResult run_treelike_otp(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentResult res;
  res.notes.push_back("k_plus=" + std::to_string(cfg.k_plus) + " minus_count=" +
                      std::to_string(cfg.minus_count) + " p=" + format_real(cfg.p));
  std::size_t cell = 0;
  for (int n : cfg.n) {
    for (int t = 0; t < cfg.trials; ++t) {
      Rng rng(trial_seed(cfg, cell, t));
      Graph g = connected_erdos_renyi(n, cfg.p, rng());
      NodeSet minus = sample_nodes(n, cfg.minus_count, rng);
      const Instance inst(std::move(g), std::move(minus), {}, cfg.k_plus);

      ResultRow proto = base_row(cfg, n, t);
      proto.p = cfg.p;
      const Timed tree = timed([&] { return tree_like_otp(inst); });
      const Timed gre = timed([&] { return greedy(inst); });
      res.rows.push_back(outcome_row(proto, "tree-like-otp", tree, step_fraction(tree.outcome, n), {}));
      res.rows.push_back(outcome_row(proto, "greedy", gre, step_fraction(gre.outcome, n), {}));
    }
    ++cell;
  }
  return res;
}

ExperimentResult run_facebook(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentResult res;
  EdgeListStats stats;
  Graph g = load_edge_list(cfg.graph, &stats);
  const int n = g.node_count();
  const double density = static_cast<double>(g.edge_count()) / (static_cast<double>(n) * n);
  res.notes.push_back("graph " + cfg.graph.string() + ": N=" + std::to_string(n) +
                      " M=" + std::to_string(g.edge_count()) + " density=" + format_real(density) +
                      " self_loops_dropped=" + std::to_string(stats.self_loops_dropped));
  if (!is_connected(g)) throw InvalidArgument("facebook graph must be connected");
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng(trial_seed(cfg, 0, t));
    const Node v_minus = static_cast<Node>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    const Instance inst(g, {v_minus}, {}, 1);
    ResultRow proto = base_row(cfg, n, t);
    const Timed exact = timed([&] { return brute_force(inst); });
    const Timed search = timed([&] { return tree_like_sta(inst, v_minus); });
    stp_rows(inst, proto, "tree-like", search, exact, false, res.rows);
  }
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::er_blocking:
      return run_er_blocking(cfg);
    case Experiment::random_trees:
      return run_random_trees(cfg);
    case Experiment::er_treelike:
      return run_er_treelike(cfg);
    case Experiment::treelike_otp:
      return run_treelike_otp(cfg);
    case Experiment::facebook:
      return run_facebook(cfg);
  }
  throw InvalidArgument("unknown experiment");
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_csv(std::span<const ResultRow> rows, std::ostream& out, bool include_wall_time) {
  out << "experiment,n,a,p,lambda,k_plus,minus_count,trial,algorithm,f_plus,visited_fraction,"
         "evaluations,success";
  if (include_wall_time) out << ",wall_time_ms";
  out << '\n';
  auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  for (const ResultRow& r : rows) {
    out << r.experiment << ',' << r.n << ',' << opt(r.a) << ',' << format_real(r.p) << ','
        << opt(r.lambda) << ',' << r.k_plus << ',' << r.minus_count << ',' << r.trial << ','
        << r.algorithm << ',' << format_real(r.f_plus) << ',' << format_real(r.visited_fraction)
        << ',' << r.evaluations << ',' << (r.success ? (*r.success ? "1" : "0") : "");
    if (include_wall_time) out << ',' << format_real(r.wall_time_ms);
    out << '\n';
  }
}

std::string to_csv(std::span<const ResultRow> rows, bool include_wall_time) {
  std::ostringstream ss;
  write_csv(rows, ss, include_wall_time);
  return ss.str();
}

}  // namespace otp
