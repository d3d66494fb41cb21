// Command-line front end: graph generation, single-instance solving and the
// batch experiments. Exit codes: 0 ok, 1 usage, 2 solver failure, 3 I/O.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "otp/error.hpp"
#include "otp/harness.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kSolver = 2, kIo = 3 };

struct GenerateArgs {
  std::string family = "er";
  int n = 0;
  std::optional<double> a;
  std::optional<double> p;
  double lambda = 3.0;
  std::uint64_t seed = 1;
  bool allow_disconnected = false;
  std::string out;
};

struct SolveArgs {
  std::string graph;
  std::vector<int> minus;
  std::vector<int> plus_base;
  int k_plus = 1;
  std::string algorithm = "greedy";
  std::uint64_t seed = 1;
};

struct ExperimentArgs {
  std::string experiment;
  std::vector<int> n;
  std::vector<double> a;
  std::vector<double> lambda;
  std::optional<double> p;
  std::optional<int> trials;
  std::optional<int> k_plus;
  std::optional<int> minus_count;
  std::uint64_t seed = 1;
  std::string graph;
  std::string out;
};

int run_generate(const GenerateArgs& args) {
  otp::Graph g;
  if (args.family == "er") {
    double p;
    if (args.p) {
      p = *args.p;
    } else if (args.a) {
      p = *args.a * std::log(static_cast<double>(args.n)) / args.n;
    } else {
      throw otp::InvalidArgument("er needs --a or --p");
    }
    g = args.allow_disconnected ? otp::generate_erdos_renyi(args.n, p, args.seed)
                                : otp::connected_erdos_renyi(args.n, p, args.seed);
  } else if (args.family == "complete") {
    g = otp::generate_complete(args.n);
  } else if (args.family == "line") {
    g = otp::generate_line(args.n);
  } else if (args.family == "star") {
    g = otp::generate_star(args.n - 1);
  } else if (args.family == "poisson-tree") {
    g = otp::generate_poisson_tree(args.lambda, args.n, args.seed);
  } else {
    throw otp::InvalidArgument("unknown family '" + args.family + "'");
  }
  if (args.out.empty() || args.out == "-") {
    otp::write_edge_list(g, std::cout);
  } else {
    otp::write_edge_list(g, std::filesystem::path(args.out));
  }
  std::cerr << "# generated " << args.family << ": N=" << g.node_count() << " M=" << g.edge_count()
            << '\n';
  return kOk;
}

std::string join(const otp::NodeSet& s, char sep) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(s[i]);
  }
  return out;
}

int run_solve(const SolveArgs& args) {
  otp::Graph g = otp::load_edge_list(args.graph);
  const otp::Instance inst(std::move(g), args.minus, args.plus_base, args.k_plus);
  const otp::StrategyOutcome o = otp::run_algorithm(args.algorithm, inst);
  std::cout << "algorithm,chosen_set,f_plus,evaluations,visited_nodes\n"
            << args.algorithm << ',' << join(o.chosen_set, ';') << ',' << otp::format_real(o.objective)
            << ',' << o.equilibrium_evaluations << ',' << o.visited_nodes << '\n';
  std::cout << "# " << args.algorithm << " on N=" << inst.node_count()
            << " M=" << inst.graph().edge_count() << " with - at {" << join(inst.minus_set(), ' ')
            << "}: + targets {" << join(o.chosen_set, ' ') << "}, F+ = " << otp::format_real(o.objective)
            << " after " << o.equilibrium_evaluations << " evaluations\n";
  return kOk;
}

int run_experiment(const ExperimentArgs& args) {
  otp::ExperimentConfig cfg = otp::default_config(otp::parse_experiment(args.experiment));
  if (!args.n.empty()) cfg.n = args.n;
  if (!args.a.empty()) cfg.a = args.a;
  if (!args.lambda.empty()) cfg.lambda = args.lambda;
  if (args.p) cfg.p = *args.p;
  if (args.trials) cfg.trials = *args.trials;
  if (args.k_plus) cfg.k_plus = *args.k_plus;
  if (args.minus_count) cfg.minus_count = *args.minus_count;
  cfg.seed = args.seed;
  cfg.graph = args.graph;
  otp::validate(cfg);

  const otp::ExperimentResult res = otp::run_experiment(cfg);
  for (const std::string& note : res.notes) std::cerr << "# " << note << '\n';
  if (args.out.empty() || args.out == "-") {
    otp::write_csv(res.rows, std::cout);
  } else {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw otp::IoError("cannot open " + args.out + " for writing");
    otp::write_csv(res.rows, out);
    if (!out) throw otp::IoError("write failure on " + args.out);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal targeting of regular agents against a competing stubborn agent"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a generated graph as an edge list");
  generate->add_option("--family", gen.family, "er | complete | line | star | poisson-tree")
      ->capture_default_str();
  generate->add_option("--n", gen.n, "Node count (max nodes for poisson-tree)")->required();
  generate->add_option("--a", gen.a, "ER connectivity: p = a log(n) / n");
  generate->add_option("--p", gen.p, "ER edge probability");
  generate->add_option("--lambda", gen.lambda, "Poisson offspring mean")->capture_default_str();
  generate->add_option("--seed", gen.seed)->capture_default_str();
  generate->add_flag("--allow-disconnected", gen.allow_disconnected, "Do not resample ER graphs");
  generate->add_option("--out", gen.out, "Output path (default stdout)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one targeting instance");
  solve_cmd->add_option("--graph", solve.graph, "Edge-list file")->required();
  solve_cmd->add_option("--minus", solve.minus, "Nodes linked to the - agent")->delimiter(',')->required();
  solve_cmd->add_option("--plus-base", solve.plus_base, "Nodes already linked to the + agent")
      ->delimiter(',');
  solve_cmd->add_option("--k-plus", solve.k_plus, "Budget of new + links")->capture_default_str();
  solve_cmd->add_option("--algorithm", solve.algorithm,
                        "brute | degree | greedy | blocking | tgsta | tree-like | tree-like-otp")
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed, "Accepted for symmetry; every solver is deterministic");

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a seeded batch experiment, CSV out");
  exp_cmd->add_option("--experiment", exp.experiment,
                      "er-blocking | random-trees | er-treelike | treelike-otp | facebook")
      ->required();
  exp_cmd->add_option("--n", exp.n, "Node counts")->delimiter(',');
  exp_cmd->add_option("--a", exp.a, "ER connectivity parameters")->delimiter(',');
  exp_cmd->add_option("--lambda", exp.lambda, "Poisson offspring means")->delimiter(',');
  exp_cmd->add_option("--p", exp.p, "Fixed ER edge probability (treelike-otp)");
  exp_cmd->add_option("--trials", exp.trials);
  exp_cmd->add_option("--k-plus", exp.k_plus);
  exp_cmd->add_option("--minus-count", exp.minus_count);
  exp_cmd->add_option("--seed", exp.seed)->capture_default_str();
  exp_cmd->add_option("--graph", exp.graph, "Edge list (facebook)");
  exp_cmd->add_option("--out", exp.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*exp_cmd) return run_experiment(exp);
  } catch (const otp::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const otp::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolver;
  } catch (const otp::InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolver;
  }
  return kUsage;
}
