#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "otp/graph.hpp"
#include "otp/heuristics.hpp"
#include "otp/random.hpp"

namespace otp {

enum class Experiment { er_blocking, random_trees, er_treelike, treelike_otp, facebook };

std::string_view experiment_name(Experiment e);
/// Throws InvalidArgument for an unknown name.
Experiment parse_experiment(std::string_view name);

struct ExperimentConfig {
  Experiment experiment = Experiment::er_blocking;
  std::vector<int> n;
  /// ER connectivity parameters; the edge probability is a log(N) / N.
  std::vector<double> a;
  std::vector<double> lambda;
  /// Fixed edge probability (treelike-otp only).
  double p = 0.1;
  int trials = 50;
  int k_plus = 5;
  int minus_count = 3;
  std::uint64_t seed = 1;
  /// Edge list for the facebook experiment.
  std::filesystem::path graph;
};

/// Full-scale defaults for each experiment.
ExperimentConfig default_config(Experiment e);

/// Throws InvalidArgument when a field is out of range for the experiment.
void validate(const ExperimentConfig& cfg);

struct ResultRow {
  std::string experiment;
  int n = 0;
  std::optional<double> a;
  double p = 0.0;
  std::optional<double> lambda;
  int k_plus = 0;
  int minus_count = 0;
  int trial = 0;
  std::string algorithm;
  double f_plus = 0.0;
  double visited_fraction = 0.0;
  std::size_t evaluations = 0;
  std::optional<bool> success;
  double wall_time_ms = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  /// Run metadata (e.g. graph size and density), one line each.
  std::vector<std::string> notes;
};

/// Per-trial seed: derive_seed(master, hash_tag(experiment), cell, trial).
std::uint64_t trial_seed(const ExperimentConfig& cfg, std::size_t cell, int trial);

/// Connected G(n, p), resampling with derived seeds until connected.
Graph connected_erdos_renyi(int n, double p, std::uint64_t seed);

/// `count` distinct nodes drawn uniformly from [0, n).
NodeSet sample_nodes(int n, int count, Rng& rng);

ExperimentResult run_er_blocking(const ExperimentConfig& cfg);
ExperimentResult run_random_trees(const ExperimentConfig& cfg);
ExperimentResult run_er_treelike(const ExperimentConfig& cfg);
ExperimentResult run_treelike_otp(const ExperimentConfig& cfg);
ExperimentResult run_facebook(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Header plus one line per row, LF endings, floats with 12 significant digits.
void write_csv(std::span<const ResultRow> rows, std::ostream& out, bool include_wall_time = true);
std::string to_csv(std::span<const ResultRow> rows, bool include_wall_time = true);

/// 12 significant digits, as used in every CSV output.
std::string format_real(double x);

}  // namespace otp
