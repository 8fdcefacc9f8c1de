#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bergman/poafd.hpp"
#include "json.hpp"

namespace bergman {

/// Per-step record shared by POAFD and the Fourier baseline.
struct MethodTrace {
  std::string method;  ///< "poafd" or "fourier"
  double norm_squared = 0.0;
  std::vector<cplx> coeffs;
  std::vector<double> residual_energy;  ///< after step k (1-based index k-1)
  std::string stop_reason;

  std::size_t steps() const { return coeffs.size(); }
  /// sqrt(max(0, residual_k) / ||f||^2); 1 for k = 0.
  double relative_error(std::size_t k) const;
  /// Smallest k with relative_error(k) <= target.
  std::optional<std::size_t> steps_to(double target) const;
};

MethodTrace trace_of(const Decomposition& d);

/// Orthogonal projection onto the normalised monomials z^k / ||z^k||,
/// k = 0 .. n_terms-1. Disc only; black-box targets are rejected.
MethodTrace fourier_baseline(const TargetFunction& f, const SpaceSpec& space, int n_terms);

/// Builds a target from its JSON description (see README). `seed` drives
/// randomised fixtures.
TargetFunction make_target(const nlohmann::json& j, const SpaceSpec& space, std::uint64_t seed);

SpaceSpec make_space(const nlohmann::json& j);
SelectionConfig make_selection(const nlohmann::json& j);

struct ExperimentConfig {
  std::string name = "experiment";
  std::string kind = "decompose";  ///< or "alpha_grid"
  nlohmann::json space;
  nlohmann::json target;
  bool run_poafd = true;
  bool run_fourier = true;
  int n_iter = 10;
  int fourier_terms = 0;  ///< 0: same as n_iter
  std::vector<double> error_targets;
  std::optional<int> compare_fourier_at;  ///< report POAFD steps to the Fourier error at this many terms
  SelectionConfig selection;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  int reconstruction_samples = 64;
  double reconstruction_radius = 0.9;
  // alpha_grid
  std::vector<double> betas;
  std::vector<double> alpha_offsets{-1.0, -0.5, 0.0, 0.5, 1.0};
  cplx grid_a = 0.95;
  int grid_degree = 1200;

  /// Throws ConfigError on schema violations.
  static ExperimentConfig from_json(const nlohmann::json& j);
};

struct DecomposeResult {
  SpaceSpec space;
  std::vector<MethodTrace> traces;  ///< sorted by method name
  std::optional<Decomposition> poafd;
  nlohmann::json summary;
};

struct AlphaGridCell {
  double beta;
  double alpha;
  MethodTrace trace;
};

struct RunResult {
  ExperimentConfig config;
  std::optional<DecomposeResult> decompose;
  std::vector<AlphaGridCell> grid;
  nlohmann::json summary;
};

RunResult run_experiment(const ExperimentConfig& cfg, bool verbose = false);

/// Writes CSV/JSON/gnuplot files into `dir` and returns their paths.
std::vector<std::filesystem::path> emit_report(const RunResult& result, const std::filesystem::path& dir);

/// Decay CSV text: header plus rows sorted by (method, k).
std::string decay_csv(const std::vector<MethodTrace>& traces);

}  // namespace bergman
