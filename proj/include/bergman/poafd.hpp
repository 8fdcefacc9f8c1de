#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bergman/orthosystem.hpp"

namespace bergman {

struct SelectionConfig {
  // Disc grid: the origin plus `radial_levels` circles with 1 - r spaced
  // geometrically from 1 down to boundary_margin, `angular_count` points each.
  int radial_levels = 64;
  int angular_count = 256;
  // Half-plane grid: `im_levels` log-spaced heights in [hp_delta, hp_radius]
  // times `re_count` abscissae (0 and geometric in |x| on [1e-2, hp_radius]).
  int im_levels = 64;
  int re_count = 255;
  double hp_delta = 1e-3;
  double hp_radius = 100.0;

  int refine_rounds = 2;
  int refine_half_points = 4;  ///< local grid is (2P+1) x (2P+1)
  // Compass search after the refinement rounds, stopped once the step falls
  // below this length. 0 disables it.
  double polish_tol = 1e-9;
  double boundary_margin = 1e-3;
  int max_multiplicity = 8;
  int threads = 0;  ///< 0: hardware concurrency

  /// Throws ConfigError on an empty grid or nonpositive margin.
  void validate() const;
};

/// |<f, B^b_{n+1}>| for the candidate obtained by appending b to sys, where
/// d holds <f, B_k> for the current system. Zero when the candidate kernel
/// is numerically spanned.
double selection_objective(const BroSystem& sys, const TargetFunction& f, const std::vector<cplx>& d,
                           cplx b);
/// Same, computing d from sys.
double selection_objective(const BroSystem& sys, const TargetFunction& f, cplx b);

struct Iteration {
  cplx point;
  int multiplicity;
  cplx coeff;              ///< <f, B_k>
  double residual_energy;  ///< ||f_{k+1}||^2
};

struct Decomposition {
  SpaceSpec space;
  std::string target_label;
  double norm_squared = 0.0;
  std::vector<Iteration> iterations;
  BroSystem system;
  std::string stop_reason;

  explicit Decomposition(const SpaceSpec& s) : space(s), system(s) {}

  std::vector<cplx> coefficients() const;
  /// sqrt(max(0, residual) / ||f||^2) after k steps (k = 0 gives 1).
  double relative_error(std::size_t k) const;

  /// sum_k coeff_k B_k(z) and its derivatives.
  cplx reconstruct(cplx z) const;
  cplx reconstruct_deriv(cplx z, int order) const;

  nlohmann::json to_json() const;
};

/// Grid argmax of the objective followed by local refinement. A maximiser
/// within kCoincideTol of an existing parameter is returned as that
/// parameter exactly. Throws SelectionExhausted when the objective vanishes
/// or the winner would exceed max_multiplicity.
cplx select_next(const BroSystem& sys, const TargetFunction& f, const SelectionConfig& cfg);

/// Runs n_iter maximal selections. Stops early (recording stop_reason) when
/// the selection is exhausted or the extension degenerates.
Decomposition decompose(const TargetFunction& f, const SpaceSpec& space, const SelectionConfig& cfg,
                        int n_iter);

struct RateBoundRow {
  std::size_t k;  ///< f_1 = f
  double residual_norm;
  double bound;  ///< M / sqrt(k)
  bool violated;
};

/// ||f_k|| against M / sqrt(k) for k = 1..n+1. Throws ConfigError when M is
/// not positive and finite.
std::vector<RateBoundRow> rate_bound(const Decomposition& d, double M);

}  // namespace bergman
