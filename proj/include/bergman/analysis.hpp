#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bergman/space.hpp"
#include "json.hpp"

namespace bergman {

enum class NormMode {
  ExactGamma,  ///< k! Gamma(alpha+2) / Gamma(k+alpha+2)
  PowerEquiv,  ///< (k+1)^{-(alpha+1)}
};

/// Coefficient multiplier of z^k in the chosen mode. alpha = -1 is allowed
/// and gives the Hardy multiplier 1.
double norm_multiplier(int k, double alpha, NormMode mode);

/// sum_k multiplier(k) |a_k|^2.
double coefficient_norm(const std::vector<cplx>& coeffs, double alpha, NormMode mode);

/// Membership of f_beta(z) = (1 - z)^{-(2+beta)}.
struct FBetaClass {
  double beta;
  bool hardy;
  /// Members are exactly the alpha > threshold; -1 when every alpha > -1 is.
  double alpha_threshold;
  std::string description;

  bool member(double alpha) const { return alpha > alpha_threshold; }
  /// alpha on the line alpha = 2 + 2 beta, where numerics cannot decide.
  bool on_boundary(double alpha) const;
};

FBetaClass classify_f_beta(double beta);

struct MembershipReport {
  double beta;
  double alpha;
  std::vector<double> radii;
  std::vector<double> partial_integrals;  ///< int_{|z| <= r} |f_beta|^2 dA_alpha
  std::vector<double> increments;         ///< over [r_{j-1}, r_j], j >= 1 (r_0 = 0)
  std::vector<bool> flagged;              ///< non-finite quadrature on that shell
  double fitted_slope;     ///< log increment against log(1 - r), last `fit_points` shells
  double predicted_slope;  ///< alpha + 1 - max(0, 3 + 2 beta)
  std::string verdict;     ///< "member", "non-member" or "indeterminate"
  bool matches_classification;
  nlohmann::json to_json() const;
};

/// Slopes within this of zero are indeterminate.
inline constexpr double kSlopeBand = 0.15;

/// Default radii 1 - 2^{-j}, j = 1..12.
std::vector<double> default_probe_radii();

MembershipReport membership_probe(double beta, double alpha,
                                  const std::vector<double>& radii = default_probe_radii(),
                                  int fit_points = 6);

/// Convergence probe of sum_k multiplier(k) |a_k|^2 truncated at K terms.
struct SeriesProbe {
  double alpha;
  long terms;
  double partial_sum;
  double last_gap;         ///< S_K - S_{K/2}
  bool crossed_threshold;  ///< S_K exceeded the divergence threshold
  /// log2(D_{n+1} / D_n) for dyadic block sums D_n, averaged over the last
  /// three blocks; tends to 1 - gamma for terms ~ k^{-gamma}.
  double block_slope;
  std::string verdict;  ///< "convergent", "divergent" or "indeterminate"
  nlohmann::json to_json() const;
};

struct SeriesProbeOptions {
  long terms = 100000;
  double threshold = 1e3;
  NormMode mode = NormMode::ExactGamma;
  double convergent_below = -0.05;  ///< block_slope <= this: convergent
  double divergent_above = -0.02;   ///< block_slope >= this: divergent
};

SeriesProbe probe_series(double alpha, const std::function<double(long)>& coeff_sq,
                         const SeriesProbeOptions& opts = {});

struct InclusionReport {
  double alpha1;
  double alpha2;
  double delta;  ///< witness |a_k|^2 = (k+1)^{-(1+delta)}
  SeriesProbe lower;
  SeriesProbe upper;
  bool separates;  ///< divergent at alpha1 and convergent at alpha2
  nlohmann::json to_json() const;
};

/// Witness with delta = -1 - (alpha1 + alpha2) / 2, which lies in A^2_{alpha2}
/// but not in A^2_{alpha1}.
InclusionReport inclusion_probe(double alpha1, double alpha2, const SeriesProbeOptions& opts = {});

}  // namespace bergman
