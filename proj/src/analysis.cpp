#include "bergman/analysis.hpp"

#include <cmath>
#include <numbers>

#include "bergman/error.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {
namespace {

nlohmann::json finite_or_string(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(std::isnan(v) ? "nan" : "inf");
}

// G(r) = int_{-pi}^{pi} |1 - r e^{it}|^{-2p} dt, split geometrically near
// t = 0 where the integrand peaks at width ~ 1 - r.
double angular_integral(double r, double p, const Rule1D& ref) {
  const double h = 1.0 - r;
  std::vector<double> breaks{0.0};
  for (double t = h; t < std::numbers::pi; t *= 2.0) breaks.push_back(t);
  breaks.push_back(std::numbers::pi);
  double sum = 0.0;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double lo = breaks[b], hi = breaks[b + 1];
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
      const double t = mid + half * ref.nodes[i];
      const double s = std::sin(0.5 * t);
      const double q = h * h + 4.0 * r * s * s;
      sum += half * ref.weights[i] * std::pow(q, -p);
    }
  }
  return 2.0 * sum;
}

// int_{ra}^{rb} (1+alpha)(1-r^2)^alpha r G(r) dr / pi
double shell_integral(double ra, double rb, double alpha, double p) {
  static const Rule1D radial = gauss_legendre(24);
  static const Rule1D angular = gauss_legendre(16);
  // Geometric sub-panels towards rb, where G grows.
  constexpr int kPanels = 4;
  double sum = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    const double lo = rb - (rb - ra) * std::pow(0.5, k);
    const double hi = k + 1 < kPanels ? rb - (rb - ra) * std::pow(0.5, k + 1) : rb;
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
      const double r = mid + half * radial.nodes[i];
      sum += half * radial.weights[i] * (1.0 + alpha) * std::pow(1.0 - r * r, alpha) * r *
             angular_integral(r, p, angular);
    }
  }
  return sum / std::numbers::pi;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? std::nan("") : (n * sxy - sx * sy) / den;
}

}  // namespace

double norm_multiplier(int k, double alpha, NormMode mode) {
  if (!(alpha >= -1.0)) throw DomainError("norm multiplier needs alpha >= -1");
  if (mode == NormMode::PowerEquiv) return std::pow(k + 1.0, -(alpha + 1.0));
  return std::exp(std::lgamma(k + 1.0) + std::lgamma(alpha + 2.0) - std::lgamma(k + alpha + 2.0));
}

double coefficient_norm(const std::vector<cplx>& coeffs, double alpha, NormMode mode) {
  double sum = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    sum += norm_multiplier(static_cast<int>(k), alpha, mode) * std::norm(coeffs[k]);
  }
  return sum;
}

bool FBetaClass::on_boundary(double alpha) const {
  return beta > -1.5 && std::abs(alpha - (2.0 + 2.0 * beta)) < 1e-12;
}

FBetaClass classify_f_beta(double beta) {
  if (beta < -1.5) return {beta, true, -1.0, "Hardy member, hence in every A^2_alpha"};
  if (beta == -1.5) return {beta, false, -1.0, "in every A^2_alpha, not in the Hardy space"};
  char buf[96];
  std::snprintf(buf, sizeof buf, "in A^2_alpha iff alpha > %g", 2.0 + 2.0 * beta);
  return {beta, false, 2.0 + 2.0 * beta, buf};
}

std::vector<double> default_probe_radii() {
  std::vector<double> r;
  for (int j = 1; j <= 12; ++j) r.push_back(1.0 - std::ldexp(1.0, -j));
  return r;
}

MembershipReport membership_probe(double beta, double alpha, const std::vector<double>& radii,
                                  int fit_points) {
  if (!(alpha > -1.0)) throw DomainError("membership probe needs alpha > -1");
  if (radii.empty()) throw DomainError("membership probe needs radii");
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (!(radii[j] > 0.0) || !(radii[j] < 1.0) || (j > 0 && !(radii[j] > radii[j - 1]))) {
      throw DomainError("probe radii must increase inside (0, 1)");
    }
  }
  MembershipReport rep;
  rep.beta = beta;
  rep.alpha = alpha;
  rep.radii = radii;
  const double p = 2.0 + beta;
  double total = 0.0;
  double prev = 0.0;
  for (double r : radii) {
    const double inc = shell_integral(prev, r, alpha, p);
    const bool bad = !std::isfinite(inc);
    rep.flagged.push_back(bad);
    rep.increments.push_back(inc);
    if (!bad) total += inc;
    rep.partial_integrals.push_back(total);
    prev = r;
  }

  std::vector<double> x, y;
  const std::size_t start = radii.size() > static_cast<std::size_t>(fit_points) ? radii.size() - fit_points : 0;
  for (std::size_t j = start; j < radii.size(); ++j) {
    if (rep.flagged[j] || !(rep.increments[j] > 0.0)) continue;
    x.push_back(std::log(1.0 - radii[j]));
    y.push_back(std::log(rep.increments[j]));
  }
  rep.fitted_slope = x.size() >= 2 ? least_squares_slope(x, y) : std::nan("");
  rep.predicted_slope = alpha + 1.0 - std::max(0.0, 3.0 + 2.0 * beta);

  if (!std::isfinite(rep.fitted_slope) || std::abs(rep.fitted_slope) <= kSlopeBand) {
    rep.verdict = "indeterminate";
  } else {
    rep.verdict = rep.fitted_slope > 0.0 ? "member" : "non-member";
  }
  const FBetaClass cls = classify_f_beta(beta);
  if (rep.verdict == "indeterminate") {
    rep.matches_classification = cls.on_boundary(alpha);
  } else {
    rep.matches_classification = (rep.verdict == "member") == cls.member(alpha);
  }
  return rep;
}

nlohmann::json MembershipReport::to_json() const {
  nlohmann::json j;
  j["beta"] = beta;
  j["alpha"] = alpha;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < radii.size(); ++k) {
    rows.push_back({{"r", radii[k]},
                    {"partial_integral", finite_or_string(partial_integrals[k])},
                    {"increment", finite_or_string(increments[k])},
                    {"flagged", static_cast<bool>(flagged[k])}});
  }
  j["radii"] = rows;
  j["fitted_slope"] = finite_or_string(fitted_slope);
  j["predicted_slope"] = predicted_slope;
  j["verdict"] = verdict;
  j["matches_classification"] = matches_classification;
  return j;
}

SeriesProbe probe_series(double alpha, const std::function<double(long)>& coeff_sq,
                         const SeriesProbeOptions& opts) {
  if (opts.terms < 8) throw DomainError("series probe needs at least 8 terms");
  SeriesProbe out{};
  out.alpha = alpha;
  out.terms = opts.terms;
  std::vector<double> blocks;  // D_n = sum over k in [2^n - 1, 2^{n+1} - 1)
  double block = 0.0;
  long block_end = 1;
  double half_sum = 0.0;
  for (long k = 0; k < opts.terms; ++k) {
    const double t = norm_multiplier(static_cast<int>(k), alpha, opts.mode) * coeff_sq(k);
    out.partial_sum += t;
    block += t;
    if (k + 1 == block_end) {
      blocks.push_back(block);
      block = 0.0;
      block_end = 2 * block_end + 1;
    }
    if (k + 1 == opts.terms / 2) half_sum = out.partial_sum;
  }
  out.last_gap = out.partial_sum - half_sum;
  out.crossed_threshold = out.partial_sum > opts.threshold;

  const std::size_t nb = blocks.size();
  const std::size_t used = std::min<std::size_t>(3, nb > 1 ? nb - 1 : 0);
  double slope = 0.0;
  for (std::size_t i = nb - used; i < nb; ++i) slope += std::log2(blocks[i] / blocks[i - 1]);
  out.block_slope = used > 0 ? slope / used : std::nan("");

  if (!std::isfinite(out.block_slope)) {
    out.verdict = "indeterminate";
  } else if (out.block_slope <= opts.convergent_below) {
    out.verdict = "convergent";
  } else if (out.block_slope >= opts.divergent_above) {
    out.verdict = "divergent";
  } else {
    out.verdict = "indeterminate";
  }
  return out;
}

nlohmann::json SeriesProbe::to_json() const {
  return {{"alpha", alpha},
          {"terms", terms},
          {"partial_sum", finite_or_string(partial_sum)},
          {"last_gap", finite_or_string(last_gap)},
          {"crossed_threshold", crossed_threshold},
          {"block_slope", finite_or_string(block_slope)},
          {"verdict", verdict}};
}

InclusionReport inclusion_probe(double alpha1, double alpha2, const SeriesProbeOptions& opts) {
  if (!(alpha1 > -1.0) || !(alpha2 > alpha1)) {
    throw DomainError("inclusion probe needs -1 < alpha1 < alpha2");
  }
  InclusionReport rep;
  rep.alpha1 = alpha1;
  rep.alpha2 = alpha2;
  rep.delta = -1.0 - 0.5 * (alpha1 + alpha2);
  const double expo = -(1.0 + rep.delta);
  auto witness = [expo](long k) { return std::pow(k + 1.0, expo); };
  rep.lower = probe_series(alpha1, witness, opts);
  rep.upper = probe_series(alpha2, witness, opts);
  rep.separates = rep.lower.verdict == "divergent" && rep.upper.verdict == "convergent";
  return rep;
}

nlohmann::json InclusionReport::to_json() const {
  return {{"alpha1", alpha1},
          {"alpha2", alpha2},
          {"delta", delta},
          {"lower", lower.to_json()},
          {"upper", upper.to_json()},
          {"separates", separates}};
}

}  // namespace bergman
