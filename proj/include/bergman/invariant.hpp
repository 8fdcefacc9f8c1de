#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bergman/space.hpp"
#include "json.hpp"

namespace bergman {

/// H_a(z) = (|a|/a) (a - z)/(1 - conj(a) z) (2 - (|a|/a)(a - z)/(1 - conj(a) z)).
/// Undefined for a = 0, which is rejected.
cplx horowitz_factor(cplx a, cplx z);

/// Radial law r_j = 1 - c j^{-p} for j >= first.
struct RadialLaw {
  double c = 1.0;
  double p = 1.0;
  int first = 1;

  double radius(int j) const;
  /// (1 - r_j)^q = c^q j^{-pq}
  double gap_power(int j, double q) const;
};

/// Finite zero set with multiplicities, or a truncation of a law-given one.
class ZeroSequence {
 public:
  enum class AngleRule { Equispaced, Random };

  static ZeroSequence explicit_points(std::vector<cplx> points, std::vector<int> multiplicities = {});
  /// Points j = first .. first + count - 1 of the law, with angles
  /// 2 pi j / count (Equispaced) or uniform from a seeded generator (Random).
  static ZeroSequence from_law(const RadialLaw& law, int count, AngleRule rule, std::uint64_t seed = 0);
  /// {"points": [[re, im], ...], "multiplicities": [...]} or
  /// {"law": {"c": .., "p": .., "first": ..}, "count": n,
  ///  "angles": "equispaced"|"random", "seed": s}
  static ZeroSequence from_json(const nlohmann::json& j);

  const std::vector<cplx>& points() const { return points_; }
  const std::vector<int>& multiplicities() const { return mult_; }
  const std::optional<RadialLaw>& law() const { return law_; }
  /// Points repeated per multiplicity.
  std::vector<cplx> expanded() const;

 private:
  std::vector<cplx> points_;
  std::vector<int> mult_;
  std::optional<RadialLaw> law_;
};

/// Product of the first n_terms factors of the expanded sequence.
cplx horowitz_product(const ZeroSequence& seq, cplx z, std::size_t n_terms);

struct ZeroConditionReport {
  double partial_sum;  ///< sum over the stored points of (1 - |a|)^2
  double tail_bound;   ///< analytic tail estimate beyond them (0 when finite)
  double sum;          ///< partial_sum + tail_bound, infinite when divergent
  bool satisfied;
};

/// sum (1 - |a_k|)^2 < infinity.
ZeroConditionReport zero_condition(const ZeroSequence& seq);

struct EpsilonRow {
  double eps;
  double sum;  ///< sum (1 - r_j)^{1+eps}, infinite when the series diverges
  double ratio;
  std::string note;
};

struct EpsilonReport {
  std::vector<EpsilonRow> rows;
  std::string trend;    ///< "decreasing", "increasing", "flat" or "divergent"
  std::string verdict;  ///< "consistent", "inconsistent" or "indeterminate"
  static constexpr const char* kCaveat =
      "numerical probe of a limsup on a finite eps grid; not a proof";
  nlohmann::json to_json() const;
};

/// ratio(eps) = sum (1 - r_j)^{1+eps} / log(1/eps) on an eps grid, compared
/// with 1/4. Law sums are c^q zeta(p q) minus the skipped leading terms.
EpsilonReport epsilon_condition(const RadialLaw& law, const std::vector<double>& eps_grid = {0.2, 0.1, 0.05, 0.02, 0.01});
/// Finite sequences: the sums are finite for every eps.
EpsilonReport epsilon_condition(const ZeroSequence& seq, const std::vector<double>& eps_grid = {0.2, 0.1, 0.05, 0.02, 0.01});

}  // namespace bergman
