#include "bergman/invariant.hpp"

#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "bergman/error.hpp"
#include "bergman/rng.hpp"

namespace bergman {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_disc_point(cplx z, const char* what) {
  if (!(std::abs(z) < 1.0)) throw DomainError(std::string(what) + " " + format_point(z) + " is outside the disc");
}

// sum_{j >= first} c^q j^{-pq}, infinite when pq <= 1.
double law_sum(const RadialLaw& law, double q) {
  const double s = law.p * q;
  if (!(s > 1.0)) return kInf;
  double head = 0.0;
  for (int j = 1; j < law.first; ++j) head += std::pow(j, -s);
  return std::pow(law.c, q) * (boost::math::zeta(s) - head);
}

}  // namespace

cplx horowitz_factor(cplx a, cplx z) {
  if (a == 0.0) throw DomainError("Horowitz factor is undefined for a zero at the origin");
  require_disc_point(a, "zero");
  require_disc_point(z, "evaluation point");
  const cplx u = std::abs(a) / a;
  const cplx phi = u * (a - z) / (1.0 - std::conj(a) * z);
  return phi * (2.0 - phi);
}

double RadialLaw::radius(int j) const { return 1.0 - c * std::pow(j, -p); }

double RadialLaw::gap_power(int j, double q) const { return std::pow(c, q) * std::pow(j, -p * q); }

ZeroSequence ZeroSequence::explicit_points(std::vector<cplx> points, std::vector<int> multiplicities) {
  if (multiplicities.empty()) multiplicities.assign(points.size(), 1);
  if (multiplicities.size() != points.size()) {
    throw ConfigError("zero sequence needs one multiplicity per point");
  }
  for (std::size_t k = 0; k < points.size(); ++k) {
    require_disc_point(points[k], "zero");
    if (multiplicities[k] < 1) throw ConfigError("zero multiplicities must be >= 1");
  }
  ZeroSequence s;
  s.points_ = std::move(points);
  s.mult_ = std::move(multiplicities);
  return s;
}

ZeroSequence ZeroSequence::from_law(const RadialLaw& law, int count, AngleRule rule, std::uint64_t seed) {
  if (count < 0) throw ConfigError("zero count must be >= 0");
  if (!(law.c > 0.0) || !(law.p > 0.0) || law.first < 1) {
    throw ConfigError("radial law needs c > 0, p > 0, first >= 1");
  }
  Rng rng(seed);
  std::vector<cplx> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    const int j = law.first + i;
    const double r = law.radius(j);
    if (!(r >= 0.0) || !(r < 1.0)) {
      throw ConfigError("radial law leaves [0, 1) at index " + std::to_string(j));
    }
    const double theta = rule == AngleRule::Equispaced ? 2.0 * std::numbers::pi * i / std::max(count, 1)
                                                       : 2.0 * std::numbers::pi * uniform01(rng);
    pts.push_back(std::polar(r, theta));
  }
  ZeroSequence s = explicit_points(std::move(pts));
  s.law_ = law;
  return s;
}

ZeroSequence ZeroSequence::from_json(const nlohmann::json& j) {
  try {
    if (j.contains("points")) {
      std::vector<cplx> pts;
      for (const auto& p : j.at("points")) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
      std::vector<int> mult;
      if (j.contains("multiplicities")) mult = j.at("multiplicities").get<std::vector<int>>();
      return explicit_points(std::move(pts), std::move(mult));
    }
    const auto& l = j.at("law");
    RadialLaw law{l.value("c", 1.0), l.at("p").get<double>(), l.value("first", 1)};
    const std::string angles = j.value("angles", std::string("equispaced"));
    AngleRule rule;
    if (angles == "equispaced") {
      rule = AngleRule::Equispaced;
    } else if (angles == "random") {
      rule = AngleRule::Random;
    } else {
      throw ConfigError("unknown angle rule '" + angles + "'");
    }
    return from_law(law, j.at("count").get<int>(), rule, j.value("seed", std::uint64_t{0}));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("zero sequence: ") + e.what());
  }
}

std::vector<cplx> ZeroSequence::expanded() const {
  std::vector<cplx> out;
  for (std::size_t k = 0; k < points_.size(); ++k) out.insert(out.end(), mult_[k], points_[k]);
  return out;
}

cplx horowitz_product(const ZeroSequence& seq, cplx z, std::size_t n_terms) {
  const std::vector<cplx> pts = seq.expanded();
  if (n_terms > pts.size()) {
    throw DomainError("requested " + std::to_string(n_terms) + " factors of a sequence of length " +
                      std::to_string(pts.size()));
  }
  for (const cplx& a : pts) {
    if (a == 0.0) throw DomainError("Horowitz product is undefined with a zero at the origin");
  }
  cplx prod = 1.0;
  for (std::size_t k = 0; k < n_terms; ++k) prod *= horowitz_factor(pts[k], z);
  return prod;
}

ZeroConditionReport zero_condition(const ZeroSequence& seq) {
  ZeroConditionReport r{};
  for (std::size_t k = 0; k < seq.points().size(); ++k) {
    r.partial_sum += seq.multiplicities()[k] * std::pow(1.0 - std::abs(seq.points()[k]), 2);
  }
  if (const auto& law = seq.law()) {
    // Tail sum_{j > J} c^2 j^{-2p} by the midpoint integral from J + 1/2.
    const double s = 2.0 * law->p;
    const double J = law->first + static_cast<double>(seq.points().size()) - 1.0;
    r.tail_bound = s > 1.0 ? law->c * law->c * std::pow(J + 0.5, 1.0 - s) / (s - 1.0) : kInf;
  }
  r.sum = r.partial_sum + r.tail_bound;
  r.satisfied = std::isfinite(r.sum);
  return r;
}

namespace {

EpsilonReport finish_report(std::vector<EpsilonRow> rows, bool first_power_summable) {
  EpsilonReport rep;
  rep.rows = std::move(rows);
  bool divergent = false;
  for (const EpsilonRow& row : rep.rows) divergent = divergent || !std::isfinite(row.sum);

  // Trend as eps decreases along the grid.
  if (divergent) {
    rep.trend = "divergent";
  } else if (rep.rows.size() < 2) {
    rep.trend = "flat";
  } else {
    const double first = rep.rows.front().ratio;
    const double last = rep.rows.back().ratio;
    if (last > first * (1.0 + 1e-9)) {
      rep.trend = "increasing";
    } else if (last < first * (1.0 - 1e-9)) {
      rep.trend = "decreasing";
    } else {
      rep.trend = "flat";
    }
  }

  const double last = rep.rows.empty() ? 0.0 : rep.rows.back().ratio;
  if (first_power_summable) {
    // ratio(eps) <= sum (1 - r_j) / log(1/eps) -> 0.
    rep.verdict = "consistent";
  } else if (divergent || (rep.trend == "increasing" && last >= 0.25)) {
    rep.verdict = "inconsistent";
  } else if (rep.trend != "increasing" && last < 0.25) {
    rep.verdict = "consistent";
  } else {
    rep.verdict = "indeterminate";
  }
  return rep;
}

void check_eps(double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
}

}  // namespace

EpsilonReport epsilon_condition(const RadialLaw& law, const std::vector<double>& eps_grid) {
  std::vector<EpsilonRow> rows;
  for (double eps : eps_grid) {
    check_eps(eps);
    EpsilonRow row{eps, law_sum(law, 1.0 + eps), 0.0, ""};
    row.ratio = row.sum / std::log(1.0 / eps);
    if (!std::isfinite(row.sum)) row.note = "series diverges: p(1+eps) <= 1";
    rows.push_back(row);
  }
  return finish_report(std::move(rows), std::isfinite(law_sum(law, 1.0)));
}

EpsilonReport epsilon_condition(const ZeroSequence& seq, const std::vector<double>& eps_grid) {
  if (seq.law()) return epsilon_condition(*seq.law(), eps_grid);
  std::vector<EpsilonRow> rows;
  for (double eps : eps_grid) {
    check_eps(eps);
    EpsilonRow row{eps, 0.0, 0.0, "finite sequence"};
    for (std::size_t k = 0; k < seq.points().size(); ++k) {
      row.sum += seq.multiplicities()[k] * std::pow(1.0 - std::abs(seq.points()[k]), 1.0 + eps);
    }
    row.ratio = row.sum / std::log(1.0 / eps);
    rows.push_back(row);
  }
  return finish_report(std::move(rows), true);
}

nlohmann::json EpsilonReport::to_json() const {
  nlohmann::json j;
  nlohmann::json rs = nlohmann::json::array();
  for (const EpsilonRow& r : rows) {
    rs.push_back({{"eps", r.eps},
                  {"sum", std::isfinite(r.sum) ? nlohmann::json(r.sum) : nlohmann::json("inf")},
                  {"ratio", std::isfinite(r.ratio) ? nlohmann::json(r.ratio) : nlohmann::json("inf")},
                  {"note", r.note}});
  }
  j["rows"] = rs;
  j["trend"] = trend;
  j["verdict"] = verdict;
  j["caveat"] = kCaveat;
  return j;
}

}  // namespace bergman
