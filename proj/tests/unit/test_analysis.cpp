#include <doctest.h>

#include <cmath>

#include "bergman/analysis.hpp"
#include "bergman/error.hpp"
#include "bergman/quadrature.hpp"
#include "oracles.hpp"

using namespace bergman;

TEST_CASE("coefficient_norm examples") {
  for (double alpha : {-0.5, 0.0, 2.0}) {
    CHECK(coefficient_norm({1.0}, alpha, NormMode::ExactGamma) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(coefficient_norm({1.0}, alpha, NormMode::PowerEquiv) == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(std::abs(coefficient_norm({0.0, 1.0}, 0.0, NormMode::ExactGamma) - 0.5) < 1e-15);
  for (double alpha : {0.5, 1.0, 2.0}) {
    const double ratio = norm_multiplier(1000, alpha, NormMode::ExactGamma) / norm_multiplier(1000, alpha, NormMode::PowerEquiv);
    const double g = std::tgamma(alpha + 2.0);
    CHECK(ratio >= 0.95 * g);
    CHECK(ratio <= 1.05 * g);
  }
  CHECK(norm_multiplier(7, -1.0, NormMode::ExactGamma) == doctest::Approx(1.0));
  CHECK_THROWS_AS(norm_multiplier(3, -1.5, NormMode::ExactGamma), DomainError);
}

TEST_CASE("exact multipliers match quadrature of polynomials") {
  Rng rng(29);
  const AreaQuadrature q(SpaceSpec::disc(0.0));
  for (int deg = 0; deg <= 6; ++deg) {
    std::vector<cplx> c(deg + 1);
    for (cplx& x : c) x = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
    const double want = q.norm_squared([&](cplx z) { return oracle::poly_deriv(c, z, 0); });
    CHECK(std::abs(coefficient_norm(c, 0.0, NormMode::ExactGamma) - want) <= 1e-8 * want);
  }
}

TEST_CASE("classify_f_beta examples") {
  const FBetaClass m2 = classify_f_beta(-2.0);
  CHECK(m2.hardy);
  CHECK(m2.member(-0.5));
  const FBetaClass z = classify_f_beta(0.0);
  CHECK_FALSE(z.hardy);
  CHECK(z.member(2.5));
  CHECK_FALSE(z.member(2.0));
  CHECK_FALSE(z.member(1.0));
  CHECK(z.on_boundary(2.0));
  const FBetaClass h = classify_f_beta(-1.5);
  CHECK_FALSE(h.hardy);
  for (double alpha : {-0.9, -0.5, 0.0, 3.0}) CHECK(h.member(alpha));
}

TEST_CASE("membership_probe examples") {
  const auto conv = membership_probe(0.0, 3.0);
  CHECK(std::abs(conv.fitted_slope - 1.0) <= kSlopeBand);
  CHECK(conv.verdict == "member");
  CHECK(conv.matches_classification);

  const auto div = membership_probe(0.0, 1.0);
  CHECK(std::abs(div.fitted_slope + 1.0) <= kSlopeBand);
  CHECK(div.verdict == "non-member");
  CHECK(div.matches_classification);

  const auto bounded = membership_probe(-2.0, 0.0);
  CHECK(bounded.verdict == "member");
  // Partial integrals of a bounded function settle.
  const auto& p = bounded.partial_integrals;
  CHECK(std::abs(p.back() - p[p.size() - 2]) < 1e-3 * p.back());
}

TEST_CASE("membership probe matches the classification on the grid") {
  for (double beta : {-2.0, -1.6, -1.5, -1.0, 0.0, 1.0}) {
    const FBetaClass cls = classify_f_beta(beta);
    for (double alpha : {-0.5, 0.0, 1.0, 2.0, 3.0, 4.0}) {
      const auto r = membership_probe(beta, alpha);
      CAPTURE(beta);
      CAPTURE(alpha);
      CAPTURE(r.fitted_slope);
      if (r.verdict == "indeterminate") {
        CHECK(cls.on_boundary(alpha));
      } else {
        CHECK(r.matches_classification);
        CHECK((r.verdict == "member") == cls.member(alpha));
      }
      if (cls.on_boundary(alpha)) CHECK(r.verdict == "indeterminate");
    }
  }
}

TEST_CASE("inclusion_probe examples") {
  const auto r = inclusion_probe(0.0, 1.0);
  CHECK(r.delta == doctest::Approx(-1.5));
  CHECK(r.lower.verdict == "divergent");
  CHECK(r.upper.verdict == "convergent");
  CHECK(r.upper.last_gap < r.lower.last_gap);
  CHECK(r.separates);
  CHECK_THROWS_AS(inclusion_probe(1.0, 0.0), DomainError);

  // Hardy witness |b_k|^2 = 1/(k+1).
  const auto hardy = [](long k) { return 1.0 / (k + 1.0); };
  CHECK(probe_series(-1.0, hardy).verdict == "divergent");
  for (double alpha : {-0.5, 0.0, 1.0}) CHECK(probe_series(alpha, hardy).verdict == "convergent");

  // |a_k|^2 = (k+1)^alpha diverges at level alpha and converges at alpha + 1.
  for (double alpha : {-0.5, 0.0, 1.0}) {
    const auto w = [alpha](long k) { return std::pow(k + 1.0, alpha); };
    CHECK(probe_series(alpha, w).verdict == "divergent");
    CHECK(probe_series(alpha + 1.0, w).verdict == "convergent");
  }
}

TEST_CASE("series probe reports threshold crossings") {
  const auto grow = probe_series(0.0, [](long k) { return static_cast<double>(k + 1); });
  CHECK(grow.crossed_threshold);
  CHECK(grow.verdict == "divergent");
  SeriesProbeOptions opts;
  opts.terms = 1000;
  const auto small = probe_series(0.0, [](long) { return 0.0; }, opts);
  CHECK(small.partial_sum == 0.0);
}
