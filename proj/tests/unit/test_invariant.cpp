#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "bergman/error.hpp"
#include "bergman/invariant.hpp"
#include "bergman/orthosystem.hpp"
#include "oracles.hpp"

using namespace bergman;

TEST_CASE("horowitz_factor examples") {
  const cplx a(0.3, -0.4);
  CHECK(std::abs(horowitz_factor(a, a)) == 0.0);
  CHECK(std::abs(horowitz_factor(0.5, 0.0) - 0.75) < 1e-15);
  double worst = 0.0;
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) {
      const cplx z(-0.9 + 1.8 * i / 31.0, -0.9 + 1.8 * j / 31.0);
      if (std::abs(z) <= 0.9) worst = std::max(worst, std::abs(horowitz_factor(0.5, z)));
    }
  CHECK(worst <= 3.0);
  CHECK_THROWS_AS(horowitz_factor(0.0, 0.1), DomainError);
  CHECK_THROWS_AS(horowitz_factor(1.0, 0.1), DomainError);
}

TEST_CASE("horowitz_product examples") {
  const auto seq = ZeroSequence::explicit_points({cplx(0.5, 0.0), cplx(-0.2, 0.6), cplx(0.1, -0.7)}, {1, 2, 1});
  CHECK(seq.expanded().size() == 4);
  for (const cplx& a : seq.points()) CHECK(horowitz_product(seq, a, 4) == cplx(0.0));
  const auto single = ZeroSequence::explicit_points({0.5});
  CHECK(std::abs(horowitz_product(single, 0.0, 1) - 0.75) < 1e-15);
  CHECK_THROWS_AS(horowitz_product(ZeroSequence::explicit_points({0.0}), 0.2, 1), DomainError);
  CHECK_THROWS(horowitz_product(single, 0.0, 2));
}

TEST_CASE("horowitz product partial products settle for a summable law") {
  // 1 - H_a(z) = (1 - |a|)^2 (1 + e^{-i arg a} z)^2 / (1 - conj(a) z)^2, whose
  // angular mean is (1 - |a|)^2. With 1 - r_j = j^{-0.75} the doubling gaps
  // therefore shrink like n^{-1/2}: ratio 1/sqrt(2) per doubling.
  const RadialLaw law{1.0, 0.75, 2};
  const auto seq = ZeroSequence::from_law(law, 1024, ZeroSequence::AngleRule::Random, 5);
  std::vector<double> gaps;
  for (std::size_t n : {16u, 32u, 64u, 128u, 256u, 512u})
    gaps.push_back(std::abs(horowitz_product(seq, 0.3, 2 * n) - horowitz_product(seq, 0.3, n)));
  for (std::size_t k = 1; k < gaps.size(); ++k) CHECK(gaps[k] < gaps[k - 1]);
  MESSAGE("|P_1024 - P_512| = ", gaps.back());
  const double slope = std::log2(gaps.back() / gaps.front()) / 5.0;
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.3));

  // A fast law settles well below 1e-4 by n = 512.
  const auto fast = ZeroSequence::from_law({1.0, 2.0, 2}, 1024, ZeroSequence::AngleRule::Random, 5);
  CHECK(std::abs(horowitz_product(fast, 0.3, 1024) - horowitz_product(fast, 0.3, 512)) < 1e-4);
}

TEST_CASE("horowitz product vanishes only at its zeros") {
  Rng rng(2);
  std::vector<cplx> pts;
  for (int k = 0; k < 6; ++k) pts.push_back(oracle::random_disc_point(rng, 0.9));
  const auto seq = ZeroSequence::explicit_points(pts);
  for (const cplx& a : pts) CHECK(std::abs(horowitz_product(seq, a, pts.size())) < 1e-15);
  for (int k = 0; k < 1000; ++k) {
    const cplx z = oracle::random_disc_point(rng, 0.999);
    double dist = 1.0;
    for (const cplx& a : pts) dist = std::min(dist, std::abs(z - a));
    if (dist > 1e-3) CHECK(std::abs(horowitz_product(seq, z, pts.size())) > 0.0);
  }
}

TEST_CASE("zero_condition examples") {
  const auto p1 = ZeroSequence::from_law({1.0, 1.0, 1}, 2000, ZeroSequence::AngleRule::Equispaced);
  const auto r1 = zero_condition(p1);
  CHECK(r1.satisfied);
  CHECK(std::abs(r1.sum - std::numbers::pi * std::numbers::pi / 6.0) <= 1e-6);

  const auto p2 = ZeroSequence::from_law({1.0, 0.5, 1}, 2000, ZeroSequence::AngleRule::Equispaced);
  const auto r2 = zero_condition(p2);
  CHECK_FALSE(r2.satisfied);
  CHECK(std::isinf(r2.sum));

  const auto fin = ZeroSequence::explicit_points({cplx(0.99, 0.0), cplx(0.0, 0.5)});
  const auto r3 = zero_condition(fin);
  CHECK(r3.satisfied);
  CHECK(r3.tail_bound == 0.0);
  CHECK(std::abs(r3.sum - (1e-4 + 0.25)) < 1e-15);
}

TEST_CASE("epsilon_condition examples") {
  const auto fast = epsilon_condition(RadialLaw{1.0, 2.0, 1});
  CHECK(fast.verdict == "consistent");
  CHECK(fast.rows.size() == 5);
  CHECK(fast.rows.back().ratio < fast.rows.front().ratio);

  const auto slow = epsilon_condition(RadialLaw{1.0, 1.0, 1});
  CHECK(slow.verdict == "inconsistent");
  CHECK(slow.trend == "increasing");
  for (const auto& row : slow.rows) {
    // sum j^{-(1+eps)} = zeta(1+eps) ~ 1/eps + Euler's gamma
    CHECK(std::abs(row.sum - (1.0 / row.eps + 0.5772156649)) < 0.02 + row.eps);
  }

  const auto fin = epsilon_condition(ZeroSequence::explicit_points({cplx(0.9, 0.0), cplx(0.0, -0.95)}));
  CHECK(fin.verdict == "consistent");
  CHECK(fin.to_json().at("caveat") == EpsilonReport::kCaveat);
}

TEST_CASE("non-summable eps terms are reported per row") {
  // (1 - r_j)^{1+eps} = j^{-0.5(1+eps)} never sums on this grid.
  const auto r = epsilon_condition(RadialLaw{1.0, 0.5, 1});
  for (const auto& row : r.rows) {
    CHECK(std::isinf(row.sum));
    CHECK_FALSE(row.note.empty());
  }
  CHECK(r.verdict == "inconsistent");
}

TEST_CASE("zero sequences from JSON") {
  const auto a = ZeroSequence::from_json(nlohmann::json::parse(R"({"points": [[0.1, 0.2], [0.3, 0.0]], "multiplicities": [2, 1]})"));
  CHECK(a.expanded().size() == 3);
  const auto b = ZeroSequence::from_json(
      nlohmann::json::parse(R"({"law": {"c": 0.5, "p": 2}, "count": 10, "angles": "random", "seed": 3})"));
  CHECK(b.points().size() == 10);
  CHECK(std::abs(std::abs(b.points()[3]) - (1.0 - 0.5 / 16.0)) < 1e-15);
  const auto c = ZeroSequence::from_json(
      nlohmann::json::parse(R"({"law": {"c": 0.5, "p": 2}, "count": 10, "angles": "random", "seed": 3})"));
  CHECK(b.points() == c.points());
  CHECK_THROWS_AS(ZeroSequence::from_json(nlohmann::json::parse(R"({"points": [[1.5, 0]]})")), Error);
}

TEST_CASE("BRO spans over distinct points have full interpolation rank") {
  Rng rng(13);
  for (int n : {2, 5, 9}) {
    std::vector<cplx> pts;
    for (int k = 0; k < n; ++k) pts.push_back(oracle::random_disc_point(rng, 0.9));
    const BroSystem s = BroSystem::from_points(SpaceSpec::disc(0.0), pts);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(s.gram());
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
    // Values of B_1..B_n at the points form a triangular matrix with nonzero
    // diagonal, hence rank n.
    for (int k = 0; k < n; ++k) CHECK(std::abs(s.eval_B(k + 1, pts[k])) > 0.0);
  }
}
