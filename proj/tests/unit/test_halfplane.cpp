#include <doctest.h>

#include "bergman/error.hpp"
#include "bergman/halfplane.hpp"
#include "checks.hpp"
#include "oracles.hpp"

using namespace bergman;

namespace {
const SpaceSpec HP = SpaceSpec::half_plane();

TargetFunction mix(std::vector<std::pair<cplx, cplx>> terms) {
  std::vector<KernelTerm> t;
  for (auto& [c, a] : terms) t.push_back({c, {a, 0}});
  return TargetFunction::kernel_mix(HP, t);
}
}  // namespace

TEST_CASE("hp_kernel_eval examples") {
  const cplx i(0.0, 1.0);
  CHECK(std::abs(hp_kernel_eval({i, 0}, i) - 0.25) < 1e-15);
  CHECK(std::abs(hp_kernel_eval({2.0 * i, 0}, 2.0 * i) - 1.0 / 16.0) < 1e-15);
  const cplx z(0.5, 1.0);
  CHECK(oracle::rel_err(hp_kernel_eval({i, 1}, z), oracle::fd_hp_kernel(i, 1, z)) <= 1e-6);
  for (int m = 2; m <= 3; ++m) {
    CHECK(oracle::rel_err(hp_kernel_eval({cplx(0.3, 0.8), m}, z), oracle::fd_hp_kernel(cplx(0.3, 0.8), m, z, 1e-4L)) <=
          1e-6);
  }
  CHECK_THROWS_AS(hp_kernel_eval({cplx(0.0, -1.0), 0}, i), DomainError);
}

TEST_CASE("boundary band") {
  const BoundaryBand band = hp_boundary_band(0.01, 100.0);
  CHECK(band.excluded(cplx(0.0, 0.5 * 0.01)));
  CHECK(band.excluded(cplx(200.0, 1.0)));
  CHECK(band.admits(cplx(0.0, 1.0)));
  CHECK_THROWS_AS(hp_boundary_band(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(hp_boundary_band(2.0, 1.0), DomainError);
}

TEST_CASE("hp_decompose examples") {
  const cplx i(0.0, 1.0);
  const Decomposition d1 = hp_decompose(mix({{1.0, i}}), SelectionConfig{}, 1);
  REQUIRE(d1.iterations.size() == 1);
  CHECK(d1.iterations[0].residual_energy <= 1e-10);

  const TargetFunction f = mix({{1.0, i}, {1.0, cplx(2.0, 3.0)}});
  const Decomposition d2 = hp_decompose(f, SelectionConfig{}, 2);
  REQUIRE(d2.iterations.size() == 2);
  // Record of what the greedy run reaches; see the brute-force check below.
  MESSAGE("half-plane two-kernel residual after 2 steps: ",
          std::sqrt(std::max(0.0, d2.iterations[1].residual_energy) / d2.norm_squared));
  const auto e = checks::energy_check(d2);
  CHECK(e.worst <= 1e-9);
  CHECK(e.monotone);
}

TEST_CASE("first half-plane selection agrees with a brute-force argmax") {
  const TargetFunction f = mix({{1.0, cplx(0.0, 1.0)}, {1.0, cplx(2.0, 3.0)}});
  const BroSystem empty(HP);
  double best = 0.0;
  for (int ix = 0; ix < 100; ++ix) {
    for (int iy = 0; iy < 100; ++iy) {
      const cplx b(-5.0 + 10.0 * ix / 99.0, 0.05 + 6.0 * iy / 99.0);
      best = std::max(best, selection_objective(empty, f, b));
    }
  }
  const cplx b1 = select_next(empty, f, SelectionConfig{});
  CHECK(selection_objective(empty, f, b1) >= best * (1.0 - 1e-6));
}

TEST_CASE("objective is small near the real axis and at infinity") {
  const std::vector<TargetFunction> targets{mix({{1.0, cplx(0.0, 1.0)}}),
                                            mix({{1.0, cplx(0.0, 1.0)}, {1.0, cplx(2.0, 3.0)}})};
  const BroSystem empty(HP);
  const double delta = SelectionConfig{}.hp_delta;
  for (const auto& f : targets) {
    double interior = 0.0;
    for (int ix = -20; ix <= 20; ++ix)
      for (int iy = 1; iy <= 40; ++iy) interior = std::max(interior, selection_objective(empty, f, cplx(0.25 * ix, 0.1 * iy)));
    for (double x : {-1.0, 0.0, 2.0}) CHECK(selection_objective(empty, f, cplx(x, delta)) < 0.1 * interior);
    CHECK(selection_objective(empty, f, cplx(0.0, 1e3)) < 0.1 * interior);
  }
}

TEST_CASE("projection onto e_b decays like Im(a)/|b|") {
  const cplx a(0.0, 1.0);
  const BroSystem s = BroSystem::from_points(HP, {a});
  for (double r : {10.0, 100.0, 1000.0}) {
    for (double theta : {0.3, 1.5708, 2.8}) {
      const cplx b = std::polar(r, theta);
      const KernelWithNorm e = normalized_kernel(HP, b);
      // <e_b, B_1> = scale_b * conj(B_1(b)).
      const double v = e.scale * std::abs(s.eval_B(1, b));
      // Closed form (2 Im a)(2 Im b) / |a - conj(b)|^2.
      const double closed = 4.0 * a.imag() * b.imag() / std::norm(a - std::conj(b));
      CHECK(std::abs(v - closed) <= 1e-12 * closed);
      CHECK(v <= 4.0 * a.imag() / r);
      CAPTURE(v * r);
    }
  }
}

TEST_CASE("kernel combinations are recovered within as many steps as terms") {
  Rng rng(19);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<std::pair<cplx, cplx>> terms;
    const int n = 1 + trial;
    for (int l = 0; l < n; ++l)
      terms.push_back({cplx(uniform(rng, 0.5, 1.5), uniform(rng, -0.5, 0.5)),
                       cplx(uniform(rng, -3.0, 3.0), uniform(rng, 0.3, 3.0))});
    const TargetFunction f = mix(terms);
    const Decomposition d = hp_decompose(f, SelectionConfig{}, n);
    const double rel = std::sqrt(std::max(0.0, d.iterations.back().residual_energy) / d.norm_squared);
    MESSAGE("terms ", n, " relative residual ", rel);
    CHECK(d.iterations.size() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("half-plane residual zeros") {
  const TargetFunction f = TargetFunction::kernel_mix(
      HP, {{1.0, {cplx(0.5, 1.0), 1}}, {cplx(0.0, 2.0), {cplx(-1.0, 0.5), 0}}});
  const Decomposition d = hp_decompose(f, SelectionConfig{}, 4);
  CHECK(checks::residual_zero_defect(d, f) <= 1e-8 * std::sqrt(d.norm_squared));
}
