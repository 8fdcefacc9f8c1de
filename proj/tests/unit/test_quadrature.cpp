#include <doctest.h>

#include <cmath>

#include "bergman/error.hpp"
#include "bergman/kernels.hpp"
#include "bergman/quadrature.hpp"
#include "oracles.hpp"

using namespace bergman;

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const Rule1D r = gauss_legendre(10, 0.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
    CHECK(std::abs(s - std::pow(2.0, k + 1) / (k + 1)) < 1e-12 * std::pow(2.0, k + 1));
  }
}

TEST_CASE("Gauss-Jacobi moments") {
  // int_{-1}^{1} (1-x)^a (1+x)^k dx = 2^{a+k+1} B(a+1, k+1)
  for (double a : {-0.5, 0.5, 2.0}) {
    const Rule1D r = gauss_jacobi(12, a, 0.0);
    for (int k = 0; k < 20; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(1.0 + r.nodes[i], k);
      const double want =
          std::exp((a + k + 1) * std::log(2.0) + std::lgamma(a + 1) + std::lgamma(k + 1.0) - std::lgamma(a + k + 2));
      CHECK(std::abs(s - want) < 1e-12 * want);
    }
  }
  CHECK_THROWS_AS(gauss_jacobi(4, -1.0, 0.0), DomainError);
}

TEST_CASE("disc area measure has unit mass and the monomial norms") {
  for (double alpha : {-0.5, 0.0, 0.5, 2.0}) {
    const AreaQuadrature q(SpaceSpec::disc(alpha));
    CHECK(std::abs(q.integrate([](cplx) { return cplx(1.0); }) - 1.0) < 1e-12);
    for (int k = 0; k < 8; ++k) {
      // ||z^k||^2 = k! Gamma(alpha+2) / Gamma(k+alpha+2)
      const double want = std::exp(std::lgamma(k + 1.0) + std::lgamma(alpha + 2) - std::lgamma(k + alpha + 2));
      const double got = q.norm_squared([k](cplx z) { return std::pow(z, k); });
      CHECK(std::abs(got - want) < 1e-12 * want);
    }
  }
}

TEST_CASE("half-plane quadrature reproduces kernel norms") {
  const SpaceSpec hp = SpaceSpec::half_plane();
  const AreaQuadrature q(hp);
  for (cplx a : {cplx(0, 1), cplx(2, 3), cplx(-1, 0.5)}) {
    const double got = q.norm_squared([&](cplx z) { return kernel_eval(hp, {a, 0}, z); });
    const double want = 1.0 / (4.0 * a.imag() * a.imag());
    CHECK(std::abs(got - want) < 1e-7 * want);
  }
  const KernelRef a{cplx(0.5, 1.0), 1};
  const KernelRef b{cplx(-0.3, 2.0), 0};
  const cplx got = q.inner([&](cplx z) { return kernel_eval(hp, a, z); },
                           [&](cplx z) { return kernel_eval(hp, b, z); });
  CHECK(oracle::rel_err(got, kernel_inner(hp, a, b)) < 1e-7);
}
