#pragma once

// Independent reference computations shared by the unit tests.

#include <cmath>
#include <complex>
#include <vector>

#include "bergman/rng.hpp"
#include "bergman/space.hpp"

namespace oracle {

using bergman::cplx;
using lcplx = std::complex<long double>;

inline double rel_err(cplx got, cplx want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

// Unit-disc kernel (1 - u z)^{-s} with u = conj(w), in long double.
inline lcplx disc_kernel_u(long double s, lcplx u, lcplx z) {
  return std::pow(lcplx(1.0L) - u * z, -s);
}

// Half-plane kernel -(z - u)^{-2} with u = conj(w).
inline lcplx hp_kernel_u(lcplx u, lcplx z) {
  const lcplx d = z - u;
  return -lcplx(1.0L) / (d * d);
}

inline long double binom(int n, int k) {
  long double r = 1.0L;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// m-th derivative in u of g by the central difference stencil with step h.
template <class G>
lcplx central_diff(G&& g, lcplx u, int m, long double h) {
  lcplx acc = 0.0L;
  for (int j = 0; j <= m; ++j) {
    const long double shift = (0.5L * m - j) * h;
    const long double sign = (j % 2 == 0) ? 1.0L : -1.0L;
    acc += sign * binom(m, j) * g(u + lcplx(shift, 0.0L));
  }
  return acc / std::pow(h, static_cast<long double>(m));
}

// d^m/d(conj w)^m of k_w(z) at w = center, by finite differences of the
// order-zero closed form.
inline cplx fd_disc_kernel(double alpha, cplx center, int m, cplx z, long double h = 1e-5L) {
  const long double s = 2.0L + alpha;
  const lcplx zl(z.real(), z.imag());
  const lcplx u(center.real(), -center.imag());
  const lcplx v = central_diff([&](lcplx uu) { return disc_kernel_u(s, uu, zl); }, u, m, h);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

inline cplx fd_hp_kernel(cplx center, int m, cplx z, long double h = 1e-5L) {
  const lcplx zl(z.real(), z.imag());
  const lcplx u(center.real(), -center.imag());
  const lcplx v = central_diff([&](lcplx uu) { return hp_kernel_u(uu, zl); }, u, m, h);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// Uniform point in the disc of radius rmax.
inline cplx random_disc_point(bergman::Rng& rng, double rmax) {
  const double r = rmax * std::sqrt(bergman::uniform01(rng));
  return std::polar(r, 2.0 * 3.14159265358979323846 * bergman::uniform01(rng));
}

// p(z) = sum c_k z^k and its m-th derivative.
inline cplx poly_deriv(const std::vector<cplx>& c, cplx z, int m) {
  cplx acc = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= m; --k) {
    double f = 1.0;
    for (int i = 0; i < m; ++i) f *= (k - i);
    acc = acc * z + c[k] * f;
  }
  return acc;
}

}  // namespace oracle
