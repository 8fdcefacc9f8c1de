#include "bergman/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "bergman/error.hpp"

namespace bergman {
namespace {

template <class T>
T factorial_t(int n) {
  T r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

template <class T>
T binomial_t(int n, int k) {
  T r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <class T>
T rising_t(T x, int n) {
  T r = 1;
  for (int i = 0; i < n; ++i) r *= x + i;
  return r;
}

cplx checked(cplx v, const KernelRef& ref, cplx z) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NumericalError("kernel at center " + format_point(ref.center) +
                         " overflowed at z = " + format_point(z));
  }
  return v;
}

template <class T>
std::complex<T> disc_zderiv(T s, const KernelRef& ref, std::complex<T> z, int order) {
  using C = std::complex<T>;
  const int m = ref.deriv_order;
  const C cb = std::conj(C(ref.center));
  const C w = T(1) - cb * z;
  const C inv_w = T(1) / w;
  // w^{-(s+m)}; the principal branch is continuous because Re w > 0.
  const C base = std::pow(w, -(s + m));

  const int jmax = std::min(order, m);
  C sum = 0;
  for (int j = 0; j <= jmax; ++j) {
    const int rest = order - j;
    C term = binomial_t<T>(order, j) * factorial_t<T>(m) / factorial_t<T>(m - j);
    if (m - j > 0) term *= std::pow(z, m - j);
    term *= rising_t<T>(s + m, rest);
    if (rest > 0) term *= std::pow(cb * inv_w, rest);
    sum += term;
  }
  return rising_t<T>(s, m) * base * sum;
}

template <class T>
std::complex<T> half_plane_zderiv(const KernelRef& ref, std::complex<T> z, int order) {
  const int p = ref.deriv_order + order + 2;
  const T sign = (order % 2 == 0) ? -1 : 1;
  return sign * factorial_t<T>(p - 1) * std::pow(z - std::conj(std::complex<T>(ref.center)), -p);
}

}  // namespace

double rising_factorial(double x, int n) { return rising_t<double>(x, n); }

cplx kernel_zderiv(const SpaceSpec& space, const KernelRef& ref, cplx z, int order) {
  validate(space, ref);
  space.require_interior(z, "evaluation point");
  if (order < 0) throw DomainError("derivative order must be >= 0");
  const cplx v = space.is_disc() ? disc_zderiv<double>(space.kernel_exponent(), ref, z, order)
                                 : half_plane_zderiv<double>(ref, z, order);
  return checked(v, ref, z);
}

cplx kernel_eval(const SpaceSpec& space, const KernelRef& ref, cplx z) {
  return kernel_zderiv(space, ref, z, 0);
}

cplx kernel_inner(const SpaceSpec& space, const KernelRef& a, const KernelRef& b) {
  validate(space, b);
  return kernel_zderiv(space, a, b.center, b.deriv_order);
}

lcplx kernel_inner_extended(const SpaceSpec& space, const KernelRef& a, const KernelRef& b) {
  validate(space, a);
  validate(space, b);
  const lcplx z(b.center);
  const lcplx v = space.is_disc()
                      ? disc_zderiv<long double>(space.kernel_exponent(), a, z, b.deriv_order)
                      : half_plane_zderiv<long double>(a, z, b.deriv_order);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NumericalError("kernel pairing at " + format_point(a.center) + " overflowed");
  }
  return v;
}

double kernel_norm_squared(const SpaceSpec& space, const KernelRef& ref) {
  return kernel_inner(space, ref, ref).real();
}

KernelWithNorm normalized_kernel(const SpaceSpec& space, const KernelRef& ref) {
  const double n2 = kernel_norm_squared(space, ref);
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw NumericalError("kernel norm at " + format_point(ref.center) + " is not finite");
  }
  return {ref, 1.0 / std::sqrt(n2)};
}

KernelWithNorm normalized_kernel(const SpaceSpec& space, cplx a) {
  return normalized_kernel(space, KernelRef{a, 0});
}

}  // namespace bergman
