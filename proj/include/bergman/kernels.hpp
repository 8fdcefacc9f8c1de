#pragma once

#include "bergman/space.hpp"

namespace bergman {

// Closed forms used throughout (s = 2 + alpha, c = center, m = deriv order):
//
//   disc:        k~_{c,m}(z) = (s)_m z^m (1 - conj(c) z)^{-(s+m)}
//   half-plane:  k~_{c,m}(z) = -(m+1)! (z - conj(c))^{-(m+2)}
//
// where (x)_m is the rising factorial. The n-th z-derivative of the disc
// form follows from Leibniz' rule,
//
//   (s)_m sum_{j<=min(n,m)} C(n,j) m!/(m-j)! z^{m-j}
//         (s+m)_{n-j} conj(c)^{n-j} (1 - conj(c) z)^{-(s+m+n-j)},
//
// and for the half-plane form it is
//
//   -(-1)^n (m+n+1)! (z - conj(c))^{-(m+n+2)}.
//
// Since <f, k~_{c,m}> = f^{(m)}(c), the Gram entry <k~_a, k~_b> is the
// b.deriv_order-th z-derivative of k~_a at b.center.

/// Rising factorial x (x+1) ... (x+n-1); 1 for n = 0.
double rising_factorial(double x, int n);

/// Value of the generalised kernel at z. Throws DomainError for points
/// outside the boundary guard and NumericalError on overflow.
cplx kernel_eval(const SpaceSpec& space, const KernelRef& ref, cplx z);

/// order-th derivative in z of the generalised kernel, evaluated at z.
cplx kernel_zderiv(const SpaceSpec& space, const KernelRef& ref, cplx z, int order);

/// Exact inner product <k~_a, k~_b>.
cplx kernel_inner(const SpaceSpec& space, const KernelRef& a, const KernelRef& b);
/// Same pairing evaluated in long double, for Gram matrices.
lcplx kernel_inner_extended(const SpaceSpec& space, const KernelRef& a, const KernelRef& b);

/// ||k~_ref||^2.
double kernel_norm_squared(const SpaceSpec& space, const KernelRef& ref);

struct KernelWithNorm {
  KernelRef ref;
  double scale;  ///< 1 / ||k~_ref||, so scale * k~_ref has unit norm
};

/// Normalised reproducing kernel e_a = k_a / sqrt(k_a(a)).
KernelWithNorm normalized_kernel(const SpaceSpec& space, cplx a);
/// Normalisation for an arbitrary generalised kernel.
KernelWithNorm normalized_kernel(const SpaceSpec& space, const KernelRef& ref);

}  // namespace bergman
