#pragma once

#include <complex>
#include <string>

namespace bergman {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

enum class Geometry { Disc, HalfPlane };

/// Points closer than this to the boundary are rejected (|z| > 1 - guard on
/// the disc, Im z < guard on the half-plane).
inline constexpr double kBoundaryGuard = 1e-12;

/// The Hilbert space all kernels, norms and pairings refer to: the weighted
/// Bergman space A^2_alpha of the unit disc, normalised so that ||1|| = 1,
/// or the Bergman space of the upper half-plane with dA = dx dy / pi.
class SpaceSpec {
 public:
  /// Throws DomainError unless alpha > -1.
  static SpaceSpec disc(double alpha = 0.0);
  static SpaceSpec half_plane();

  Geometry geometry() const { return geometry_; }
  bool is_disc() const { return geometry_ == Geometry::Disc; }
  /// Weight exponent; always 0 on the half-plane.
  double alpha() const { return alpha_; }

  /// Exponent s of the reproducing kernel, (1 - conj(w) z)^{-s} on the disc.
  double kernel_exponent() const { return 2.0 + alpha_; }

  /// True when z is strictly inside the domain and outside the boundary guard.
  bool contains(cplx z) const;
  /// Euclidean distance from z to the boundary (may be negative outside).
  double boundary_distance(cplx z) const;
  /// Throws DomainError naming `what` when !contains(z).
  void require_interior(cplx z, const char* what) const;

  std::string describe() const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  SpaceSpec(Geometry g, double alpha) : geometry_(g), alpha_(alpha) {}

  Geometry geometry_;
  double alpha_;
};

/// Generalised reproducing kernel: the deriv_order-th derivative in conj(w)
/// of k_w, evaluated at w = center. Pairing a function with it returns the
/// deriv_order-th derivative of the function at center.
struct KernelRef {
  cplx center;
  int deriv_order = 0;

  friend bool operator==(const KernelRef&, const KernelRef&) = default;
};

void validate(const SpaceSpec& space, const KernelRef& ref);

std::string format_point(cplx z);

}  // namespace bergman
