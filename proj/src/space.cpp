#include "bergman/space.hpp"

#include <cmath>
#include <cstdio>

#include "bergman/error.hpp"

namespace bergman {

SpaceSpec SpaceSpec::disc(double alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) {
    throw DomainError("weighted Bergman space requires alpha > -1, got " +
                      std::to_string(alpha));
  }
  return SpaceSpec(Geometry::Disc, alpha);
}

SpaceSpec SpaceSpec::half_plane() { return SpaceSpec(Geometry::HalfPlane, 0.0); }

bool SpaceSpec::contains(cplx z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  if (is_disc()) return std::abs(z) <= 1.0 - kBoundaryGuard;
  return z.imag() >= kBoundaryGuard;
}

double SpaceSpec::boundary_distance(cplx z) const {
  return is_disc() ? 1.0 - std::abs(z) : z.imag();
}

void SpaceSpec::require_interior(cplx z, const char* what) const {
  if (contains(z)) return;
  throw DomainError(std::string(what) + " " + format_point(z) +
                    " is not strictly inside the " +
                    (is_disc() ? "unit disc" : "upper half-plane"));
}

std::string SpaceSpec::describe() const {
  if (!is_disc()) return "A2(C+)";
  char buf[64];
  std::snprintf(buf, sizeof buf, "A2_alpha(D), alpha=%g", alpha_);
  return buf;
}

void validate(const SpaceSpec& space, const KernelRef& ref) {
  if (ref.deriv_order < 0) {
    throw DomainError("kernel derivative order must be >= 0, got " +
                      std::to_string(ref.deriv_order));
  }
  space.require_interior(ref.center, "kernel center");
}

std::string format_point(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", z.real(), z.imag());
  return buf;
}

}  // namespace bergman
