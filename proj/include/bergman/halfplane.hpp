#pragma once

#include "bergman/poafd.hpp"

namespace bergman {

/// Generalised kernel of the upper half-plane,
/// k~_{a,m}(z) = -(m+1)! (z - conj(a))^{-(m+2)}.
cplx hp_kernel_eval(const KernelRef& ref, cplx z);

/// The band {Im b < delta} u {|b| > R} excluded from half-plane selection.
class BoundaryBand {
 public:
  /// Throws DomainError unless 0 < delta < R.
  BoundaryBand(double delta, double radius);

  bool excluded(cplx b) const { return b.imag() < delta_ || std::abs(b) > radius_; }
  bool admits(cplx b) const { return !excluded(b); }

  double delta() const { return delta_; }
  double radius() const { return radius_; }

 private:
  double delta_;
  double radius_;
};

BoundaryBand hp_boundary_band(double delta, double radius);

/// decompose() on the half-plane space.
Decomposition hp_decompose(const TargetFunction& f, const SelectionConfig& cfg, int n_iter);

}  // namespace bergman
