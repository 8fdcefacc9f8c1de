#include "bergman/halfplane.hpp"

#include "bergman/error.hpp"

namespace bergman {

cplx hp_kernel_eval(const KernelRef& ref, cplx z) {
  return kernel_eval(SpaceSpec::half_plane(), ref, z);
}

BoundaryBand::BoundaryBand(double delta, double radius) : delta_(delta), radius_(radius) {
  if (!(delta > 0.0) || !(radius > delta)) {
    throw DomainError("boundary band needs 0 < delta < R");
  }
}

BoundaryBand hp_boundary_band(double delta, double radius) { return BoundaryBand(delta, radius); }

Decomposition hp_decompose(const TargetFunction& f, const SelectionConfig& cfg, int n_iter) {
  return decompose(f, SpaceSpec::half_plane(), cfg, n_iter);
}

}  // namespace bergman
