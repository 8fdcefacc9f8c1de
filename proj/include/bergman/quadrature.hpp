#pragma once

#include <functional>
#include <vector>

#include "bergman/space.hpp"

namespace bergman {

/// One-dimensional rule: sum_i weights[i] g(nodes[i]).
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule for int_{-1}^{1} (1-x)^a (1+x)^b g(x) dx, computed by
/// the Golub-Welsch eigenvalue method. Requires a, b > -1.
Rule1D gauss_jacobi(int n, double a, double b);

/// Gauss-Legendre rule on [lo, hi].
Rule1D gauss_legendre(int n, double lo = -1.0, double hi = 1.0);

/// Composite Gauss-Legendre: `panels` equal sub-intervals of [lo, hi],
/// `per_panel` nodes each.
Rule1D composite_gauss_legendre(int panels, int per_panel, double lo, double hi);

struct QuadratureOptions {
  // Disc: Gauss-Jacobi in t = r^2 with weight (1-t)^alpha (plain
  // Gauss-Legendre for alpha = 0) times a uniform trapezoid in the angle.
  int radial_nodes = 200;
  int angular_nodes = 512;
  // Half-plane: x = sinh(u), y = exp(v), composite Gauss-Legendre in (u, v).
  double u_max = 14.0;
  double v_min = -25.0;
  double v_max = 14.0;
  int u_panels = 56;
  int v_panels = 84;
  int per_panel = 12;
};

/// Tensor-product rule for the area measure of a space: dA_alpha on the disc
/// (total mass 1) or dx dy / pi on the half-plane.
class AreaQuadrature {
 public:
  explicit AreaQuadrature(const SpaceSpec& space, const QuadratureOptions& opts = {});

  const SpaceSpec& space() const { return space_; }
  const std::vector<cplx>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return points_.size(); }

  /// sum_i w_i g(z_i)
  cplx integrate(const std::function<cplx(cplx)>& g) const;
  /// <f, g> = int f conj(g) dA
  cplx inner(const std::function<cplx(cplx)>& f, const std::function<cplx(cplx)>& g) const;
  /// ||f||^2 = int |f|^2 dA
  double norm_squared(const std::function<cplx(cplx)>& f) const;

 private:
  SpaceSpec space_;
  std::vector<cplx> points_;
  std::vector<double> weights_;
};

}  // namespace bergman
