#include "bergman/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "bergman/error.hpp"

namespace bergman {

Rule1D gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw DomainError("quadrature needs at least one node");
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("Jacobi exponents must exceed -1");

  // Three-term recurrence of the monic Jacobi polynomials.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      diag(k) = (b - a) / (ab + 2.0);
    } else {
      const double t = 2.0 * k + ab;
      diag(k) = (b * b - a * a) / (t * (t + 2.0));
    }
  }
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + ab;
    const double num = 4.0 * k * (k + a) * (k + b) * (k + ab);
    const double den = t * t * (t + 1.0) * (t - 1.0);
    sub(k - 1) = std::sqrt(num / den);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Golub-Welsch eigenvalue solve failed");
  }

  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

Rule1D gauss_legendre(int n, double lo, double hi) {
  Rule1D rule = gauss_jacobi(n, 0.0, 0.0);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

Rule1D composite_gauss_legendre(int panels, int per_panel, double lo, double hi) {
  const Rule1D ref = gauss_legendre(per_panel);
  const double h = (hi - lo) / panels;
  Rule1D rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * per_panel);
  rule.weights.reserve(rule.nodes.capacity());
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
      rule.nodes.push_back(mid + 0.5 * h * ref.nodes[i]);
      rule.weights.push_back(0.5 * h * ref.weights[i]);
    }
  }
  return rule;
}

AreaQuadrature::AreaQuadrature(const SpaceSpec& space, const QuadratureOptions& opts)
    : space_(space) {
  using std::numbers::pi;
  if (space.is_disc()) {
    // dA_alpha = (1+alpha)(1-t)^alpha dt dtheta / (2 pi) with t = r^2.
    // With t = (1+x)/2 the radial factor becomes 2^{-alpha-1} (1-x)^alpha dx.
    const double alpha = space.alpha();
    const Rule1D radial = gauss_jacobi(opts.radial_nodes, alpha, 0.0);
    const int na = opts.angular_nodes;
    const double scale = (1.0 + alpha) * std::pow(2.0, -alpha - 1.0) / na;
    points_.reserve(radial.nodes.size() * na);
    weights_.reserve(points_.capacity());
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
      const double r = std::sqrt(0.5 * (1.0 + radial.nodes[i]));
      for (int j = 0; j < na; ++j) {
        points_.push_back(std::polar(r, 2.0 * pi * j / na));
        weights_.push_back(scale * radial.weights[i]);
      }
    }
  } else {
    // dx dy / pi = cosh(u) exp(v) du dv / pi.
    const Rule1D ru = composite_gauss_legendre(opts.u_panels, opts.per_panel, -opts.u_max, opts.u_max);
    const Rule1D rv = composite_gauss_legendre(opts.v_panels, opts.per_panel, opts.v_min, opts.v_max);
    points_.reserve(ru.nodes.size() * rv.nodes.size());
    weights_.reserve(points_.capacity());
    for (std::size_t i = 0; i < ru.nodes.size(); ++i) {
      const double u = ru.nodes[i];
      for (std::size_t j = 0; j < rv.nodes.size(); ++j) {
        const double v = rv.nodes[j];
        points_.emplace_back(std::sinh(u), std::exp(v));
        weights_.push_back(ru.weights[i] * rv.weights[j] * std::cosh(u) * std::exp(v) / pi);
      }
    }
  }
}

cplx AreaQuadrature::integrate(const std::function<cplx(cplx)>& g) const {
  cplx sum = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) sum += weights_[i] * g(points_[i]);
  return sum;
}

cplx AreaQuadrature::inner(const std::function<cplx(cplx)>& f,
                           const std::function<cplx(cplx)>& g) const {
  cplx sum = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    sum += weights_[i] * f(points_[i]) * std::conj(g(points_[i]));
  }
  return sum;
}

double AreaQuadrature::norm_squared(const std::function<cplx(cplx)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) sum += weights_[i] * std::norm(f(points_[i]));
  return sum;
}

}  // namespace bergman
