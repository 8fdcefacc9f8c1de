#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bergman/kernels.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

/// f(z) = sum_k coeffs[k] z^k on the disc.
struct TaylorSeries {
  std::vector<cplx> coeffs;
};

/// One term c * k~_ref / ||k~_ref|| of a kernel combination.
struct KernelTerm {
  cplx coeff;
  KernelRef ref;
};

/// f = sum_l c_l k~_{ref_l} / ||k~_{ref_l}||. With all deriv orders zero
/// this is sum_l c_l e_{b_l}; M = sum_l |c_l| bounds the decomposition rate.
struct KernelMix {
  SpaceSpec space;
  std::vector<KernelTerm> terms;
  std::vector<double> scales;  ///< 1 / ||k~_ref|| per term
};

/// An evaluator on the open domain. Derivatives come from the Cauchy
/// integral on a circle of radius min(boundary_distance / 2, max_radius).
struct BlackBox {
  std::function<cplx(cplx)> fn;
  double max_radius = std::numeric_limits<double>::infinity();
};

/// Immutable target function in one of three representations.
class TargetFunction {
 public:
  using Rep = std::variant<TaylorSeries, KernelMix, BlackBox>;

  static TargetFunction taylor(std::vector<cplx> coeffs, std::string label = "taylor");
  /// Normalises every term against `space`; throws DomainError for
  /// centers outside the domain.
  static TargetFunction kernel_mix(const SpaceSpec& space, std::vector<KernelTerm> terms,
                                   std::string label = "kernelmix");
  static TargetFunction black_box(std::function<cplx(cplx)> fn, std::string label = "blackbox",
                                  double max_radius = std::numeric_limits<double>::infinity());

  const Rep& rep() const { return rep_; }
  const std::string& label() const { return label_; }

  const TaylorSeries* as_taylor() const { return std::get_if<TaylorSeries>(&rep_); }
  const KernelMix* as_kernel_mix() const { return std::get_if<KernelMix>(&rep_); }
  const BlackBox* as_black_box() const { return std::get_if<BlackBox>(&rep_); }

  /// M = sum |c_l| for kernel combinations.
  std::optional<double> mix_weight() const;

 private:
  TargetFunction(Rep rep, std::string label) : rep_(std::move(rep)), label_(std::move(label)) {}

  Rep rep_;
  std::string label_;
};

/// Number of Cauchy-integral nodes used for black-box derivatives.
inline constexpr int kCauchyNodes = 256;

cplx eval(const TargetFunction& f, const SpaceSpec& space, cplx z);

/// f^{(m)}(b). `cauchy_radius` overrides the default black-box circle and is
/// rejected if the circle would leave the domain.
cplx eval_deriv(const TargetFunction& f, const SpaceSpec& space, cplx b, int m,
                std::optional<double> cauchy_radius = std::nullopt);

/// ||f||^2 in the space norm.
double norm_squared(const TargetFunction& f, const SpaceSpec& space,
                    const QuadratureOptions& quad = {});

/// <f, k~_ref> = f^{(deriv_order)}(center).
cplx project_on_kernel(const TargetFunction& f, const SpaceSpec& space, const KernelRef& ref);

/// k! Gamma(alpha+2) / Gamma(k+alpha+2), the norm multiplier of z^k in
/// A^2_alpha (alpha = -1 gives the Hardy multiplier 1).
double monomial_norm_squared(int k, double alpha);

/// Taylor coefficients of a disc target up to `degree`. Kernel combinations
/// are expanded exactly; black boxes are rejected.
std::vector<cplx> taylor_coefficients(const TargetFunction& f, const SpaceSpec& space, int degree);

// Builtin fixtures.

/// sum_{k=0}^{degree} z^k / (k+1)^exponent
TargetFunction poly_decay(int degree, double exponent);

/// (1 - conj(a) z)^{-(2+beta)} truncated at `degree`; a = 1 gives f_beta.
TargetFunction f_beta(double beta, int degree, cplx a = 1.0);

/// Blaschke product prod (z - a_k)/(1 - conj(a_k) z) as a Taylor series,
/// truncated once the geometric tail drops below `tail_tol`.
TargetFunction blaschke(const std::vector<cplx>& zeros, double tail_tol = 1e-17,
                        int max_degree = 20000);

/// Real chirp cos(t^2) on t in [t0, t0 + 2 pi), sampled at `samples` points
/// and embedded as the Taylor series of its nonnegative-frequency part:
/// coefficient k is the k-th trigonometric coefficient of the samples with
/// z = exp(i (t - t0)).
TargetFunction chirp_embedded(int samples, int degree, double t0);

}  // namespace bergman
