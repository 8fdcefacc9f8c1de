#include "bergman/funcspace.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "bergman/error.hpp"

namespace bergman {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(cplx v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NumericalError(std::string(what) + " is not finite");
  }
}

const SpaceSpec& require_same_space(const KernelMix& mix, const SpaceSpec& space) {
  if (!(mix.space == space)) {
    throw DomainError("kernel combination built for " + mix.space.describe() +
                      " used in " + space.describe());
  }
  return space;
}

void require_disc_for_taylor(const SpaceSpec& space) {
  if (!space.is_disc()) throw DomainError("Taylor series targets are defined on the disc only");
}

// sum_k a_k k!/(k-m)! b^{k-m}
cplx taylor_deriv(const TaylorSeries& t, cplx b, int m) {
  const int n = static_cast<int>(t.coeffs.size());
  if (m > n - 1) {
    throw DomainError("derivative order " + std::to_string(m) +
                      " exceeds the degree " + std::to_string(n - 1) + " of the Taylor series");
  }
  cplx acc = 0.0;
  for (int k = n - 1; k >= m; --k) {
    double falling = 1.0;
    for (int i = 0; i < m; ++i) falling *= (k - i);
    acc = acc * b + t.coeffs[k] * falling;
  }
  return acc;
}

cplx cauchy_deriv(const BlackBox& bb, const SpaceSpec& space, cplx b, int m,
                  std::optional<double> radius) {
  const double dist = space.boundary_distance(b);
  double rho = std::min(0.5 * dist, bb.max_radius);
  if (radius) {
    if (!(*radius > 0.0) || *radius >= dist - kBoundaryGuard) {
      throw DomainError("Cauchy circle of radius " + std::to_string(*radius) + " around " +
                        format_point(b) + " leaves the domain (boundary distance " +
                        std::to_string(dist) + ")");
    }
    rho = *radius;
  }
  if (!(rho > 0.0)) throw DomainError("no admissible Cauchy radius at " + format_point(b));

  using std::numbers::pi;
  cplx acc = 0.0;
  for (int j = 0; j < kCauchyNodes; ++j) {
    const double theta = 2.0 * pi * j / kCauchyNodes;
    acc += bb.fn(b + std::polar(rho, theta)) * std::polar(1.0, -m * theta);
  }
  double scale = 1.0 / kCauchyNodes;
  for (int i = 1; i <= m; ++i) scale *= i / rho;
  return acc * scale;
}

}  // namespace

TargetFunction TargetFunction::taylor(std::vector<cplx> coeffs, std::string label) {
  if (coeffs.empty()) throw ConfigError("Taylor series needs at least one coefficient");
  for (const cplx& c : coeffs) require_finite(c, "Taylor coefficient");
  return TargetFunction(TaylorSeries{std::move(coeffs)}, std::move(label));
}

TargetFunction TargetFunction::kernel_mix(const SpaceSpec& space, std::vector<KernelTerm> terms,
                                          std::string label) {
  KernelMix mix{space, std::move(terms), {}};
  mix.scales.reserve(mix.terms.size());
  for (const KernelTerm& t : mix.terms) {
    require_finite(t.coeff, "kernel coefficient");
    mix.scales.push_back(normalized_kernel(space, t.ref).scale);
  }
  return TargetFunction(std::move(mix), std::move(label));
}

TargetFunction TargetFunction::black_box(std::function<cplx(cplx)> fn, std::string label,
                                         double max_radius) {
  if (!fn) throw ConfigError("black-box target needs an evaluator");
  return TargetFunction(BlackBox{std::move(fn), max_radius}, std::move(label));
}

std::optional<double> TargetFunction::mix_weight() const {
  const KernelMix* mix = as_kernel_mix();
  if (!mix) return std::nullopt;
  double m = 0.0;
  for (const KernelTerm& t : mix->terms) m += std::abs(t.coeff);
  return m;
}

cplx eval(const TargetFunction& f, const SpaceSpec& space, cplx z) {
  return eval_deriv(f, space, z, 0);
}

cplx eval_deriv(const TargetFunction& f, const SpaceSpec& space, cplx b, int m,
                std::optional<double> cauchy_radius) {
  if (m < 0) throw DomainError("derivative order must be >= 0");
  space.require_interior(b, "evaluation point");
  return std::visit(
      overloaded{
          [&](const TaylorSeries& t) {
            require_disc_for_taylor(space);
            return taylor_deriv(t, b, m);
          },
          [&](const KernelMix& mix) {
            require_same_space(mix, space);
            cplx acc = 0.0;
            for (std::size_t l = 0; l < mix.terms.size(); ++l) {
              acc += mix.terms[l].coeff * mix.scales[l] *
                     kernel_zderiv(space, mix.terms[l].ref, b, m);
            }
            return acc;
          },
          [&](const BlackBox& bb) { return cauchy_deriv(bb, space, b, m, cauchy_radius); },
      },
      f.rep());
}

double monomial_norm_squared(int k, double alpha) {
  return std::exp(std::lgamma(k + 1.0) + std::lgamma(alpha + 2.0) - std::lgamma(k + alpha + 2.0));
}

double norm_squared(const TargetFunction& f, const SpaceSpec& space,
                    const QuadratureOptions& quad) {
  return std::visit(
      overloaded{
          [&](const TaylorSeries& t) {
            require_disc_for_taylor(space);
            double sum = 0.0;
            for (std::size_t k = 0; k < t.coeffs.size(); ++k) {
              sum += monomial_norm_squared(static_cast<int>(k), space.alpha()) * std::norm(t.coeffs[k]);
              if (!std::isfinite(sum)) {
                throw NumericalError("norm sum overflowed at coefficient index " + std::to_string(k));
              }
            }
            return sum;
          },
          [&](const KernelMix& mix) {
            require_same_space(mix, space);
            const std::size_t n = mix.terms.size();
            double sum = 0.0;
            for (std::size_t l = 0; l < n; ++l) {
              const cplx cl = mix.terms[l].coeff * mix.scales[l];
              sum += std::norm(cl) * kernel_norm_squared(space, mix.terms[l].ref);
              for (std::size_t j = l + 1; j < n; ++j) {
                const cplx cj = mix.terms[j].coeff * mix.scales[j];
                sum += 2.0 * (cl * std::conj(cj) *
                              kernel_inner(space, mix.terms[l].ref, mix.terms[j].ref))
                                 .real();
              }
              if (!std::isfinite(sum)) {
                throw NumericalError("norm sum overflowed at term index " + std::to_string(l));
              }
            }
            return sum;
          },
          [&](const BlackBox& bb) {
            const double v = AreaQuadrature(space, quad).norm_squared(bb.fn);
            if (!std::isfinite(v)) throw NumericalError("black-box norm quadrature overflowed");
            return v;
          },
      },
      f.rep());
}

cplx project_on_kernel(const TargetFunction& f, const SpaceSpec& space, const KernelRef& ref) {
  validate(space, ref);
  return eval_deriv(f, space, ref.center, ref.deriv_order);
}

std::vector<cplx> taylor_coefficients(const TargetFunction& f, const SpaceSpec& space, int degree) {
  require_disc_for_taylor(space);
  if (degree < 0) throw DomainError("degree must be >= 0");
  std::vector<cplx> out(static_cast<std::size_t>(degree) + 1, 0.0);
  if (const TaylorSeries* t = f.as_taylor()) {
    for (std::size_t k = 0; k < out.size() && k < t->coeffs.size(); ++k) out[k] = t->coeffs[k];
    return out;
  }
  if (const KernelMix* mix = f.as_kernel_mix()) {
    require_same_space(*mix, space);
    // k~_{c,m}(z) = sum_{n>=m} (s)_n / (n-m)! conj(c)^{n-m} z^n
    const double s = space.kernel_exponent();
    for (std::size_t l = 0; l < mix->terms.size(); ++l) {
      const int m = mix->terms[l].ref.deriv_order;
      const cplx cb = std::conj(mix->terms[l].ref.center);
      const cplx c = mix->terms[l].coeff * mix->scales[l];
      double ratio = rising_factorial(s, m);  // (s)_n / (n-m)! at n = m
      cplx power = 1.0;
      for (int n = m; n <= degree; ++n) {
        out[n] += c * ratio * power;
        ratio *= (s + n) / (n - m + 1.0);
        power *= cb;
      }
    }
    return out;
  }
  throw DomainError("black-box target '" + f.label() + "' has no Taylor conversion");
}

TargetFunction poly_decay(int degree, double exponent) {
  if (degree < 0) throw ConfigError("poly_decay degree must be >= 0");
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k) c[k] = std::pow(k + 1.0, -exponent);
  return TargetFunction::taylor(std::move(c), "poly_decay");
}

TargetFunction f_beta(double beta, int degree, cplx a) {
  if (degree < 0) throw ConfigError("f_beta degree must be >= 0");
  // (1 - w)^{-p} = sum_k (p)_k / k! w^k with w = conj(a) z.
  const double p = 2.0 + beta;
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
  double binom = 1.0;
  cplx power = 1.0;
  for (int k = 0; k <= degree; ++k) {
    c[k] = binom * power;
    binom *= (p + k) / (k + 1.0);
    power *= std::conj(a);
  }
  return TargetFunction::taylor(std::move(c), "f_beta");
}

TargetFunction blaschke(const std::vector<cplx>& zeros, double tail_tol, int max_degree) {
  double rmax = 0.0;
  for (const cplx& a : zeros) {
    if (!(std::abs(a) < 1.0)) throw DomainError("Blaschke zero " + format_point(a) + " outside the disc");
    rmax = std::max(rmax, std::abs(a));
  }
  int degree = static_cast<int>(zeros.size());
  if (rmax > 0.0) {
    degree += static_cast<int>(std::ceil(std::log(tail_tol) / std::log(rmax))) + 8;
  }
  degree = std::min(degree, max_degree);

  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c[0] = 1.0;
  for (const cplx& a : zeros) {
    // multiply by (z - a), then divide by (1 - conj(a) z): g_n = h_n + conj(a) g_{n-1}
    for (int n = degree; n >= 0; --n) c[n] = (n > 0 ? c[n - 1] : 0.0) - a * c[n];
    for (int n = 1; n <= degree; ++n) c[n] += std::conj(a) * c[n - 1];
  }
  return TargetFunction::taylor(std::move(c), "blaschke");
}

TargetFunction chirp_embedded(int samples, int degree, double t0) {
  if (samples < 2 * (degree + 1)) {
    throw ConfigError("chirp embedding needs at least 2*(degree+1) samples");
  }
  using std::numbers::pi;
  struct Plan {
    fftw_plan p;
    ~Plan() { fftw_destroy_plan(p); }
  };
  std::vector<double> in(samples);
  std::vector<fftw_complex> out(samples / 2 + 1);
  Plan plan{fftw_plan_dft_r2c_1d(samples, in.data(), out.data(), FFTW_ESTIMATE)};
  for (int j = 0; j < samples; ++j) {
    const double t = t0 + 2.0 * pi * j / samples;
    in[j] = std::cos(t * t);
  }
  fftw_execute(plan.p);
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k) c[k] = cplx(out[k][0], out[k][1]) / static_cast<double>(samples);
  return TargetFunction::taylor(std::move(c), "chirp (embedded)");
}

}  // namespace bergman
