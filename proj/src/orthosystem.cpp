#include "bergman/orthosystem.hpp"

#include <cmath>

#include "bergman/error.hpp"

namespace bergman {

KernelRef ParamSeq::candidate(cplx b) const {
  int count = 0;
  cplx snapped = b;
  for (const cplx& a : points_) {
    if (std::abs(a - b) <= kCoincideTol) {
      if (count == 0) snapped = a;
      ++count;
    }
  }
  return {snapped, count};
}

KernelRef ParamSeq::push(cplx b) {
  const KernelRef r = candidate(b);
  points_.push_back(r.center);
  mult_.push_back(r.deriv_order + 1);
  return r;
}

BroSystem BroSystem::from_points(const SpaceSpec& space, const std::vector<cplx>& points) {
  BroSystem sys(space);
  for (const cplx& b : points) sys.append(b);
  return sys;
}

BroSystem BroSystem::extend(cplx b) const& {
  BroSystem out = *this;
  out.append(b);
  return out;
}

BroSystem BroSystem::extend(cplx b) && {
  append(b);
  return std::move(*this);
}

BroSystem::ExactProjection BroSystem::project_exact(const LVector& g, long double kernel_norm_squared) const {
  const Eigen::Index n = g.size();
  ExactProjection out;
  const auto lower = cx_.triangularView<Eigen::Lower>();
  const LMatrix cbar = cx_.conjugate();
  out.p = cbar.triangularView<Eigen::Lower>() * g;
  out.x = -(lower.transpose() * out.p);

  // Second Gram-Schmidt pass: y_j = <v, k~_j>, q_k = <v, B_k>.
  if (n > 0) {
    const LVector y = gx_.transpose() * out.x + g;
    const LVector q = cbar.triangularView<Eigen::Lower>() * y;
    out.x -= lower.transpose() * q;
    out.p += q;
  }

  // <v, v> = sum_{i,j} x_i conj(x_j) G[i][j] with x_n = 1.
  lcplx nu2 = kernel_norm_squared;
  if (n > 0) {
    const LVector y = gx_.transpose() * out.x + g;
    nu2 += out.x.dot(y);                                // sum_j conj(x_j) y_j, j < n
    nu2 += (out.x.transpose() * g.conjugate())(0);     // sum_i x_i conj(g_i)
  }
  out.residual_norm_squared = std::max(0.0L, nu2.real());
  return out;
}

namespace {
LVector kernel_column(const SpaceSpec& space, const KernelRef& r, const ParamSeq& params) {
  LVector g(static_cast<Eigen::Index>(params.size()));
  for (std::size_t j = 0; j < params.size(); ++j) {
    g(static_cast<Eigen::Index>(j)) = kernel_inner_extended(space, r, params.ref(j));
  }
  return g;
}
}  // namespace

BroSystem::Projection BroSystem::project_kernel(const KernelRef& r) const {
  validate(space_, r);
  Projection out;
  out.ref = r;
  out.kernel_norm_squared = kernel_norm_squared(space_, r);
  const ExactProjection e =
      project_exact(kernel_column(space_, r, params_), kernel_inner_extended(space_, r, r).real());
  out.p = e.p.cast<cplx>();
  out.x = e.x.cast<cplx>();
  out.residual_norm_squared = static_cast<double>(e.residual_norm_squared);
  return out;
}

void BroSystem::append(cplx b) {
  const KernelRef r = params_.candidate(b);
  validate(space_, r);
  const long double knorm2 = kernel_inner_extended(space_, r, r).real();
  const LVector g = kernel_column(space_, r, params_);
  const ExactProjection pr = project_exact(g, knorm2);
  if (pr.residual_norm_squared < kSpanTol * knorm2) {
    throw DegenerateExtension("kernel at " + format_point(r.center) + " with derivative order " +
                              std::to_string(r.deriv_order) + " lies in the span of the system");
  }
  const long double nu = std::sqrt(pr.residual_norm_squared);
  const Eigen::Index n = static_cast<Eigen::Index>(size());

  for (LMatrix* m : {&cx_, &gx_, &lx_}) m->conservativeResize(n + 1, n + 1);
  cx_.col(n).setZero();
  lx_.col(n).setZero();
  for (Eigen::Index j = 0; j < n; ++j) {
    cx_(n, j) = pr.x(j) / nu;
    lx_(n, j) = pr.p(j);
    gx_(n, j) = g(j);
    gx_(j, n) = std::conj(g(j));
  }
  cx_(n, n) = 1.0L / nu;
  lx_(n, n) = nu;
  gx_(n, n) = knorm2;
  c_ = cx_.cast<cplx>();
  g_ = gx_.cast<cplx>();
  l_ = lx_.cast<cplx>();
  params_.push(r.center);
}

void BroSystem::require_index(std::size_t k) const {
  if (k < 1 || k > size()) {
    throw DomainError("basis index " + std::to_string(k) + " outside 1.." + std::to_string(size()));
  }
}

cplx BroSystem::eval_B(std::size_t k, cplx z) const { return eval_B_deriv(k, z, 0); }

cplx BroSystem::eval_B_deriv(std::size_t k, cplx z, int order) const {
  require_index(k);
  const Eigen::Index row = static_cast<Eigen::Index>(k - 1);
  cplx acc = 0.0;
  for (Eigen::Index j = 0; j <= row; ++j) {
    acc += c_(row, j) * kernel_zderiv(space_, ref(j), z, order);
  }
  return acc;
}

cplx BroSystem::project(const TargetFunction& f, std::size_t k) const {
  require_index(k);
  const Eigen::Index row = static_cast<Eigen::Index>(k - 1);
  cplx acc = 0.0;
  for (Eigen::Index j = 0; j <= row; ++j) {
    acc += std::conj(c_(row, j)) * project_on_kernel(f, space_, ref(j));
  }
  return acc;
}

std::function<cplx(cplx)> BroSystem::invariant_subspace_kernel(cplx w) const {
  space_.require_interior(w, "kernel point");
  for (const cplx& a : params_.points()) {
    if (std::abs(a - w) <= kCoincideTol) {
      throw DomainError("kernel point " + format_point(w) + " coincides with a parameter");
    }
  }
  const KernelRef kw{w, 0};
  const Eigen::Index n = static_cast<Eigen::Index>(size());
  // k_w - sum_k <k_w, B_k> B_k as a kernel combination: coefficient 1 on
  // k_w and -(C^T p)_j on k~_j with p_k = <k_w, B_k> = conj(B_k(w)).
  CVector p(n);
  for (Eigen::Index k = 0; k < n; ++k) p(k) = std::conj(eval_B(static_cast<std::size_t>(k + 1), w));
  const CVector x = -(c_.triangularView<Eigen::Lower>().transpose() * p);
  std::vector<KernelRef> refs;
  for (Eigen::Index j = 0; j < n; ++j) refs.push_back(ref(j));
  const SpaceSpec space = space_;
  return [space, kw, refs, x](cplx z) {
    cplx acc = kernel_eval(space, kw, z);
    for (std::size_t j = 0; j < refs.size(); ++j) {
      acc += x(static_cast<Eigen::Index>(j)) * kernel_eval(space, refs[j], z);
    }
    return acc;
  };
}

double BroSystem::orthonormality_defect() const {
  if (size() == 0) return 0.0;
  const LMatrix c = cx_.triangularView<Eigen::Lower>();
  const LMatrix m = c * gx_ * c.adjoint() - LMatrix::Identity(c.rows(), c.cols());
  return static_cast<double>(m.cwiseAbs().maxCoeff());
}

nlohmann::json BroSystem::to_json() const {
  nlohmann::json j;
  j["space"] = space_.describe();
  nlohmann::json params = nlohmann::json::array();
  for (std::size_t k = 0; k < size(); ++k) {
    params.push_back({{"re", params_.points()[k].real()},
                      {"im", params_.points()[k].imag()},
                      {"multiplicity", params_.multiplicities()[k]}});
  }
  j["params"] = params;
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < c_.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k <= i; ++k) row.push_back({c_(i, k).real(), c_(i, k).imag()});
    rows.push_back(row);
  }
  j["coeffs"] = rows;
  return j;
}

}  // namespace bergman
