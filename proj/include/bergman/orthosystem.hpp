#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "bergman/funcspace.hpp"
#include "json.hpp"

namespace bergman {

/// Points closer than this are the same parameter; the second occurrence
/// contributes a derivative kernel.
inline constexpr double kCoincideTol = 1e-9;
/// Relative residual norm^2 below which a new kernel counts as spanned.
inline constexpr double kSpanTol = 1e-12;

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;
using LMatrix = Eigen::Matrix<lcplx, Eigen::Dynamic, Eigen::Dynamic>;
using LVector = Eigen::Matrix<lcplx, Eigen::Dynamic, 1>;

/// Ordered parameters a_1..a_n with prefix multiplicities l(a_k).
class ParamSeq {
 public:
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<cplx>& points() const { return points_; }
  const std::vector<int>& multiplicities() const { return mult_; }

  /// Kernel of position k (0-based): (a_k, l(a_k) - 1).
  KernelRef ref(std::size_t k) const { return {points_[k], mult_[k] - 1}; }

  /// Kernel that appending b would contribute. A b within kCoincideTol of
  /// an earlier point is snapped onto that point exactly.
  KernelRef candidate(cplx b) const;

  /// Appends b and returns its kernel.
  KernelRef push(cplx b);

 private:
  std::vector<cplx> points_;
  std::vector<int> mult_;
};

/// Orthonormal system B_1..B_n obtained by Gram-Schmidt on the generalised
/// kernels of a parameter sequence.
///
/// Stored as B_k = sum_{j<=k} C[k][j] k~_j together with the kernel Gram
/// matrix G[i][j] = <k~_i, k~_j> and L[i][k] = <k~_i, B_k>, so G = L L^H
/// and C = L^{-1}. Diagonals of C and L are real and positive. The
/// recursion runs in extended precision; the accessors return doubles.
class BroSystem {
 public:
  explicit BroSystem(const SpaceSpec& space) : space_(space) {}
  static BroSystem from_points(const SpaceSpec& space, const std::vector<cplx>& points);

  const SpaceSpec& space() const { return space_; }
  const ParamSeq& params() const { return params_; }
  std::size_t size() const { return params_.size(); }
  KernelRef ref(std::size_t k) const { return params_.ref(k); }

  const CMatrix& coeffs() const { return c_; }
  const CMatrix& gram() const { return g_; }
  const CMatrix& cholesky() const { return l_; }
  /// C as carried through the recursion, before rounding to double.
  const LMatrix& coeffs_extended() const { return cx_; }

  /// Appends b. Throws DegenerateExtension when the new kernel is
  /// numerically in the current span.
  BroSystem extend(cplx b) const&;
  BroSystem extend(cplx b) &&;

  /// For a candidate kernel r: p_k = <k~_r, B_k>, the residual
  /// v = k~_r - sum_k p_k B_k = k~_r + sum_j x_j k~_j and its squared norm.
  struct Projection {
    KernelRef ref;
    CVector p;
    CVector x;
    double kernel_norm_squared;
    double residual_norm_squared;
  };
  Projection project_kernel(const KernelRef& r) const;

  /// B_k(z), k 1-based.
  cplx eval_B(std::size_t k, cplx z) const;
  /// order-th derivative of B_k at z.
  cplx eval_B_deriv(std::size_t k, cplx z, int order) const;

  /// <f, B_k>, k 1-based.
  cplx project(const TargetFunction& f, std::size_t k) const;

  /// z -> k_w(z) - sum_k <k_w, B_k> B_k(z), the reproducing kernel of the
  /// functions vanishing on the parameters. Rejects w on a parameter.
  std::function<cplx(cplx)> invariant_subspace_kernel(cplx w) const;

  /// max |C G C^H - I| entrywise.
  double orthonormality_defect() const;

  nlohmann::json to_json() const;

 private:
  struct ExactProjection {
    LVector p;
    LVector x;
    long double residual_norm_squared;
  };
  ExactProjection project_exact(const LVector& g, long double kernel_norm_squared) const;
  void append(cplx b);
  void require_index(std::size_t k) const;

  SpaceSpec space_;
  ParamSeq params_;
  CMatrix c_;
  CMatrix g_;
  CMatrix l_;
  LMatrix cx_;
  LMatrix gx_;
  LMatrix lx_;
};

}  // namespace bergman
