#pragma once

// Property checks shared by the unit tests and the acceptance runner. Every
// quantity here is recomputed from kernel closed forms or quadrature rather
// than read back from the system under test.

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "bergman/orthosystem.hpp"
#include "bergman/poafd.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/rng.hpp"

namespace checks {

using bergman::BroSystem;
using bergman::cplx;
using bergman::CMatrix;

// <B_u of s1, B_v of s2> (0-based rows) from the kernel Gram entries,
// pairings and accumulation in long double so the check adds no rounding of its own. By
// default C is taken at the precision the recursion carries; `stored` uses
// the double copy that evaluation goes through.
inline cplx cross_inner(const BroSystem& s1, std::size_t u, const BroSystem& s2, std::size_t v,
                        bool stored = false) {
  using lc = std::complex<long double>;
  const auto c = [stored](const BroSystem& s, std::size_t r, std::size_t k) {
    const auto ri = static_cast<Eigen::Index>(r), ki = static_cast<Eigen::Index>(k);
    return stored ? lc(s.coeffs()(ri, ki)) : s.coeffs_extended()(ri, ki);
  };
  lc acc = 0.0L;
  for (std::size_t i = 0; i <= u; ++i) {
    for (std::size_t j = 0; j <= v; ++j) {
      acc += c(s1, u, i) * std::conj(c(s2, v, j)) * bergman::kernel_inner_extended(s1.space(), s1.ref(i), s2.ref(j));
    }
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// max |<B_i, B_j> - delta_ij| using kernel_inner directly.
inline double algebraic_defect(const BroSystem& s, bool stored = false) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      worst = std::max(worst, std::abs(cross_inner(s, i, s, j, stored) - (i == j ? 1.0 : 0.0)));
  return worst;
}

// Same defect with <B_i, B_j> computed by area quadrature.
inline double quadrature_defect(const BroSystem& s, const bergman::AreaQuadrature& q) {
  const std::size_t n = s.size();
  const auto& pts = q.points();
  CMatrix vals(pts.size(), n);
  for (std::size_t p = 0; p < pts.size(); ++p)
    for (std::size_t k = 0; k < n; ++k) vals(p, k) = s.eval_B(k + 1, pts[p]);
  Eigen::VectorXd w(pts.size());
  for (std::size_t p = 0; p < pts.size(); ++p) w(p) = q.weights()[p];
  const CMatrix gram = vals.transpose() * w.asDiagonal() * vals.conjugate();
  return (gram - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

// Random parameter sequence in |z| <= rmax; with `repeat` set, at least one
// earlier point is reused.
inline std::vector<cplx> random_sequence(bergman::Rng& rng, int n, double rmax, bool repeat) {
  std::vector<cplx> pts;
  for (int k = 0; k < n; ++k) {
    if (repeat && k > 0 && bergman::uniform01(rng) < 0.35) {
      pts.push_back(pts[rng() % pts.size()]);
    } else {
      const double r = rmax * std::sqrt(bergman::uniform01(rng));
      pts.push_back(std::polar(r, 2.0 * 3.14159265358979323846 * bergman::uniform01(rng)));
    }
  }
  if (repeat && n >= 2) {
    bool any = false;
    for (std::size_t i = 1; i < pts.size() && !any; ++i)
      any = std::find(pts.begin(), pts.begin() + i, pts[i]) != pts.begin() + i;
    if (!any) pts.back() = pts.front();
  }
  return pts;
}

// Distance between the last element of `sys` extended at a + h e^{i theta}
// and at a itself, after optimal unimodular alignment.
inline double limit_gap(const BroSystem& sys, cplx a, double h, double theta) {
  const BroSystem exact = sys.extend(a);
  const BroSystem near = sys.extend(a + std::polar(h, theta));
  const std::size_t n = sys.size();
  const double ip = std::abs(cross_inner(near, n, exact, n));
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * ip));
}

// Largest |r^{(m)}(a_j)| over selected points and m < l(a_j), where
// r = f - reconstruction.
inline double residual_zero_defect(const bergman::Decomposition& d, const bergman::TargetFunction& f) {
  std::map<std::pair<double, double>, int> mult;
  for (const auto& it : d.iterations) {
    auto& m = mult[{it.point.real(), it.point.imag()}];
    m = std::max(m, it.multiplicity);
  }
  double worst = 0.0;
  for (const auto& [key, l] : mult) {
    const cplx a(key.first, key.second);
    for (int m = 0; m < l; ++m) {
      const cplx r = bergman::eval_deriv(f, d.space, a, m) - d.reconstruct_deriv(a, m);
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

// Worst relative Pythagoras defect |E_{k+1} - (E_k - |c_k|^2)| / ||f||^2
// and whether the residual energies are nonincreasing.
struct EnergyCheck {
  double worst = 0.0;
  bool monotone = true;
};

inline EnergyCheck energy_check(const bergman::Decomposition& d) {
  EnergyCheck out;
  double prev = d.norm_squared;
  double cum = 0.0;
  for (const auto& it : d.iterations) {
    cum += std::norm(it.coeff);
    const double step = std::abs(it.residual_energy - (prev - std::norm(it.coeff))) / d.norm_squared;
    const double total = std::abs(it.residual_energy - (d.norm_squared - cum)) / d.norm_squared;
    out.worst = std::max({out.worst, step, total});
    if (it.residual_energy > prev * (1.0 + 1e-12) + 1e-15 * d.norm_squared) out.monotone = false;
    prev = it.residual_energy;
  }
  return out;
}

}  // namespace checks
