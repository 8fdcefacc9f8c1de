#include "bergman/poafd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bergman/error.hpp"
#include "bergman/halfplane.hpp"
#include "parallel.hpp"

namespace bergman {
namespace {

constexpr double kTieTol = 1e-12;
constexpr double kExhaustedTol = 1e-12;
// Numerators below this multiple of ||f|| ||k_b|| are rounding residue;
// dividing them by a small candidate norm would otherwise manufacture maxima
// next to existing parameters once f is spanned.
constexpr double kRoundingFloor = 1e-13;

struct GridPoint {
  cplx b;
  double half_width;  ///< extent of the first refinement patch
};

double angle_0_2pi(cplx b) {
  double t = std::arg(b);
  if (t < 0.0) t += 2.0 * std::numbers::pi;
  return t;
}

// True when candidate (v, b) beats the incumbent (best, best_b).
bool better(double v, cplx b, double best, cplx best_b) {
  const double scale = std::max(v, best);
  if (std::abs(v - best) > kTieTol * scale) return v > best;
  if (std::abs(b) != std::abs(best_b)) return std::abs(b) < std::abs(best_b);
  return angle_0_2pi(b) < angle_0_2pi(best_b);
}

bool admissible(const SpaceSpec& space, const SelectionConfig& cfg, cplx b) {
  if (!space.contains(b)) return false;
  if (space.is_disc()) return std::abs(b) <= 1.0 - cfg.boundary_margin;
  return BoundaryBand(cfg.hp_delta, cfg.hp_radius).admits(b);
}

std::vector<GridPoint> disc_grid(const SelectionConfig& cfg) {
  using std::numbers::pi;
  const int nr = cfg.radial_levels;
  const int na = cfg.angular_count;
  std::vector<double> radii(nr);
  for (int i = 0; i < nr; ++i) radii[i] = 1.0 - std::pow(cfg.boundary_margin, (i + 1.0) / nr);

  std::vector<GridPoint> grid;
  grid.reserve(static_cast<std::size_t>(nr) * na + 1);
  grid.push_back({0.0, radii[0]});
  for (int i = 0; i < nr; ++i) {
    const double inner = i == 0 ? radii[0] : radii[i] - radii[i - 1];
    const double outer = i + 1 < nr ? radii[i + 1] - radii[i] : inner;
    const double hw = std::max({inner, outer, 2.0 * pi * radii[i] / na});
    for (int j = 0; j < na; ++j) grid.push_back({std::polar(radii[i], 2.0 * pi * j / na), hw});
  }
  return grid;
}

std::vector<GridPoint> half_plane_grid(const SelectionConfig& cfg) {
  const BoundaryBand band(cfg.hp_delta, cfg.hp_radius);
  const int ny = cfg.im_levels;
  const int side = (cfg.re_count - 1) / 2;
  std::vector<double> ys(ny);
  for (int j = 0; j < ny; ++j) {
    ys[j] = ny == 1 ? cfg.hp_delta
                    : cfg.hp_delta * std::pow(cfg.hp_radius / cfg.hp_delta, j / (ny - 1.0));
  }
  std::vector<double> xs;
  xs.reserve(2 * side + 1);
  const double x0 = 1e-2;
  for (int i = side - 1; i >= 0; --i) {
    xs.push_back(-(side == 1 ? x0 : x0 * std::pow(cfg.hp_radius / x0, i / (side - 1.0))));
  }
  xs.push_back(0.0);
  for (int i = 0; i < side; ++i) {
    xs.push_back(side == 1 ? x0 : x0 * std::pow(cfg.hp_radius / x0, i / (side - 1.0)));
  }

  auto gap = [](const std::vector<double>& v, std::size_t i) {
    double g = 0.0;
    if (i > 0) g = std::max(g, v[i] - v[i - 1]);
    if (i + 1 < v.size()) g = std::max(g, v[i + 1] - v[i]);
    return g;
  };
  std::vector<GridPoint> grid;
  for (std::size_t j = 0; j < ys.size(); ++j) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const cplx b(xs[i], ys[j]);
      if (band.excluded(b)) continue;
      grid.push_back({b, std::max(gap(xs, i), std::min(gap(ys, j), 0.5 * ys[j]))});
    }
  }
  return grid;
}

std::vector<GridPoint> build_grid(const SpaceSpec& space, const SelectionConfig& cfg) {
  return space.is_disc() ? disc_grid(cfg) : half_plane_grid(cfg);
}

// |<f, B^r>| for an arbitrary candidate kernel, from closed-form pairings.
// `f_norm` > 0 enables the rounding floor.
double exact_objective(const BroSystem& sys, const TargetFunction& f, const std::vector<cplx>& d,
                       const KernelRef& r, double f_norm = 0.0) {
  const BroSystem::Projection pr = sys.project_kernel(r);
  if (pr.residual_norm_squared < kSpanTol * pr.kernel_norm_squared) return 0.0;
  cplx num = eval_deriv(f, sys.space(), r.center, r.deriv_order);
  for (std::size_t k = 0; k < d.size(); ++k) num -= std::conj(pr.p(static_cast<Eigen::Index>(k))) * d[k];
  if (std::abs(num) <= kRoundingFloor * f_norm * std::sqrt(pr.kernel_norm_squared)) return 0.0;
  return std::abs(num) / std::sqrt(pr.residual_norm_squared);
}

// Per grid point, with K = K(b, b): E_k = B_k(b) / sqrt(K),
// R = f(b) / sqrt(K) - sum_k d_k E_k and D = 1 - sum_k |E_k|^2, so that the
// objective for m = 0 candidates is |R| / sqrt(D).
class GridCache {
 public:
  GridCache(const SpaceSpec& space, const TargetFunction& f, const SelectionConfig& cfg)
      : space_(space), cfg_(cfg), grid_(build_grid(space, cfg)) {
    const std::size_t n = grid_.size();
    inv_sqrt_k_.resize(n);
    r_.resize(n);
    d_.assign(n, 1.0);
    detail::parallel_for(n, cfg_.threads, [&](std::size_t i) {
      const cplx b = grid_[i].b;
      inv_sqrt_k_[i] = 1.0 / std::sqrt(kernel_norm_squared(space_, {b, 0}));
      r_[i] = eval(f, space_, b) * inv_sqrt_k_[i];
    });
  }

  const std::vector<GridPoint>& grid() const { return grid_; }

  // Absorbs rows of sys beyond those already seen; d[k] = <f, B_k>.
  void update(const BroSystem& sys, const std::vector<cplx>& d) {
    const CMatrix& L = sys.cholesky();
    while (e_.size() < sys.size()) {
      const std::size_t n = e_.size();
      const KernelRef r = sys.ref(n);
      const Eigen::Index row = static_cast<Eigen::Index>(n);
      std::vector<cplx> en(grid_.size());
      detail::parallel_for(grid_.size(), cfg_.threads, [&](std::size_t i) {
        cplx v = kernel_eval(space_, r, grid_[i].b) * inv_sqrt_k_[i];
        for (std::size_t k = 0; k < n; ++k) v -= L(row, static_cast<Eigen::Index>(k)) * e_[k][i];
        v /= L(row, row).real();
        en[i] = v;
        d_[i] -= std::norm(v);
        r_[i] -= d[n] * v;
      });
      e_.push_back(std::move(en));
    }
  }

  double objective(std::size_t i, double f_norm) const {
    if (d_[i] < kSpanTol || std::abs(r_[i]) <= kRoundingFloor * f_norm) return 0.0;
    return std::abs(r_[i]) / std::sqrt(d_[i]);
  }

 private:
  SpaceSpec space_;
  SelectionConfig cfg_;
  std::vector<GridPoint> grid_;
  std::vector<double> inv_sqrt_k_;
  std::vector<cplx> r_;
  std::vector<double> d_;
  std::vector<std::vector<cplx>> e_;
};

struct Winner {
  cplx b;
  double value = -1.0;
  double half_width = 0.0;  ///< 0 for repeat candidates, which are not refined
  int deriv_order = 0;
};

Winner select_with_cache(const BroSystem& sys, const TargetFunction& f, const std::vector<cplx>& d,
                         const GridCache& cache, const SelectionConfig& cfg, double f_norm) {
  const std::vector<GridPoint>& grid = cache.grid();
  std::vector<double> values(grid.size());
  detail::parallel_for(grid.size(), cfg.threads, [&](std::size_t i) {
    // A grid node sitting on a parameter is handled as a repeat candidate.
    values[i] = sys.params().candidate(grid[i].b).deriv_order > 0 ? 0.0 : cache.objective(i, f_norm);
  });

  Winner best;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (best.value < 0.0 || better(values[i], grid[i].b, best.value, best.b)) {
      best = {grid[i].b, values[i], grid[i].half_width, 0};
    }
  }

  // Repeat candidates: each distinct parameter with its next derivative order.
  std::vector<cplx> seen;
  for (const cplx& a : sys.params().points()) {
    if (std::find(seen.begin(), seen.end(), a) != seen.end()) continue;
    seen.push_back(a);
    const KernelRef r = sys.params().candidate(a);
    const double v = exact_objective(sys, f, d, r, f_norm);
    if (better(v, a, best.value, best.b)) best = {a, v, 0.0, r.deriv_order};
  }

  // Local refinement around a grid winner.
  double hw = best.half_width;
  const int P = cfg.refine_half_points;
  for (int round = 0; round < cfg.refine_rounds && hw > 0.0; ++round) {
    const cplx centre = best.b;
    const double step = hw / P;
    for (int ix = -P; ix <= P; ++ix) {
      for (int iy = -P; iy <= P; ++iy) {
        if (ix == 0 && iy == 0) continue;
        const cplx b = centre + cplx(ix * step, iy * step);
        if (!admissible(sys.space(), cfg, b)) continue;
        const KernelRef r = sys.params().candidate(b);
        const double v = exact_objective(sys, f, d, r, f_norm);
        if (better(v, r.center, best.value, best.b)) best = {r.center, v, hw, r.deriv_order};
      }
    }
    hw /= 4.0;
  }

  if (best.half_width > 0.0 && best.deriv_order == 0 && cfg.polish_tol > 0.0 && cfg.refine_rounds > 0) {
    static const cplx dirs[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    double step = 4.0 * hw / P;
    for (int it = 0; it < 400 && step > cfg.polish_tol; ++it) {
      bool moved = false;
      const cplx centre = best.b;
      for (const cplx& u : dirs) {
        const cplx b = centre + step * u;
        if (!admissible(sys.space(), cfg, b)) continue;
        const KernelRef r = sys.params().candidate(b);
        const double v = exact_objective(sys, f, d, r, f_norm);
        if (v > best.value) {
          best = {r.center, v, best.half_width, r.deriv_order};
          moved = true;
        }
      }
      if (best.deriv_order > 0) break;
      if (!moved) step *= 0.5;
    }
  }

  if (!(best.value > kExhaustedTol * f_norm)) {
    throw SelectionExhausted("selection objective vanishes on the grid (max " +
                             std::to_string(std::max(best.value, 0.0)) + ")");
  }
  if (best.deriv_order + 1 > cfg.max_multiplicity) {
    throw SelectionExhausted("maximiser " + format_point(best.b) + " would reach multiplicity " +
                             std::to_string(best.deriv_order + 1) + " above the cap of " +
                             std::to_string(cfg.max_multiplicity));
  }
  return best;
}

std::vector<cplx> all_projections(const BroSystem& sys, const TargetFunction& f) {
  std::vector<cplx> d(sys.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = sys.project(f, k + 1);
  return d;
}

}  // namespace

void SelectionConfig::validate() const {
  if (radial_levels < 1 || angular_count < 1 || im_levels < 1 || re_count < 3) {
    throw ConfigError("selection grid must be nonempty");
  }
  if (!(boundary_margin > 0.0) || !(boundary_margin < 1.0)) {
    throw ConfigError("boundary_margin must lie in (0, 1)");
  }
  if (refine_rounds < 0 || refine_half_points < 1) throw ConfigError("refinement settings must be >= 0");
  if (!(polish_tol >= 0.0)) throw ConfigError("polish_tol must be >= 0");
  if (max_multiplicity < 1) throw ConfigError("max_multiplicity must be >= 1");
  if (!(hp_delta > 0.0) || !(hp_radius > hp_delta)) throw ConfigError("half-plane grid needs 0 < delta < R");
}

double selection_objective(const BroSystem& sys, const TargetFunction& f, const std::vector<cplx>& d,
                           cplx b) {
  sys.space().require_interior(b, "candidate");
  if (d.size() != sys.size()) throw DomainError("coefficient count does not match the system");
  return exact_objective(sys, f, d, sys.params().candidate(b));
}

double selection_objective(const BroSystem& sys, const TargetFunction& f, cplx b) {
  return selection_objective(sys, f, all_projections(sys, f), b);
}

cplx select_next(const BroSystem& sys, const TargetFunction& f, const SelectionConfig& cfg) {
  cfg.validate();
  const std::vector<cplx> d = all_projections(sys, f);
  GridCache cache(sys.space(), f, cfg);
  cache.update(sys, d);
  const double f_norm = std::sqrt(norm_squared(f, sys.space()));
  return select_with_cache(sys, f, d, cache, cfg, f_norm).b;
}

Decomposition decompose(const TargetFunction& f, const SpaceSpec& space, const SelectionConfig& cfg,
                        int n_iter) {
  cfg.validate();
  if (n_iter < 1) throw ConfigError("n_iter must be >= 1");
  Decomposition out(space);
  out.target_label = f.label();
  out.norm_squared = norm_squared(f, space);
  if (!(out.norm_squared > 0.0)) {
    out.stop_reason = "zero target";
    return out;
  }
  const double f_norm = std::sqrt(out.norm_squared);

  GridCache cache(space, f, cfg);
  std::vector<cplx> d;
  double residual = out.norm_squared;
  for (int it = 0; it < n_iter; ++it) {
    Winner w;
    try {
      w = select_with_cache(out.system, f, d, cache, cfg, f_norm);
      out.system = std::move(out.system).extend(w.b);
    } catch (const SelectionExhausted& e) {
      out.stop_reason = std::string("selection exhausted: ") + e.what();
      break;
    } catch (const DegenerateExtension& e) {
      out.stop_reason = std::string("degenerate extension: ") + e.what();
      break;
    }
    // <f, B_n> = (f^{(m)}(a_n) - sum_k conj(L[n][k]) <f, B_k>) / L[n][n]
    const std::size_t n = out.system.size() - 1;
    const Eigen::Index row = static_cast<Eigen::Index>(n);
    const CMatrix& L = out.system.cholesky();
    const KernelRef r = out.system.ref(n);
    cplx coeff = eval_deriv(f, space, r.center, r.deriv_order);
    for (std::size_t k = 0; k < n; ++k) coeff -= std::conj(L(row, static_cast<Eigen::Index>(k))) * d[k];
    coeff /= L(row, row).real();
    d.push_back(coeff);
    residual -= std::norm(coeff);
    out.iterations.push_back({r.center, r.deriv_order + 1, coeff, residual});
    if (it + 1 < n_iter) cache.update(out.system, d);
  }
  if (out.stop_reason.empty()) out.stop_reason = "iteration limit";
  return out;
}

std::vector<cplx> Decomposition::coefficients() const {
  std::vector<cplx> c;
  c.reserve(iterations.size());
  for (const Iteration& it : iterations) c.push_back(it.coeff);
  return c;
}

double Decomposition::relative_error(std::size_t k) const {
  if (k > iterations.size()) throw DomainError("iteration index out of range");
  if (k == 0) return 1.0;
  return std::sqrt(std::max(0.0, iterations[k - 1].residual_energy) / norm_squared);
}

cplx Decomposition::reconstruct(cplx z) const { return reconstruct_deriv(z, 0); }

cplx Decomposition::reconstruct_deriv(cplx z, int order) const {
  space.require_interior(z, "evaluation point");
  const std::size_t n = iterations.size();
  if (n == 0) return 0.0;
  // sum_k d_k B_k = sum_j (sum_{k>=j} d_k C[k][j]) k~_j
  const CMatrix& C = system.coeffs();
  cplx acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cplx w = 0.0;
    for (std::size_t k = j; k < n; ++k) {
      w += iterations[k].coeff * C(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
    }
    acc += w * kernel_zderiv(space, system.ref(j), z, order);
  }
  return acc;
}

nlohmann::json Decomposition::to_json() const {
  nlohmann::json j;
  j["space"] = space.describe();
  j["target"] = target_label;
  j["norm_squared"] = norm_squared;
  j["stop_reason"] = stop_reason;
  nlohmann::json its = nlohmann::json::array();
  for (std::size_t k = 0; k < iterations.size(); ++k) {
    const Iteration& it = iterations[k];
    its.push_back({{"k", k + 1},
                   {"point", {it.point.real(), it.point.imag()}},
                   {"multiplicity", it.multiplicity},
                   {"coeff", {it.coeff.real(), it.coeff.imag()}},
                   {"residual_energy", it.residual_energy}});
  }
  j["iterations"] = its;
  j["system"] = system.to_json();
  return j;
}

std::vector<RateBoundRow> rate_bound(const Decomposition& d, double M) {
  if (!(M > 0.0) || !std::isfinite(M)) throw ConfigError("rate bound needs the mix weight M > 0");
  std::vector<RateBoundRow> rows;
  for (std::size_t k = 1; k <= d.iterations.size() + 1; ++k) {
    const double energy = k == 1 ? d.norm_squared : d.iterations[k - 2].residual_energy;
    const double norm = std::sqrt(std::max(0.0, energy));
    const double bound = M / std::sqrt(static_cast<double>(k));
    // Single-term targets meet the bound with equality at k = 1.
    rows.push_back({k, norm, bound, norm > bound * (1.0 + 1e-12)});
  }
  return rows;
}

}  // namespace bergman
