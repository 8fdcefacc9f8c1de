#include "bergman/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "bergman/error.hpp"
#include "bergman/rng.hpp"

namespace bergman {
namespace {

using nlohmann::json;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.12e", v); }

cplx parse_cplx(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j.at(0).get<double>(), j.at(1).get<double>()};
  if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
  throw ConfigError(std::string(what) + ": expected a number, [re, im] or {re, im}");
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<cplx> parse_cplx_list(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array");
  std::vector<cplx> out;
  for (const json& e : j) out.push_back(parse_cplx(e, what));
  return out;
}

cplx random_disc_point(Rng& rng, double max_radius) {
  const double r = max_radius * std::sqrt(uniform01(rng));
  return std::polar(r, 2.0 * std::numbers::pi * uniform01(rng));
}

TargetFunction random_kernel_mix(const json& j, const SpaceSpec& space, Rng& rng) {
  const int count = j.value("count", 5);
  if (count < 1) throw ConfigError("random kernel mix needs count >= 1");
  std::vector<KernelTerm> terms;
  for (int l = 0; l < count; ++l) {
    const cplx c(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
    cplx b;
    if (space.is_disc()) {
      b = random_disc_point(rng, j.value("max_radius", 0.9));
    } else {
      const double x = uniform(rng, -j.value("re_max", 3.0), j.value("re_max", 3.0));
      b = {x, uniform(rng, j.value("im_min", 0.2), j.value("im_max", 3.0))};
    }
    terms.push_back({c, {b, 0}});
  }
  return TargetFunction::kernel_mix(space, std::move(terms), "kernelmix (random)");
}

TargetFunction builtin_target(const json& j, const SpaceSpec& space, Rng& rng) {
  const std::string name = j.at("name").get<std::string>();
  if (name == "f_beta") {
    return f_beta(j.at("beta").get<double>(), j.value("degree", 1200),
                  j.contains("a") ? parse_cplx(j.at("a"), "a") : cplx(1.0));
  }
  if (name == "poly_decay") {
    return poly_decay(j.value("degree", 10), j.value("exponent", 2.0));
  }
  if (name == "blaschke") {
    std::vector<cplx> zeros;
    if (j.contains("zeros")) {
      zeros = parse_cplx_list(j.at("zeros"), "zeros");
    } else {
      const int count = j.value("count", 10);
      const double rmax = j.value("max_radius", 0.9);
      for (int k = 0; k < count; ++k) zeros.push_back(random_disc_point(rng, rmax));
    }
    return blaschke(zeros);
  }
  if (name == "chirp") {
    return chirp_embedded(j.value("samples", 1024), j.value("degree", 256),
                          j.value("t0", -std::numbers::pi));
  }
  (void)space;
  throw ConfigError("unknown builtin target '" + name + "'");
}

void require_disc(const SpaceSpec& space, const char* what) {
  if (!space.is_disc()) throw ConfigError(std::string(what) + " needs the disc geometry");
}

json trace_summary(const MethodTrace& t, const std::vector<double>& targets) {
  json j;
  j["steps"] = t.steps();
  j["final_relative_error"] = t.relative_error(t.steps());
  json to = json::object();
  for (double e : targets) {
    const auto k = t.steps_to(e);
    to[fmt("%g", e)] = k ? json(*k) : json(nullptr);
  }
  j["steps_to_error"] = to;
  j["stop_reason"] = t.stop_reason;
  return j;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << text;
  if (!out) throw Error("write failed for " + p.string());
}

std::string beta_alpha_tag(double beta, double alpha) {
  return "beta" + fmt("%g", beta) + "_alpha" + fmt("%g", alpha);
}

}  // namespace

double MethodTrace::relative_error(std::size_t k) const {
  if (k > steps()) throw DomainError("step index out of range");
  if (k == 0) return 1.0;
  return std::sqrt(std::max(0.0, residual_energy[k - 1]) / norm_squared);
}

std::optional<std::size_t> MethodTrace::steps_to(double target) const {
  for (std::size_t k = 0; k <= steps(); ++k) {
    if (relative_error(k) <= target) return k;
  }
  return std::nullopt;
}

MethodTrace trace_of(const Decomposition& d) {
  MethodTrace t;
  t.method = "poafd";
  t.norm_squared = d.norm_squared;
  for (const Iteration& it : d.iterations) {
    t.coeffs.push_back(it.coeff);
    t.residual_energy.push_back(it.residual_energy);
  }
  t.stop_reason = d.stop_reason;
  return t;
}

MethodTrace fourier_baseline(const TargetFunction& f, const SpaceSpec& space, int n_terms) {
  require_disc(space, "the Fourier baseline");
  if (n_terms < 0) throw ConfigError("fourier_terms must be >= 0");
  if (f.as_black_box()) throw DomainError("the Fourier baseline needs a Taylor-convertible target");
  MethodTrace t;
  t.method = "fourier";
  t.norm_squared = norm_squared(f, space);
  if (n_terms == 0) return t;
  const std::vector<cplx> a = taylor_coefficients(f, space, n_terms - 1);
  double residual = t.norm_squared;
  for (int k = 0; k < n_terms; ++k) {
    // <f, z^k / ||z^k||> = a_k ||z^k||
    const cplx c = a[k] * std::sqrt(monomial_norm_squared(k, space.alpha()));
    residual -= std::norm(c);
    t.coeffs.push_back(c);
    t.residual_energy.push_back(residual);
  }
  t.stop_reason = "iteration limit";
  return t;
}

SpaceSpec make_space(const json& j) {
  const std::string g = j.value("geometry", std::string("disc"));
  try {
    if (g == "disc") return SpaceSpec::disc(j.value("alpha", 0.0));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (g == "half_plane" || g == "halfplane") return SpaceSpec::half_plane();
  throw ConfigError("unknown geometry '" + g + "'");
}

SelectionConfig make_selection(const json& j) {
  SelectionConfig c;
  if (j.is_null()) return c;
  if (!j.is_object()) throw ConfigError("selection must be an object");
  c.radial_levels = j.value("radial_levels", c.radial_levels);
  c.angular_count = j.value("angular_count", c.angular_count);
  c.im_levels = j.value("im_levels", c.im_levels);
  c.re_count = j.value("re_count", c.re_count);
  c.hp_delta = j.value("hp_delta", c.hp_delta);
  c.hp_radius = j.value("hp_radius", c.hp_radius);
  c.refine_rounds = j.value("refine_rounds", c.refine_rounds);
  c.refine_half_points = j.value("refine_half_points", c.refine_half_points);
  c.polish_tol = j.value("polish_tol", c.polish_tol);
  c.boundary_margin = j.value("boundary_margin", c.boundary_margin);
  c.max_multiplicity = j.value("max_multiplicity", c.max_multiplicity);
  c.threads = j.value("threads", c.threads);
  c.validate();
  return c;
}

TargetFunction make_target(const json& j, const SpaceSpec& space, std::uint64_t seed) {
  Rng rng(seed);
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "taylor") {
      require_disc(space, "a Taylor target");
      return TargetFunction::taylor(parse_cplx_list(j.at("coeffs"), "coeffs"));
    }
    if (type == "kernelmix") {
      if (j.contains("random")) return random_kernel_mix(j.at("random"), space, rng);
      std::vector<KernelTerm> terms;
      for (const json& t : j.at("terms")) {
        terms.push_back({parse_cplx(t.at("c"), "c"), {parse_cplx(t.at("b"), "b"), t.value("m", 0)}});
      }
      return TargetFunction::kernel_mix(space, std::move(terms));
    }
    if (type == "builtin") {
      require_disc(space, "builtin targets");
      return builtin_target(j, space, rng);
    }
    throw ConfigError("unknown target type '" + type + "'");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("target: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("target: ") + e.what());
  }
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  try {
    c.name = j.value("name", c.name);
    if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos) {
      throw ConfigError("name must be a nonempty file stem");
    }
    c.kind = j.value("experiment", c.kind);
    if (c.kind != "decompose" && c.kind != "alpha_grid") {
      throw ConfigError("experiment must be 'decompose' or 'alpha_grid'");
    }
    c.space = j.value("space", json::object());
    make_space(c.space);
    const std::string method = j.value("method", std::string("both"));
    if (method == "poafd") {
      c.run_fourier = false;
    } else if (method == "fourier") {
      c.run_poafd = false;
    } else if (method != "both") {
      throw ConfigError("method must be poafd, fourier or both");
    }
    c.n_iter = j.value("n_iter", c.n_iter);
    if (c.n_iter < 1) throw ConfigError("n_iter must be >= 1");
    c.fourier_terms = j.value("fourier_terms", c.n_iter);
    if (c.fourier_terms < 0) throw ConfigError("fourier_terms must be >= 0");
    c.error_targets = j.value("error_targets", std::vector<double>{});
    for (double e : c.error_targets) {
      if (!(e > 0.0)) throw ConfigError("error targets must be positive");
    }
    if (j.contains("compare_fourier_at")) c.compare_fourier_at = j.at("compare_fourier_at").get<int>();
    c.selection = make_selection(j.value("selection", json()));
    c.seed = j.value("seed", std::uint64_t{0});
    c.output_dir = j.value("output_dir", c.output_dir);
    if (j.contains("reconstruction")) {
      const json& r = j.at("reconstruction");
      c.reconstruction_samples = r.value("samples", c.reconstruction_samples);
      c.reconstruction_radius = r.value("radius", c.reconstruction_radius);
    }
    if (c.kind == "decompose") {
      if (!j.contains("target")) throw ConfigError("missing target");
      c.target = j.at("target");
    } else {
      const json& g = j.at("alpha_grid");
      c.betas = g.at("betas").get<std::vector<double>>();
      c.alpha_offsets = g.value("alpha_offsets", c.alpha_offsets);
      if (g.contains("a")) c.grid_a = parse_cplx(g.at("a"), "a");
      c.grid_degree = g.value("degree", c.grid_degree);
      if (c.betas.empty() || c.alpha_offsets.empty()) throw ConfigError("alpha grid is empty");
    }
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
  return c;
}

RunResult run_experiment(const ExperimentConfig& cfg, bool verbose) {
  RunResult res;
  res.config = cfg;
  json summary;
  summary["name"] = cfg.name;
  summary["experiment"] = cfg.kind;
  summary["seed"] = cfg.seed;

  if (cfg.kind == "decompose") {
    const SpaceSpec space = make_space(cfg.space);
    const TargetFunction f = make_target(cfg.target, space, cfg.seed);
    DecomposeResult dr{space, {}, std::nullopt, json::object()};
    summary["space"] = space.describe();
    summary["target"] = f.label();
    summary["norm_squared"] = norm_squared(f, space);
    json methods = json::object();
    if (cfg.run_fourier) {
      MethodTrace t = fourier_baseline(f, space, cfg.fourier_terms);
      methods["fourier"] = trace_summary(t, cfg.error_targets);
      dr.traces.push_back(std::move(t));
    }
    if (cfg.run_poafd) {
      Decomposition d = decompose(f, space, cfg.selection, cfg.n_iter);
      if (verbose) {
        for (std::size_t k = 0; k < d.iterations.size(); ++k) {
          std::cerr << "poafd step " << k + 1 << ": a = " << format_point(d.iterations[k].point)
                    << " l = " << d.iterations[k].multiplicity
                    << " rel_error = " << d.relative_error(k + 1) << "\n";
        }
      }
      MethodTrace t = trace_of(d);
      json ms = trace_summary(t, cfg.error_targets);
      json params = json::array();
      for (const Iteration& it : d.iterations) {
        params.push_back({{"point", cplx_json(it.point)}, {"multiplicity", it.multiplicity}});
      }
      ms["params"] = params;
      if (const auto M = f.mix_weight()) {
        std::size_t violations = 0;
        for (const RateBoundRow& r : rate_bound(d, *M)) violations += r.violated ? 1 : 0;
        ms["rate_bound"] = {{"M", *M},
                            {"bound", "M/sqrt(k), f_1 = f"},
                            {"note", "the M^2/sqrt(k) variant is not used"},
                            {"violations", violations}};
      }
      methods["poafd"] = ms;
      dr.traces.push_back(std::move(t));
      dr.poafd = std::move(d);
    }
    summary["methods"] = methods;
    if (cfg.compare_fourier_at) {
      const int n = *cfg.compare_fourier_at;
      const MethodTrace ft = fourier_baseline(f, space, n);
      const double err = ft.relative_error(ft.steps());
      json cmp{{"fourier_terms", n}, {"fourier_error", err}};
      std::optional<std::size_t> k;
      for (const MethodTrace& t : dr.traces) {
        if (t.method == "poafd") k = t.steps_to(err);
      }
      cmp["poafd_steps"] = k ? json(*k) : json(nullptr);
      summary["compare_fourier_at"] = cmp;
    }
    std::sort(dr.traces.begin(), dr.traces.end(),
              [](const MethodTrace& a, const MethodTrace& b) { return a.method < b.method; });
    dr.summary = summary;
    res.decompose = std::move(dr);
  } else {
    json rows = json::array();
    for (double beta : cfg.betas) {
      json row{{"beta", beta}};
      json cells = json::array();
      double best_err = std::numeric_limits<double>::infinity();
      double best_alpha = std::nan("");
      for (double off : cfg.alpha_offsets) {
        const double alpha = beta + off;
        json cell{{"alpha", alpha}, {"offset", off}};
        if (!(alpha > -1.0)) {
          cell["skipped"] = "alpha <= -1";
          cells.push_back(cell);
          continue;
        }
        const SpaceSpec space = SpaceSpec::disc(alpha);
        const TargetFunction f = f_beta(beta, cfg.grid_degree, cfg.grid_a);
        const Decomposition d = decompose(f, space, cfg.selection, cfg.n_iter);
        MethodTrace t = trace_of(d);
        const double err = t.relative_error(t.steps());
        cell["iterations"] = t.steps();
        cell["relative_error"] = err;
        if (verbose) std::cerr << "beta " << beta << " alpha " << alpha << " RE " << err << "\n";
        if (err < best_err) {
          best_err = err;
          best_alpha = alpha;
        }
        cells.push_back(cell);
        res.grid.push_back({beta, alpha, std::move(t)});
      }
      row["cells"] = cells;
      row["best_alpha"] = best_alpha;
      row["best_at_beta"] = std::abs(best_alpha - beta) < 1e-12;
      rows.push_back(row);
    }
    summary["a"] = cplx_json(cfg.grid_a);
    summary["n_iter"] = cfg.n_iter;
    summary["matrix"] = rows;
  }
  res.summary = summary;
  return res;
}

std::string decay_csv(const std::vector<MethodTrace>& traces) {
  std::vector<const MethodTrace*> sorted;
  for (const MethodTrace& t : traces) sorted.push_back(&t);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const MethodTrace* a, const MethodTrace* b) { return a->method < b->method; });
  std::ostringstream out;
  out << "k,method,abs_coeff,residual_energy,rel_error\n";
  for (const MethodTrace* t : sorted) {
    for (std::size_t k = 1; k <= t->steps(); ++k) {
      out << k << ',' << t->method << ',' << sci(std::abs(t->coeffs[k - 1])) << ','
          << sci(t->residual_energy[k - 1]) << ',' << sci(t->relative_error(k)) << '\n';
    }
  }
  return out.str();
}

std::vector<std::filesystem::path> emit_report(const RunResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const ExperimentConfig& cfg = result.config;
  auto emit = [&](const std::string& file, const std::string& text) {
    write_file(dir / file, text);
    written.push_back(dir / file);
  };

  if (result.decompose) {
    const DecomposeResult& dr = *result.decompose;
    const std::string decay = cfg.name + "_decay.csv";
    const std::string recon = cfg.name + "_reconstruction.csv";
    emit(decay, decay_csv(dr.traces));

    // Target and reconstructions along a circle (disc) or the line Im z = 1.
    const SpaceSpec& space = dr.space;
    const TargetFunction f = make_target(cfg.target, space, cfg.seed);
    std::vector<cplx> fourier_taylor;
    for (const MethodTrace& t : dr.traces) {
      if (t.method == "fourier" && t.steps() > 0) {
        fourier_taylor = taylor_coefficients(f, space, static_cast<int>(t.steps()) - 1);
      }
    }
    std::ostringstream rc;
    rc << "j,re_z,im_z,re_target,im_target,re_poafd,im_poafd,re_fourier,im_fourier\n";
    const int n = cfg.reconstruction_samples;
    for (int j = 0; j < n; ++j) {
      const cplx z = space.is_disc()
                         ? std::polar(cfg.reconstruction_radius, 2.0 * std::numbers::pi * j / n)
                         : cplx(-5.0 + 10.0 * j / std::max(n - 1, 1), 1.0);
      const cplx fz = eval(f, space, z);
      const cplx pz = dr.poafd ? dr.poafd->reconstruct(z) : cplx(0.0);
      cplx qz = 0.0;
      for (std::size_t k = fourier_taylor.size(); k-- > 0;) qz = qz * z + fourier_taylor[k];
      rc << j << ',' << sci(z.real()) << ',' << sci(z.imag()) << ',' << sci(fz.real()) << ','
         << sci(fz.imag()) << ',' << sci(pz.real()) << ',' << sci(pz.imag()) << ',' << sci(qz.real())
         << ',' << sci(qz.imag()) << '\n';
    }
    emit(recon, rc.str());

    std::ostringstream gp;
    gp << "set datafile separator ','\n"
       << "set terminal pngcairo size 900,600\n"
       << "set output '" << cfg.name << "_decay.png'\n"
       << "set logscale y\n"
       << "set xlabel 'k'\nset ylabel 'relative error'\n"
       << "plot '" << decay << "' using 1:(strcol(2) eq 'poafd' ? $5 : 1/0) with linespoints title 'POAFD', \\\n"
       << "     '" << decay << "' using 1:(strcol(2) eq 'fourier' ? $5 : 1/0) with linespoints title 'Fourier'\n"
       << "unset logscale y\n"
       << "set output '" << cfg.name << "_reconstruction.png'\n"
       << "set xlabel 'sample'\nset ylabel 'Re'\n"
       << "plot '" << recon << "' using 1:4 with lines title 'target', \\\n"
       << "     '" << recon << "' using 1:6 with lines title 'POAFD', \\\n"
       << "     '" << recon << "' using 1:8 with lines title 'Fourier'\n";
    emit(cfg.name + ".gp", gp.str());
  }

  if (!result.grid.empty() || cfg.kind == "alpha_grid") {
    std::ostringstream matrix;
    matrix << "beta,alpha,iterations,rel_error\n";
    for (const AlphaGridCell& c : result.grid) {
      emit(cfg.name + "_" + beta_alpha_tag(c.beta, c.alpha) + ".csv", decay_csv({c.trace}));
      matrix << fmt("%g", c.beta) << ',' << fmt("%g", c.alpha) << ',' << c.trace.steps() << ','
             << sci(c.trace.relative_error(c.trace.steps())) << '\n';
    }
    emit(cfg.name + "_matrix.csv", matrix.str());
  }

  emit(cfg.name + "_summary.json", result.summary.dump(2) + "\n");
  return written;
}

}  // namespace bergman
