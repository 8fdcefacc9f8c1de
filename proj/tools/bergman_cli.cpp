// Command-line runner for decomposition experiments and analysis probes.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "bergman/analysis.hpp"
#include "bergman/error.hpp"
#include "bergman/experiment.hpp"
#include "bergman/invariant.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bergman::ConfigError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw bergman::ConfigError(path + ": " + e.what());
  }
}

void print_membership(const bergman::MembershipReport& r) {
  std::printf("f_beta membership, beta=%g alpha=%g\n", r.beta, r.alpha);
  std::printf("%12s %22s %22s\n", "1-r", "partial integral", "increment");
  for (std::size_t k = 0; k < r.radii.size(); ++k) {
    std::printf("%12.4e %22.12e %22.12e%s\n", 1.0 - r.radii[k], r.partial_integrals[k], r.increments[k],
                r.flagged[k] ? "  (flagged)" : "");
  }
  std::printf("fitted slope %.4f, predicted %.4f, verdict %s, matches classification: %s\n",
              r.fitted_slope, r.predicted_slope, r.verdict.c_str(),
              r.matches_classification ? "yes" : "no");
}

void print_series(const char* tag, const bergman::SeriesProbe& s) {
  std::printf("%-6s alpha=%-8g S_K=%-14.6e gap=%-14.6e block slope=%-9.4f crossed=%-3s %s\n", tag,
              s.alpha, s.partial_sum, s.last_gap, s.block_slope, s.crossed_threshold ? "yes" : "no",
              s.verdict.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pre-orthogonal adaptive Fourier decomposition in Bergman spaces"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int threads = 0;
  bool verbose = false;
  auto* run = app.add_subcommand("run", "run an experiment described by a JSON config");
  run->add_option("config", config_path, "experiment config")->required();
  auto* out_opt = run->add_option("--out", out_dir, "output directory (overrides output_dir)");
  auto* seed_opt = run->add_option("--seed", seed, "RNG seed (overrides seed)");
  auto* threads_opt = run->add_option("--threads", threads, "worker threads for grid evaluation");
  run->add_flag("--verbose", verbose, "log every selection");

  auto* probe = app.add_subcommand("probe", "weighted-space analysis probes");
  probe->require_subcommand(1);
  bool as_json = false;
  probe->add_flag("--json", as_json, "print JSON instead of a table");

  double beta = 0.0, alpha = 0.0;
  auto* membership = probe->add_subcommand("membership", "integrate |f_beta|^2 dA_alpha towards the boundary");
  membership->add_option("--beta", beta)->required();
  membership->add_option("--alpha", alpha)->required();

  auto* classify = probe->add_subcommand("classify", "membership of f_beta by cases");
  classify->add_option("--beta", beta)->required();

  double alpha1 = 0.0, alpha2 = 1.0;
  auto* inclusion = probe->add_subcommand("inclusion", "witness separating A^2_alpha1 from A^2_alpha2");
  inclusion->add_option("--alpha1", alpha1)->required();
  inclusion->add_option("--alpha2", alpha2)->required();

  double law_c = 1.0, law_p = 1.0;
  auto* epsilon = probe->add_subcommand("epsilon", "probe the eps condition for r_j = 1 - c j^-p");
  epsilon->add_option("--c", law_c);
  epsilon->add_option("--p", law_p)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      nlohmann::json j = load_json(config_path);
      if (*seed_opt) j["seed"] = seed;
      if (*threads_opt) j["selection"]["threads"] = threads;
      const bergman::ExperimentConfig cfg = bergman::ExperimentConfig::from_json(j);
      const std::string dir = *out_opt ? out_dir : cfg.output_dir;
      const bergman::RunResult res = bergman::run_experiment(cfg, verbose);
      for (const auto& p : bergman::emit_report(res, dir)) {
        if (verbose) std::cerr << "wrote " << p.string() << "\n";
      }
      std::cout << res.summary.dump(2) << "\n";
      return 0;
    }
    if (*membership) {
      const auto r = bergman::membership_probe(beta, alpha);
      if (as_json) {
        std::cout << r.to_json().dump(2) << "\n";
      } else {
        print_membership(r);
      }
    } else if (*classify) {
      const auto c = bergman::classify_f_beta(beta);
      std::printf("beta=%g hardy=%s: %s\n", c.beta, c.hardy ? "yes" : "no", c.description.c_str());
    } else if (*inclusion) {
      const auto r = bergman::inclusion_probe(alpha1, alpha2);
      if (as_json) {
        std::cout << r.to_json().dump(2) << "\n";
      } else {
        std::printf("witness |a_k|^2 = (k+1)^-(1+delta), delta = %g\n", r.delta);
        print_series("lower", r.lower);
        print_series("upper", r.upper);
        std::printf("separates: %s\n", r.separates ? "yes" : "no");
      }
    } else if (*epsilon) {
      const auto r = bergman::epsilon_condition(bergman::RadialLaw{law_c, law_p, 1});
      if (as_json) {
        std::cout << r.to_json().dump(2) << "\n";
      } else {
        std::printf("%8s %18s %18s\n", "eps", "sum", "ratio");
        for (const auto& row : r.rows) {
          std::printf("%8g %18.10e %18.10e %s\n", row.eps, row.sum, row.ratio, row.note.c_str());
        }
        std::printf("trend %s, verdict %s (%s)\n", r.trend.c_str(), r.verdict.c_str(),
                    bergman::EpsilonReport::kCaveat);
      }
    }
    return 0;
  } catch (const bergman::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bergman::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
