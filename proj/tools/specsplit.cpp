// Command-line front end: run | convergence | spectrum | probe.
//
// Exit codes: 0 success, 1 I/O or other failure, 2 configuration error,
// 3 numerical failure, 4 blow-up detected.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "specsplit/config.hpp"
#include "specsplit/diagnostics.hpp"
#include "specsplit/errors.hpp"
#include "specsplit/probes.hpp"
#include "specsplit/report.hpp"
#include "specsplit/study.hpp"

namespace {

using namespace specsplit;

struct CommonFlags {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> stride;
};

ExperimentConfig resolve(const CommonFlags& flags) {
  ExperimentConfig cfg = flags.config_path.empty() ? ExperimentConfig{} : load_config(flags.config_path);
  if (flags.out) cfg.output_dir = *flags.out;
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.stride) cfg.stride = *flags.stride;
  cfg.validate();
  return cfg;
}

int cmd_run(const ExperimentConfig& cfg) {
  const PotentialSpec pot = cfg.potential_spec();
  const auto h = DiscretizedHamiltonian::build(cfg.grid(), pot.confining);
  const Problem problem = Problem::make(h, pot.perturbation, cfg.nonlinearity());
  const State u0 = make_initial_data(cfg.initial_data, h, cfg.seed);
  SchemeConfig scheme;
  scheme.tau = cfg.tau0;
  scheme.stepper = cfg.steppers.front();
  scheme.lambda_rule = cfg.lambda_rules.front();
  scheme.profile = cfg.profile;
  scheme.final_time = cfg.final_time;
  scheme.stride = cfg.stride;
  scheme.blowup_factor = cfg.blowup_factor;
  const Trajectory traj = run_scheme(u0, problem, scheme);
  write_file(cfg.output_dir + "/trajectory.txt", trajectory_text(traj));
  write_file(cfg.output_dir + "/trajectory.json", trajectory_sidecar(traj, problem, cfg).dump(2) + "\n");
  std::cout << "wrote " << traj.snapshots.size() << " snapshots to " << cfg.output_dir << "/trajectory.txt\n";
  return 0;
}

int cmd_convergence(const ExperimentConfig& cfg) {
  const ConvergenceReport report = run_convergence_study(cfg);
  const std::string csv = emit_report(report, ReportFormat::csv, cfg.output_dir);
  const std::string js = emit_report(report, ReportFormat::json, cfg.output_dir);
  for (const auto& f : report.fits) {
    std::cout << f.stepper << " [" << f.lambda_rule << "] " << f.norm << ": ";
    if (f.fit)
      std::cout << "slope " << f.fit->slope << ", R^2 " << f.fit->r_squared << "\n";
    else
      std::cout << f.note << "\n";
  }
  std::cout << "wrote " << csv << " and " << js << "\n";
  for (const auto& r : report.runs)
    if (r.status == "blowup") return 4;
  return 0;
}

int cmd_spectrum(const ExperimentConfig& cfg) {
  const auto h = DiscretizedHamiltonian::build(cfg.grid(), cfg.potential_spec().confining);
  std::string out = "j,mu,mu_ungauged,residual\n";
  for (std::size_t j = 0; j < h->size(); ++j) {
    const double mu = h->eigenvalues()[j];
    out += std::to_string(j) + "," + format_double(mu) + "," + format_double(mu - h->gauge_shift()) + "," +
           format_double(h->residual(j)) + "\n";
  }
  write_file(cfg.output_dir + "/spectrum.csv", out);
  std::cout << "gauge shift " << h->gauge_shift() << ", lowest eigenvalue " << h->eigenvalues().front() << "\n";
  return 0;
}

int cmd_probe(const ExperimentConfig& cfg) {
  const auto h = DiscretizedHamiltonian::build(cfg.grid(), cfg.potential_spec().confining);
  AdmissiblePair pair = canonical_pairs(cfg.sigma).pair;
  if (cfg.strichartz_q != 0.0 || cfg.strichartz_r != 0.0) pair = AdmissiblePair::make(cfg.strichartz_q, cfg.strichartz_r);

  ProbeReport dispersive, bernstein, strichartz;
  for (double lambda : cfg.probe_lambdas) {
    RVector times;
    for (double t = 1.0 / lambda; t <= 1.0 + 1e-12; t *= 2.0) times.push_back(std::min(t, 1.0));
    const ProbeReport d = dispersive_probe(*h, lambda, cfg.profile, times, cfg.probe_trials, cfg.seed);
    dispersive.rows.insert(dispersive.rows.end(), d.rows.begin(), d.rows.end());
    const ProbeReport b =
        bernstein_probe(*h, lambda, cfg.profile, cfg.bernstein_p, cfg.bernstein_q, cfg.probe_trials, cfg.seed);
    bernstein.rows.insert(bernstein.rows.end(), b.rows.begin(), b.rows.end());
    const StrichartzProbeResult s = strichartz_constant_probe(*h, lambda, 1.0 / lambda, pair, cfg.probe_trials,
                                                              cfg.probe_final_time, cfg.profile, cfg.seed);
    for (std::size_t t = 0; t < s.ratios.size(); ++t)
      strichartz.rows.push_back({lambda, format_exponent(pair.q) + ":" + format_exponent(pair.r), t, s.ratios[t]});
    std::cout << "lambda " << lambda << ": dispersive " << d.max_ratio << ", bernstein " << b.max_ratio
              << ", strichartz " << s.max_ratio << "\n";
  }
  write_file(cfg.output_dir + "/probe_dispersive.csv", probe_csv(dispersive));
  write_file(cfg.output_dir + "/probe_bernstein.csv", probe_csv(bernstein));
  write_file(cfg.output_dir + "/probe_strichartz.csv", probe_csv(strichartz));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrally localized Lie splitting for the nonlinear Schrodinger equation with potential"};
  app.require_subcommand(1);
  CommonFlags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "flat key = value experiment file");
    sub->add_option("--out", flags.out, "output directory (overrides output_dir)");
    sub->add_option("--seed", flags.seed, "random seed (overrides seed)");
    sub->add_option("--stride", flags.stride, "snapshot stride (overrides stride)");
  };
  auto* run = app.add_subcommand("run", "single trajectory, dumps snapshots");
  auto* conv = app.add_subcommand("convergence", "convergence study over the tau ladder");
  auto* spec = app.add_subcommand("spectrum", "eigenvalue table");
  auto* probe = app.add_subcommand("probe", "dispersive, Bernstein and Strichartz probes");
  for (auto* sub : {run, conv, spec, probe}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const ExperimentConfig cfg = resolve(flags);
    if (run->parsed()) return cmd_run(cfg);
    if (conv->parsed()) return cmd_convergence(cfg);
    if (spec->parsed()) return cmd_spectrum(cfg);
    if (probe->parsed()) return cmd_probe(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const BlowupSuspected& e) {
    std::cerr << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
