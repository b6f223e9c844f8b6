#include "specsplit/study.hpp"

#include <cmath>
#include <exception>

#include "specsplit/diagnostics.hpp"
#include "specsplit/errors.hpp"

namespace specsplit {

FitResult fit_order(std::span<const double> taus, std::span<const double> errors) {
  if (taus.size() != errors.size()) throw ShapeError("fit_order errors", taus.size(), errors.size());
  constexpr double floor = 1e-13;
  std::vector<double> xs, ys;
  FitResult fit;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0)) throw InvalidInput("fit_order needs positive step sizes");
    if (!(errors[i] > floor) || !std::isfinite(errors[i])) {
      ++fit.excluded;
      continue;
    }
    xs.push_back(std::log(taus[i]));
    ys.push_back(std::log(errors[i]));
  }
  if (xs.size() < 4)
    throw InsufficientData("order fit needs at least 4 errors above 1e-13, got " + std::to_string(xs.size()));
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InsufficientData("order fit needs distinct step sizes");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.points = xs.size();
  return fit;
}

const RunRecord* ConvergenceReport::find(const std::string& stepper, double tau) const {
  for (const auto& r : runs)
    if (r.stepper == stepper && std::abs(r.tau - tau) <= 1e-15 * tau) return &r;
  return nullptr;
}

const SchemeFit* ConvergenceReport::find_fit(const std::string& stepper, const std::string& norm) const {
  for (const auto& f : fits)
    if (f.stepper == stepper && f.norm == norm) return &f;
  return nullptr;
}

namespace {

struct RunErrors {
  double l2_final = 0.0, l2_sup = 0.0, h1_final = 0.0, h1_sup = 0.0;
};

RunErrors measure(const Trajectory& traj, const ReferenceSolution& ref, double tau0) {
  RunErrors e;
  // Reference snapshots sit at k * tau0; trajectory snapshots at its own stride.
  for (const auto& s : traj.snapshots) {
    const double k = s.time / tau0;
    const auto idx = static_cast<std::size_t>(std::llround(k));
    if (std::abs(k - static_cast<double>(idx)) > 1e-9 || idx >= ref.snapshots.size()) continue;
    const auto& r = ref.snapshots[idx].state;
    CVector diff(s.state.values().begin(), s.state.values().end());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= r.values()[i];
    const State d = State::on_grid(s.state.hamiltonian(), std::move(diff));
    const double l2 = norm_sobolev(d, SobolevNorm::L2);
    const double h1 = norm_sobolev(d, SobolevNorm::calH1);
    e.l2_sup = std::max(e.l2_sup, l2);
    e.h1_sup = std::max(e.h1_sup, h1);
    e.l2_final = l2;
    e.h1_final = h1;
  }
  return e;
}

std::optional<double> window_tau(std::span<const double> taus, std::span<const double> errs, double slope) {
  // Walk from the finest step upwards while local slopes stay in the window.
  std::optional<double> best;
  for (std::size_t i = taus.size(); i-- > 1;) {
    if (!(errs[i] > 1e-13) || !(errs[i - 1] > 1e-13)) break;
    const double local = std::log(errs[i - 1] / errs[i]) / std::log(taus[i - 1] / taus[i]);
    if (std::abs(local - slope) > 0.15) break;
    best = taus[i - 1];
  }
  return best;
}

}  // namespace

ConvergenceReport run_convergence_study(const ExperimentConfig& cfg) {
  cfg.validate();
  const Grid1D grid = cfg.grid();
  const PotentialSpec pot = cfg.potential_spec();
  const HamiltonianPtr h = DiscretizedHamiltonian::build(grid, pot.confining);
  const Problem problem = Problem::make(h, pot.perturbation, cfg.nonlinearity());
  const State u0 = make_initial_data(cfg.initial_data, h, cfg.seed);
  const RVector taus = cfg.ladder();

  ConvergenceReport report;
  report.config = config_entries(cfg);
  report.seed = cfg.seed;
  report.reference_tau = cfg.tau_ref;

  const ReferenceSolution ref =
      strang_reference(u0, problem, cfg.final_time, cfg.tau_ref, cfg.tau0, cfg.reference_tolerance);
  report.reference_self_check = ref.self_check;
  report.reference_mass_drift = ref.mass_drift;
  report.reference_energy_drift = ref.energy_drift;

  const auto schemes = cfg.schemes();
  const std::size_t total = schemes.size() * taus.size();
  report.runs.resize(total);
  std::vector<std::exception_ptr> failures(total);

  const auto count = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t idx = 0; idx < count; ++idx) {
    const auto i = static_cast<std::size_t>(idx);
    const SchemeChoice& sc = schemes[i / taus.size()];
    const double tau = taus[i % taus.size()];
    RunRecord rec;
    rec.stepper = to_string(sc.stepper);
    rec.lambda_rule = sc.rule.name();
    rec.tau = tau;
    try {
      SchemeConfig scheme;
      scheme.tau = tau;
      scheme.lambda_rule = sc.rule;
      scheme.stepper = sc.stepper;
      scheme.profile = cfg.profile;
      scheme.final_time = cfg.final_time;
      scheme.stride = step_count(cfg.tau0, tau);
      scheme.blowup_factor = cfg.blowup_factor;
      rec.lambda = scheme.lambda();
      try {
        const Trajectory traj = run_scheme(u0, problem, scheme);
        const RunErrors e = measure(traj, ref, cfg.tau0);
        rec.err_L2_final = e.l2_final;
        rec.err_L2_sup = e.l2_sup;
        rec.err_H1_final = e.h1_final;
        rec.err_H1_sup = e.h1_sup;
        const double m0 = traj.mass.front();
        rec.mass_drift = m0 > 0.0 ? (traj.mass.back() - m0) / m0 : 0.0;
        const double e0 = energy(traj.snapshots.front().state, problem);
        const double e1 = energy(traj.snapshots.back().state, problem);
        rec.energy_drift = e0 != 0.0 ? (e1 - e0) / std::abs(e0) : 0.0;
      } catch (const BlowupSuspected& b) {
        rec.status = "blowup";
        rec.blowup_step = b.step();
      }
    } catch (...) {
      failures[i] = std::current_exception();
    }
    report.runs[i] = std::move(rec);
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  for (const auto& sc : schemes) {
    for (const auto& norm : cfg.error_norms) {
      SchemeFit sf;
      sf.stepper = to_string(sc.stepper);
      sf.lambda_rule = sc.rule.name();
      sf.norm = norm;
      RVector ts, es;
      for (const auto& r : report.runs) {
        if (r.stepper != sf.stepper || r.lambda_rule != sf.lambda_rule || r.status != "ok") continue;
        ts.push_back(r.tau);
        es.push_back(norm == "L2" ? *r.err_L2_final : *r.err_H1_final);
      }
      try {
        sf.fit = fit_order(ts, es);
        sf.window_tau_max = window_tau(ts, es, sf.fit->slope);
        if (sf.fit->excluded > 0) sf.note = "errors below 1e-13 excluded from fit";
      } catch (const InsufficientData& e) {
        sf.note = e.what();
      }
      report.fits.push_back(std::move(sf));
    }
  }
  return report;
}

}  // namespace specsplit
