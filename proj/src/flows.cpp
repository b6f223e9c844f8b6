#include "specsplit/flows.hpp"

#include <cmath>
#include <limits>

#include "specsplit/diagnostics.hpp"
#include "specsplit/errors.hpp"
#include "specsplit/kernels.hpp"

namespace specsplit {

void NonlinearitySpec::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidInput("nonlinearity exponent sigma must be positive");
  if (epsilon != 1.0 && epsilon != -1.0 && epsilon != 0.0)
    throw InvalidInput("nonlinearity sign epsilon must be -1, 0 or +1");
}

Problem Problem::make(HamiltonianPtr h, const Perturbation& w, NonlinearitySpec nl) {
  if (!h) throw InvalidInput("problem needs a Hamiltonian");
  nl.validate();
  RVector wv = sample_perturbation(w, h->grid());
  return Problem{std::move(h), std::move(wv), nl};
}

std::string to_string(StepperKind kind) {
  switch (kind) {
    case StepperKind::cutoff_lie: return "cutoff_lie";
    case StepperKind::plain_lie: return "plain_lie";
    case StepperKind::fourier_lie: return "fourier_lie";
    case StepperKind::strang_reference: return "strang_reference";
  }
  return "?";
}

StepperKind parse_stepper(const std::string& text) {
  for (auto k : {StepperKind::cutoff_lie, StepperKind::plain_lie, StepperKind::fourier_lie,
                 StepperKind::strang_reference})
    if (text == to_string(k)) return k;
  throw ConfigError("unknown stepper '" + text + "'");
}

double LambdaRule::operator()(double tau) const { return scale * std::pow(tau, -exponent); }

LambdaRule LambdaRule::parse(const std::string& text) {
  if (text == "inverse") return {};
  const std::string prefix = "scaled:";
  if (text.rfind(prefix, 0) == 0) {
    const auto rest = text.substr(prefix.size());
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
      try {
        std::size_t a = 0, b = 0;
        const double c = std::stod(rest.substr(0, colon), &a);
        const double g = std::stod(rest.substr(colon + 1), &b);
        if (a == colon && b == rest.size() - colon - 1 && c > 0.0 && std::isfinite(g)) return {c, g};
      } catch (const std::logic_error&) {
      }
    }
  }
  throw ConfigError("unknown lambda rule '" + text + "' (expected inverse or scaled:<c>:<gamma>)");
}

std::string LambdaRule::name() const {
  if (is_inverse()) return "inverse";
  char buf[96];
  std::snprintf(buf, sizeof buf, "scaled:%.17g:%.17g", scale, exponent);
  return buf;
}

double SchemeConfig::lambda() const {
  return stepper == StepperKind::cutoff_lie ? lambda_rule(tau) : std::numeric_limits<double>::infinity();
}

void SchemeConfig::validate() const {
  if (!(tau > 0.0 && tau < 1.0)) throw ConfigError("time step tau must lie in (0, 1)");
  if (!(final_time > 0.0)) throw ConfigError("final time must be positive");
  if (stride == 0) throw ConfigError("snapshot stride must be >= 1");
  if (!(blowup_factor > 1.0)) throw ConfigError("blow-up factor must exceed 1");
  step_count(final_time, tau);
  if (stepper == StepperKind::cutoff_lie && lambda_rule.is_inverse() && lambda() * tau < 1.0 - 1e-12)
    throw ConfigError("lambda * tau must be >= 1");
}

std::size_t step_count(double final_time, double tau) {
  const double ratio = final_time / tau;
  const double rounded = std::round(ratio);
  if (!std::isfinite(ratio) || rounded < 0.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
    throw ConfigError("final time is not an integer multiple of the time step");
  return static_cast<std::size_t>(rounded);
}

State nonlinear_flow(const State& u, double tau, const Problem& problem) {
  State g = from_eigenbasis(u);
  const auto& nl = problem.nonlinearity;
  kernels::nonlinear_phase(g.data(), problem.w_values, tau, nl.epsilon, nl.sigma);
  return g;
}

State lie_step_cutoff(const State& u, const Problem& problem, double tau, double lambda,
                      const CutoffProfile& profile) {
  return propagate_cutoff(nonlinear_flow(u, tau, problem), tau, lambda, profile);
}

State plain_lie_step(const State& u, const Problem& problem, double tau) {
  return propagate(nonlinear_flow(u, tau, problem), tau);
}

State fourier_splitting_step(const State& u, const Problem& problem, double tau) {
  State g = from_eigenbasis(u);
  const auto& h = *problem.hamiltonian;
  RVector full(problem.w_values);
  for (std::size_t i = 0; i < full.size(); ++i) full[i] += h.v_values()[i];
  const auto& nl = problem.nonlinearity;
  kernels::nonlinear_phase(g.data(), full, tau, nl.epsilon, nl.sigma);
  return State::on_grid(problem.hamiltonian, h.differentiator().free_flight(g.values(), tau));
}

namespace {

double calh1_squared(std::span<const cplx> c, const RVector& mu) {
  double acc = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) acc += mu[j] * std::norm(c[j]);
  return acc;
}

double sum_abs2(std::span<const cplx> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return acc;
}

bool all_finite(std::span<const cplx> v) {
  for (const auto& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

void check_finite(std::span<const cplx> v, std::size_t step) {
  if (!all_finite(v)) throw BlowupSuspected("non-finite value", step);
}

CVector copy_values(const State& s) { return CVector(s.values().begin(), s.values().end()); }

}  // namespace

Trajectory run_scheme(const State& u0, const Problem& problem, const SchemeConfig& cfg) {
  cfg.validate();
  if (cfg.stepper == StepperKind::strang_reference) {
    Trajectory traj;
    traj.stepper = cfg.stepper;
    traj.tau = cfg.tau;
    traj.lambda = std::numeric_limits<double>::infinity();
    traj.stride = cfg.stride;
    StrangRun run = strang_evolve(u0, problem, cfg.final_time, cfg.tau, cfg.stride);
    for (auto& s : run.snapshots) traj.mass.push_back(mass(s.state));
    traj.snapshots = std::move(run.snapshots);
    return traj;
  }

  const std::size_t steps = step_count(cfg.final_time, cfg.tau);
  const auto& h = *problem.hamiltonian;
  const auto basis = h.basis();
  const double dx = h.grid().spacing();
  const auto& mu = h.eigenvalues();
  const auto& nl = problem.nonlinearity;
  const double lambda = cfg.lambda();

  Trajectory traj;
  traj.stepper = cfg.stepper;
  traj.tau = cfg.tau;
  traj.lambda = lambda;
  traj.stride = cfg.stride;
  traj.mass.reserve(steps + 1);

  auto record = [&](std::size_t n, CVector grid_values) {
    traj.snapshots.push_back({n, static_cast<double>(n) * cfg.tau, State::on_grid(problem.hamiltonian, std::move(grid_values))});
  };
  auto wants = [&](std::size_t n) { return n % cfg.stride == 0 || n == steps; };

  if (cfg.stepper == StepperKind::fourier_lie) {
    State u = from_eigenbasis(u0);
    CVector c0(h.size());
    kernels::analyze(basis, dx, u.values(), c0);
    const double h1_0 = std::sqrt(calh1_squared(c0, mu));
    traj.mass.push_back(dx * sum_abs2(u.values()));
    record(0, copy_values(u));
    for (std::size_t n = 1; n <= steps; ++n) {
      u = fourier_splitting_step(u, problem, cfg.tau);
      check_finite(u.values(), n);
      traj.mass.push_back(dx * sum_abs2(u.values()));
      if (wants(n)) {
        kernels::analyze(basis, dx, u.values(), c0);
        if (std::sqrt(calh1_squared(c0, mu)) > cfg.blowup_factor * h1_0)
          throw BlowupSuspected("calH1 norm grew beyond the blow-up factor", n);
        record(n, copy_values(u));
      }
    }
    return traj;
  }

  // cutoff_lie / plain_lie: the state lives in eigen space between steps.
  const CVector diag = cutoff_propagator_diagonal(h, cfg.tau, lambda, cfg.profile);
  State start = std::isinf(lambda) ? to_eigenbasis(u0) : apply_cutoff(u0, lambda, cfg.profile);
  CVector c = copy_values(start);
  c.resize(h.size());
  CVector g(h.size());
  const double h1_0 = std::sqrt(calh1_squared(c, mu));
  traj.mass.push_back(sum_abs2(c));
  kernels::synthesize(basis, c, g);
  record(0, g);
  for (std::size_t n = 1; n <= steps; ++n) {
    kernels::synthesize(basis, c, g);
    kernels::nonlinear_phase(g, problem.w_values, cfg.tau, nl.epsilon, nl.sigma);
    kernels::analyze(basis, dx, g, c);
    kernels::multiply(c, diag);
    check_finite(c, n);
    if (std::sqrt(calh1_squared(c, mu)) > cfg.blowup_factor * h1_0)
      throw BlowupSuspected("calH1 norm grew beyond the blow-up factor", n);
    traj.mass.push_back(sum_abs2(c));
    if (wants(n)) {
      kernels::synthesize(basis, c, g);
      record(n, g);
    }
  }
  return traj;
}

StrangRun strang_evolve(const State& u0, const Problem& problem, double final_time, double tau,
                        std::size_t record_every) {
  if (tau == 0.0) throw InvalidInput("Strang step must be non-zero");
  const std::size_t steps = final_time == 0.0 ? 0 : step_count(std::abs(final_time), std::abs(tau));
  if (steps > 0 && (final_time > 0.0) != (tau > 0.0))
    throw InvalidInput("Strang step and final time must have the same sign");
  const auto& h = *problem.hamiltonian;
  const auto basis = h.basis();
  const double dx = h.grid().spacing();
  const auto& mu = h.eigenvalues();
  const auto& nl = problem.nonlinearity;

  CVector half(h.size()), full(h.size());
  for (std::size_t j = 0; j < h.size(); ++j) {
    half[j] = std::polar(1.0, -0.5 * tau * mu[j]);
    full[j] = std::polar(1.0, -tau * mu[j]);
  }

  CVector c = copy_values(to_eigenbasis(u0));
  c.resize(h.size());
  CVector g(h.size());
  StrangRun out{from_eigenbasis(u0), {}};
  auto record = [&](std::size_t n, const CVector& coeffs) {
    kernels::synthesize(basis, coeffs, g);
    out.snapshots.push_back({n, static_cast<double>(n) * tau, State::on_grid(problem.hamiltonian, g)});
  };
  if (record_every > 0) record(0, c);

  kernels::multiply(c, half);
  CVector at_step(h.size());
  for (std::size_t n = 1; n <= steps; ++n) {
    kernels::synthesize(basis, c, g);
    kernels::nonlinear_phase(g, problem.w_values, tau, nl.epsilon, nl.sigma);
    kernels::analyze(basis, dx, g, c);
    if (record_every > 0 && (n % record_every == 0 || n == steps)) {
      at_step = c;
      kernels::multiply(at_step, half);
      record(n, at_step);
    }
    kernels::multiply(c, n < steps ? full : half);
  }
  if (steps == 0) {
    out.final_state = from_eigenbasis(u0);
  } else {
    kernels::synthesize(basis, c, g);
    out.final_state = State::on_grid(problem.hamiltonian, g);
  }
  return out;
}

ReferenceSolution strang_reference(const State& u0, const Problem& problem, double final_time, double tau_ref,
                                   double record_interval, double tolerance) {
  if (!(tau_ref > 0.0)) throw InvalidInput("reference step must be positive");
  const std::size_t every = record_interval > 0.0 ? step_count(record_interval, tau_ref) : 0;
  StrangRun coarse = strang_evolve(u0, problem, final_time, tau_ref, every);
  StrangRun fine = strang_evolve(u0, problem, final_time, tau_ref / 2.0, 0);

  ReferenceSolution ref{coarse.final_state, std::move(coarse.snapshots), 0.0, 0.0, 0.0};
  CVector diff(ref.final_state.values().begin(), ref.final_state.values().end());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= fine.final_state.values()[i];
  ref.self_check = lp_norm(problem.grid(), diff, 2.0);
  if (!(ref.self_check <= tolerance)) throw ReferenceUnreliable(ref.self_check, tolerance);

  const State start = from_eigenbasis(u0);
  const double m0 = mass(start);
  const double e0 = energy(start, problem);
  auto track = [&](const State& s) {
    if (m0 > 0.0) ref.mass_drift = std::max(ref.mass_drift, std::abs(mass(s) - m0) / m0);
    const double e = energy(s, problem);
    if (e0 != 0.0) ref.energy_drift = std::max(ref.energy_drift, std::abs(e - e0) / std::abs(e0));
  };
  for (const auto& s : ref.snapshots) track(s.state);
  track(ref.final_state);
  return ref;
}

}  // namespace specsplit
