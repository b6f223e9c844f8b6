#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specsplit/cutoff.hpp"
#include "specsplit/problem.hpp"
#include "specsplit/state.hpp"

namespace specsplit {

enum class StepperKind { cutoff_lie, plain_lie, fourier_lie, strang_reference };

std::string to_string(StepperKind kind);
StepperKind parse_stepper(const std::string& text);

/// lambda = scale * tau^(-exponent); the default is lambda = 1/tau.
struct LambdaRule {
  double scale = 1.0;
  double exponent = 1.0;

  double operator()(double tau) const;
  bool is_inverse() const { return scale == 1.0 && exponent == 1.0; }
  /// "inverse" or "scaled:<c>:<gamma>".
  static LambdaRule parse(const std::string& text);
  std::string name() const;
  bool operator==(const LambdaRule&) const = default;
};

struct SchemeConfig {
  double tau = 1.0 / 16.0;
  LambdaRule lambda_rule;
  StepperKind stepper = StepperKind::cutoff_lie;
  CutoffProfile profile = CutoffProfile::exp_bump();
  double final_time = 1.0;
  std::size_t stride = 1;
  /// Abort when ||u^n||_{calH1} exceeds this multiple of its initial value.
  double blowup_factor = 1e6;

  /// lambda for the cutoff stepper, +inf for the others.
  double lambda() const;
  void validate() const;
};

/// T / tau as an integer; ConfigError when it is not (to 1e-9 relative).
std::size_t step_count(double final_time, double tau);

struct Snapshot {
  std::size_t step = 0;
  double time = 0.0;
  State state;  // grid representation
};

struct Trajectory {
  StepperKind stepper = StepperKind::cutoff_lie;
  double tau = 0.0;
  double lambda = 0.0;
  std::size_t stride = 1;
  std::vector<Snapshot> snapshots;
  RVector mass;  // ||u^n||_2^2 for every n = 0..N
};

/// N(tau) u = u exp(-i tau W - i tau eps |u|^(2 sigma)), pointwise on the grid.
State nonlinear_flow(const State& u, double tau, const Problem& problem);

/// S_lambda(tau) N(tau) u.
State lie_step_cutoff(const State& u, const Problem& problem, double tau, double lambda,
                      const CutoffProfile& profile);
/// S(tau) N(tau) u.
State plain_lie_step(const State& u, const Problem& problem, double tau);
/// exp(i tau Lap) (u exp(-i tau (V + W + eps |u|^(2 sigma)))) with the FFT free flight.
State fourier_splitting_step(const State& u, const Problem& problem, double tau);

/// u^0 = Pi_lambda u0 for the cutoff stepper (u0 otherwise), then N steps.
/// Snapshots every `stride` steps plus the final step. Throws BlowupSuspected.
Trajectory run_scheme(const State& u0, const Problem& problem, const SchemeConfig& cfg);

/// S(tau/2) N(tau) S(tau/2) composed T/tau times, no cutoff. Negative tau
/// runs backwards in time. Snapshots every `record_every` steps (0 = none).
struct StrangRun {
  State final_state;
  std::vector<Snapshot> snapshots;
};
StrangRun strang_evolve(const State& u0, const Problem& problem, double final_time, double tau,
                        std::size_t record_every = 0);

struct ReferenceSolution {
  State final_state;
  std::vector<Snapshot> snapshots;  // at multiples of the requested record interval
  double self_check = 0.0;          // ||u(tau_ref) - u(tau_ref / 2)||_2 at T
  double mass_drift = 0.0;          // relative, over the recorded snapshots
  double energy_drift = 0.0;        // relative, max over the recorded snapshots
};

/// Fine Strang solution standing in for the exact flow. Runs at tau_ref and
/// tau_ref / 2 and throws ReferenceUnreliable when they differ by more than
/// `tolerance` in L2 at T.
ReferenceSolution strang_reference(const State& u0, const Problem& problem, double final_time, double tau_ref,
                                   double record_interval, double tolerance = 1e-8);

}  // namespace specsplit
