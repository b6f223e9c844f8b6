#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specsplit/config.hpp"
#include "specsplit/state.hpp"

namespace specsplit {

/// gaussian: normalized exp(-(x-c)^2 / (2 w^2)); eigen_mix: the given
/// coefficients as-is; rough: c_j = (1 + mu_j)^(-alpha) e^{i theta_j} with
/// theta_j uniform from `seed`, normalized to unit mass.
State make_initial_data(const InitialDataSpec& spec, const HamiltonianPtr& h, std::uint64_t seed);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;  // natural log of the constant
  double r_squared = 0.0;
  std::size_t points = 0;
  std::size_t excluded = 0;  // errors below the 1e-13 floor
  bool operator==(const FitResult&) const = default;
};

/// Least squares line through (log tau, log err). Needs >= 4 points above
/// the 1e-13 floor, else InsufficientData.
FitResult fit_order(std::span<const double> taus, std::span<const double> errors);

struct RunRecord {
  std::string stepper;
  std::string lambda_rule;
  double tau = 0.0;
  double lambda = 0.0;
  std::string status = "ok";  // ok | blowup
  std::optional<double> err_L2_final, err_L2_sup, err_H1_final, err_H1_sup;
  std::optional<double> mass_drift, energy_drift;
  std::optional<std::size_t> blowup_step;
  bool operator==(const RunRecord&) const = default;
};

struct SchemeFit {
  std::string stepper;
  std::string lambda_rule;
  std::string norm;  // L2 | calH1
  std::optional<FitResult> fit;
  /// Largest ladder tau from which every local slope stays within 0.15 of
  /// the fitted slope.
  std::optional<double> window_tau_max;
  std::string note;
  bool operator==(const SchemeFit&) const = default;
};

struct ConvergenceReport {
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t seed = 0;
  double reference_tau = 0.0;
  double reference_self_check = 0.0;
  double reference_mass_drift = 0.0;
  double reference_energy_drift = 0.0;
  std::vector<RunRecord> runs;
  std::vector<SchemeFit> fits;
  bool operator==(const ConvergenceReport&) const = default;

  const RunRecord* find(const std::string& stepper, double tau) const;
  const SchemeFit* find_fit(const std::string& stepper, const std::string& norm) const;
};

/// Reference once, then every (scheme, tau) run. Errors against the reference
/// are taken at every multiple of tau0 (the common snapshot times) and at T.
/// Blow-ups are recorded per run; reference failures propagate.
ConvergenceReport run_convergence_study(const ExperimentConfig& cfg);

}  // namespace specsplit
