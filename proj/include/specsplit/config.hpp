#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "specsplit/cutoff.hpp"
#include "specsplit/flows.hpp"
#include "specsplit/potential.hpp"
#include "specsplit/problem.hpp"

namespace specsplit {

enum class InitialKind { gaussian, eigen_mix, rough };

struct InitialDataSpec {
  InitialKind kind = InitialKind::gaussian;
  double center = 0.0;  // gaussian
  double width = 1.0;
  RVector coefficients{1.0};  // eigen_mix, c_0, c_1, ...
  double alpha = 1.25;        // rough: c_j ~ (1 + mu_j)^(-alpha) e^{i theta_j}
};

struct SchemeChoice {
  StepperKind stepper = StepperKind::cutoff_lie;
  LambdaRule rule;
};

/// Flat key = value experiment description. Field names double as the keys
/// of the config file (see config_entries for the full list).
struct ExperimentConfig {
  std::size_t n_points = 512;
  double half_width = 12.0;

  std::string potential = "harmonic";  // harmonic | tabulated
  double omega = 1.0;
  double potential_shift = 0.0;
  std::string potential_file;
  std::string perturbation = "none";  // none | gaussian | tabulated
  double perturbation_amplitude = 1.0;
  double perturbation_width = 1.0;
  std::string perturbation_file;
  double sigma = 1.0;
  double epsilon = 1.0;

  InitialDataSpec initial_data;

  std::vector<StepperKind> steppers{StepperKind::cutoff_lie};
  std::vector<LambdaRule> lambda_rules{LambdaRule{}};
  CutoffProfile profile = CutoffProfile::exp_bump();
  double tau0 = 1.0 / 16.0;
  std::size_t ladder_depth = 6;  // taus are tau0 * 2^-k, k = 0..ladder_depth
  double final_time = 1.0;
  std::vector<std::string> error_norms{"L2", "calH1"};
  double tau_ref = 1.0 / 32768.0;
  double reference_tolerance = 1e-8;
  double blowup_factor = 1e6;

  std::string output_dir = "out";
  std::uint64_t seed = 1;
  std::size_t stride = 1;

  RVector probe_lambdas{8.0, 32.0, 128.0};
  std::size_t probe_trials = 16;
  double probe_final_time = 1.0;
  double bernstein_p = 1.0;
  double bernstein_q = INFINITY;
  double strichartz_q = 0.0;  // 0 selects the canonical pair for sigma
  double strichartz_r = 0.0;

  Grid1D grid() const { return Grid1D(n_points, half_width); }
  PotentialSpec potential_spec() const;
  NonlinearitySpec nonlinearity() const { return {sigma, epsilon}; }
  RVector ladder() const;
  /// Cartesian product steppers x lambda rules; rules only matter for cutoff_lie.
  std::vector<SchemeChoice> schemes() const;
  void validate() const;
};

/// Ordered (key, value) view of every field, as written to config files.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg);

/// Unknown keys, repeated keys and malformed values are ConfigError.
ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);
std::string format_config(const ExperimentConfig& cfg);

/// Shortest decimal that round-trips; "inf" / "-inf" / "nan" otherwise.
std::string format_double(double v);

}  // namespace specsplit
