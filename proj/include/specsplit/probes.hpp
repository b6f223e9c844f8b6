#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specsplit/cutoff.hpp"

namespace specsplit {

/// Deterministic test state for the estimate probes. Trial 0 is a unit spike
/// at x = 0; odd trials are spikes at random nodes in the central half of the
/// box with a random phase; even trials are complex white noise under a
/// Gaussian envelope of random centre and width. Seeded by (seed, trial).
CVector probe_state(const Grid1D& grid, std::size_t trial, std::uint64_t seed);

/// One line of a probe report: (lambda, t_or_pq, trial, ratio).
struct ProbeRow {
  double lambda = 0.0;
  std::string t_or_pq;
  std::size_t trial = 0;
  double ratio = 0.0;
};

struct ProbeReport {
  std::vector<ProbeRow> rows;
  double max_ratio = 0.0;
};

/// ||S_lambda(t) phi||_inf (lambda^{-1/2} + t^{1/2}) / ||phi||_1 for every
/// (t, trial); t values must lie in (0, 1].
ProbeReport dispersive_probe(const DiscretizedHamiltonian& h, double lambda, const CutoffProfile& profile,
                             const RVector& times, std::size_t trials, std::uint64_t seed);

/// ||Pi_lambda phi||_q / (lambda^{(1/p - 1/q)/2} ||phi||_p), 1 <= p <= q <= inf.
ProbeReport bernstein_probe(const DiscretizedHamiltonian& h, double lambda, const CutoffProfile& profile, double p,
                            double q, std::size_t trials, std::uint64_t seed);

/// "inf" for infinity, shortest round-trip decimal otherwise.
std::string format_exponent(double v);

}  // namespace specsplit
