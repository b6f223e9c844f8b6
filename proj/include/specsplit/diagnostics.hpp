#pragma once

#include <cstdint>

#include "specsplit/cutoff.hpp"
#include "specsplit/flows.hpp"
#include "specsplit/problem.hpp"

namespace specsplit {

/// (h sum |u|^p)^(1/p) on the grid, max |u| for p = inf. p < 1 is invalid.
double lp_norm(const Grid1D& grid, std::span<const cplx> u, double p);
double lp_norm(const State& u, double p);

double mass(const State& u);
/// h sum (|u'|^2 + (V + W)|u|^2 + eps/(sigma+1) |u|^(2 sigma + 2)), V gauged.
double energy(const State& u, const Problem& problem);

/// Strichartz pair in d = 1: 2/q = 1/2 - 1/r, r in [2, inf), q in [4, inf].
struct AdmissiblePair {
  double q = 0.0;
  double r = 0.0;

  static AdmissiblePair make(double q, double r);
  static bool is_admissible(double q, double r);
};

struct CanonicalExponents {
  AdmissiblePair pair;  // (q0, r0) = ((4 sigma + 4)/sigma, 2 sigma + 2)
  double theta = 0.0;   // 2 sigma (2 sigma + 2) / (2 + sigma)
};

CanonicalExponents canonical_pairs(double sigma);

/// (w sum_{t_n in [t_begin, t_end]} ||u(t_n)||_{L^r}^q)^(1/q), sup for q = inf,
/// where w = tau * stride is the snapshot spacing.
double discrete_strichartz_norm(const Trajectory& traj, double q, double r, double t_begin, double t_end);

/// Max over trials of ||S_lambda(n tau) phi||_{l^q([0,T]; L^r)} / ((lambda tau)^(1/q) ||phi||_2).
/// Requires lambda tau >= 1 and an admissible pair.
struct StrichartzProbeResult {
  double max_ratio = 0.0;
  RVector ratios;  // per trial
};
StrichartzProbeResult strichartz_constant_probe(const DiscretizedHamiltonian& h, double lambda, double tau,
                                                const AdmissiblePair& pair, std::size_t trials, double final_time,
                                                const CutoffProfile& profile, std::uint64_t seed);

}  // namespace specsplit
