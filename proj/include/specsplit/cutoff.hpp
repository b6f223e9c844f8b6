#pragma once

#include <string>

#include "specsplit/state.hpp"

namespace specsplit {

/// Even bump chi with chi = 1 on [-1, 1], chi = 0 outside (-2, 2) and a
/// monotone transition in between.
///  - exp_bump: g(2-|z|) / (g(2-|z|) + g(|z|-1)), g(t) = exp(-1/t) for t > 0. C-infinity.
///  - smoothstep(k): polynomial transition of class C^{k-1}, k >= 3.
class CutoffProfile {
 public:
  enum class Kind { exp_bump, smoothstep };

  static CutoffProfile exp_bump() { return CutoffProfile(Kind::exp_bump, 0); }
  static CutoffProfile smoothstep(int k);
  /// "exp_bump" or "smoothstep:<k>".
  static CutoffProfile parse(const std::string& text);

  Kind kind() const { return kind_; }
  int order() const { return order_; }
  std::string name() const;

  double operator()(double z) const;

  bool operator==(const CutoffProfile&) const = default;

 private:
  CutoffProfile(Kind kind, int order) : kind_(kind), order_(order) {}
  Kind kind_;
  int order_;
};

inline double chi(const CutoffProfile& profile, double z) { return profile(z); }

/// w_j = chi^2(mu_j / lambda).
RVector projector_weights(const DiscretizedHamiltonian& h, double lambda, const CutoffProfile& profile);

/// Pi_lambda u = chi^2(H / lambda) u, returned in eigen space.
State apply_cutoff(const State& u, double lambda, const CutoffProfile& profile);

/// S(t) u = exp(-i t H) u, returned in eigen space.
State propagate(const State& u, double t);

/// S_lambda(t) u = Pi_lambda S(t) u = S(t) Pi_lambda u, applied as the single
/// diagonal multiplier chi^2(mu_j / lambda) exp(-i t mu_j).
State propagate_cutoff(const State& u, double t, double lambda, const CutoffProfile& profile);

/// The multiplier used by propagate_cutoff; lambda = +inf gives the plain group.
CVector cutoff_propagator_diagonal(const DiscretizedHamiltonian& h, double t, double lambda,
                                   const CutoffProfile& profile);

}  // namespace specsplit
