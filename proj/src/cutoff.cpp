#include "specsplit/cutoff.hpp"

#include <cmath>
#include <limits>

#include "specsplit/errors.hpp"

namespace specsplit {

namespace {

double exp_kernel(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Rises from 0 at t = 0 to 1 at t = 1 with k - 1 vanishing derivatives at both ends.
double smoothstep_poly(double t, int k) {
  double sum = 0.0;
  double pw = 1.0;
  for (int j = 0; j < k; ++j) {
    sum += binomial(k - 1 + j, j) * pw;
    pw *= (1.0 - t);
  }
  return std::pow(t, k) * sum;
}

}  // namespace

CutoffProfile CutoffProfile::smoothstep(int k) {
  if (k < 3) throw InvalidInput("smoothstep order must be >= 3, got " + std::to_string(k));
  return CutoffProfile(Kind::smoothstep, k);
}

CutoffProfile CutoffProfile::parse(const std::string& text) {
  if (text == "exp_bump") return exp_bump();
  const std::string prefix = "smoothstep:";
  if (text.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(text.substr(prefix.size()), &used);
      if (used == text.size() - prefix.size()) return smoothstep(k);
    } catch (const std::logic_error&) {
    }
  }
  throw ConfigError("unknown cutoff profile '" + text + "' (expected exp_bump or smoothstep:<k>)");
}

std::string CutoffProfile::name() const {
  return kind_ == Kind::exp_bump ? "exp_bump" : "smoothstep:" + std::to_string(order_);
}

double CutoffProfile::operator()(double z) const {
  const double a = std::abs(z);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  if (kind_ == Kind::exp_bump) {
    const double up = exp_kernel(2.0 - a);
    const double down = exp_kernel(a - 1.0);
    return up / (up + down);
  }
  return smoothstep_poly(2.0 - a, order_);
}

RVector projector_weights(const DiscretizedHamiltonian& h, double lambda, const CutoffProfile& profile) {
  if (!(lambda > 0.0)) throw InvalidInput("cutoff level lambda must be positive");
  const auto& mu = h.eigenvalues();
  RVector w(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) {
    const double c = profile(mu[j] / lambda);
    w[j] = c * c;
  }
  return w;
}

State apply_cutoff(const State& u, double lambda, const CutoffProfile& profile) {
  const RVector w = projector_weights(*u.hamiltonian(), lambda, profile);
  State c = to_eigenbasis(u);
  auto& data = c.data();
  for (std::size_t j = 0; j < data.size(); ++j) data[j] *= w[j];
  return c;
}

State propagate(const State& u, double t) {
  return propagate_cutoff(u, t, std::numeric_limits<double>::infinity(), CutoffProfile::exp_bump());
}

CVector cutoff_propagator_diagonal(const DiscretizedHamiltonian& h, double t, double lambda,
                                   const CutoffProfile& profile) {
  const auto& mu = h.eigenvalues();
  const bool unbounded = std::isinf(lambda);
  const RVector w = unbounded ? RVector(mu.size(), 1.0) : projector_weights(h, lambda, profile);
  CVector d(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) d[j] = w[j] * std::polar(1.0, -t * mu[j]);
  return d;
}

State propagate_cutoff(const State& u, double t, double lambda, const CutoffProfile& profile) {
  const CVector d = cutoff_propagator_diagonal(*u.hamiltonian(), t, lambda, profile);
  State c = to_eigenbasis(u);
  auto& data = c.data();
  for (std::size_t j = 0; j < data.size(); ++j) data[j] *= d[j];
  return c;
}

}  // namespace specsplit
