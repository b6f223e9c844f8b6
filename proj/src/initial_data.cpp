#include <cmath>
#include <numbers>
#include <random>

#include "specsplit/errors.hpp"
#include "specsplit/study.hpp"

namespace specsplit {

State make_initial_data(const InitialDataSpec& spec, const HamiltonianPtr& h, std::uint64_t seed) {
  const Grid1D& grid = h->grid();
  switch (spec.kind) {
    case InitialKind::gaussian: {
      if (!(spec.width > 0.0)) throw InvalidInput("gaussian width must be positive");
      CVector u(grid.size());
      double acc = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = (grid.node(i) - spec.center) / spec.width;
        u[i] = std::exp(-0.5 * x * x);
        acc += std::norm(u[i]);
      }
      const double scale = 1.0 / std::sqrt(grid.spacing() * acc);
      for (auto& z : u) z *= scale;
      return State::on_grid(h, std::move(u));
    }
    case InitialKind::eigen_mix: {
      CVector c(spec.coefficients.begin(), spec.coefficients.end());
      return State::from_coefficients(h, std::move(c));
    }
    case InitialKind::rough: {
      if (!(spec.alpha > 0.0)) throw InvalidInput("rough exponent must be positive");
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
      const auto& mu = h->eigenvalues();
      CVector c(mu.size());
      double acc = 0.0;
      for (std::size_t j = 0; j < c.size(); ++j) {
        c[j] = std::polar(std::pow(1.0 + mu[j], -spec.alpha), phase(rng));
        acc += std::norm(c[j]);
      }
      const double scale = 1.0 / std::sqrt(acc);
      for (auto& z : c) z *= scale;
      return State::from_coefficients(h, std::move(c));
    }
  }
  throw InvalidInput("unknown initial data kind");
}

}  // namespace specsplit
