#pragma once

#include <string>
#include <variant>

#include "specsplit/grid.hpp"

namespace specsplit {

/// V(x) = omega^2 x^2 + shift.
struct HarmonicPotential {
  double omega = 1.0;
  double shift = 0.0;
};

/// Values given at the grid nodes.
struct TabulatedPotential {
  RVector values;
};

/// W(x) = amplitude * exp(-x^2 / width^2).
struct GaussianPerturbation {
  double amplitude = 1.0;
  double width = 1.0;
};

struct NoPerturbation {};

using ConfiningPotential = std::variant<HarmonicPotential, TabulatedPotential>;
using Perturbation = std::variant<NoPerturbation, GaussianPerturbation, TabulatedPotential>;

struct PotentialSpec {
  ConfiningPotential confining = HarmonicPotential{};
  Perturbation perturbation = NoPerturbation{};
};

RVector sample_confining(const ConfiningPotential& v, const Grid1D& grid);
RVector sample_perturbation(const Perturbation& w, const Grid1D& grid);

/// Constant c >= 0 such that min(V + c) over the grid is >= 1.
double gauge_shift_for(std::span<const double> v_values);

/// Reads a two-column (x, value) text table. Every x must coincide with the
/// corresponding grid node; there is no interpolation.
TabulatedPotential read_potential_table(const std::string& path, const Grid1D& grid);

}  // namespace specsplit
