#pragma once

#include "specsplit/hamiltonian.hpp"
#include "specsplit/potential.hpp"

namespace specsplit {

/// Power-law nonlinearity eps |u|^(2 sigma) u. epsilon = +1 defocusing,
/// -1 focusing; 0 switches the nonlinear term off (linear problem).
struct NonlinearitySpec {
  double sigma = 1.0;
  double epsilon = 1.0;

  /// sigma < 2/d with d = 1: solutions exist globally for either sign.
  bool global_existence() const { return sigma < 2.0; }
  void validate() const;
};

/// Everything the flows need: H = -Lap + V (gauged), the bounded
/// perturbation W on the grid, and the nonlinearity.
struct Problem {
  HamiltonianPtr hamiltonian;
  RVector w_values;
  NonlinearitySpec nonlinearity;

  static Problem make(HamiltonianPtr h, const Perturbation& w, NonlinearitySpec nl);
  const Grid1D& grid() const { return hamiltonian->grid(); }
};

}  // namespace specsplit
