#include "specsplit/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "specsplit/errors.hpp"

namespace specsplit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(std::span<const double> v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i])) throw InvalidInput(std::string(what) + " is not finite at node " + std::to_string(i));
}

RVector checked_table(const TabulatedPotential& t, const Grid1D& grid, const char* what) {
  if (t.values.size() != grid.size()) throw ShapeError(what, grid.size(), t.values.size());
  require_finite(t.values, what);
  return t.values;
}

}  // namespace

RVector sample_confining(const ConfiningPotential& v, const Grid1D& grid) {
  return std::visit(
      overloaded{
          [&](const HarmonicPotential& p) {
            if (!(p.omega > 0.0)) throw InvalidInput("harmonic frequency must be positive");
            if (p.shift < 0.0) throw InvalidInput("harmonic shift must be non-negative");
            RVector out(grid.size());
            for (std::size_t i = 0; i < out.size(); ++i) {
              const double x = grid.node(i);
              out[i] = p.omega * p.omega * x * x + p.shift;
            }
            return out;
          },
          [&](const TabulatedPotential& t) { return checked_table(t, grid, "tabulated potential"); },
      },
      v);
}

RVector sample_perturbation(const Perturbation& w, const Grid1D& grid) {
  return std::visit(overloaded{
                        [&](const NoPerturbation&) { return RVector(grid.size(), 0.0); },
                        [&](const GaussianPerturbation& g) {
                          if (!(g.width > 0.0)) throw InvalidInput("perturbation width must be positive");
                          RVector out(grid.size());
                          for (std::size_t i = 0; i < out.size(); ++i) {
                            const double x = grid.node(i) / g.width;
                            out[i] = g.amplitude * std::exp(-x * x);
                          }
                          require_finite(out, "perturbation");
                          return out;
                        },
                        [&](const TabulatedPotential& t) { return checked_table(t, grid, "tabulated perturbation"); },
                    },
                    w);
}

double gauge_shift_for(std::span<const double> v_values) {
  if (v_values.empty()) return 0.0;
  const double lo = *std::min_element(v_values.begin(), v_values.end());
  return lo < 1.0 ? 1.0 - lo : 0.0;
}

TabulatedPotential read_potential_table(const std::string& path, const Grid1D& grid) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open potential table", path);
  TabulatedPotential table;
  table.values.reserve(grid.size());
  const double tol = 1e-9 * std::max(1.0, grid.half_width());
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double x = 0.0, v = 0.0;
    if (!(fields >> x >> v)) throw InvalidInput("malformed potential table row " + std::to_string(row) + " in " + path);
    if (row >= grid.size()) throw ShapeError("potential table rows in " + path, grid.size(), row + 1);
    if (std::abs(x - grid.node(row)) > tol)
      throw InvalidInput("potential table abscissa does not match grid node " + std::to_string(row) + " in " + path);
    table.values.push_back(v);
    ++row;
  }
  if (row != grid.size()) throw ShapeError("potential table rows in " + path, grid.size(), row);
  require_finite(table.values, "tabulated potential");
  return table;
}

}  // namespace specsplit
