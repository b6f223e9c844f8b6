#include "specsplit/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "specsplit/errors.hpp"

namespace specsplit {

Eigen::MatrixXd assemble_hamiltonian(const Grid1D& grid, std::span<const double> v_values) {
  if (v_values.size() != grid.size()) throw ShapeError("potential samples", grid.size(), v_values.size());
  for (std::size_t i = 0; i < v_values.size(); ++i)
    if (!std::isfinite(v_values[i])) throw InvalidInput("potential is not finite at node " + std::to_string(i));
  Eigen::MatrixXd h = -second_derivative_matrix(grid);
  for (std::size_t i = 0; i < v_values.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    h(k, k) += v_values[i];
  }
  return h;
}

SpectralDecomposition eigendecompose(const Eigen::MatrixXd& matrix, double weight) {
  if (matrix.rows() != matrix.cols())
    throw ShapeError("eigendecomposition needs a square matrix", static_cast<std::size_t>(matrix.rows()),
                     static_cast<std::size_t>(matrix.cols()));
  if (!(weight > 0.0)) throw InvalidInput("inner-product weight must be positive");
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidInput("eigendecomposition needs a symmetric matrix");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
  const auto n = matrix.rows();
  auto first_bad = [&]() -> std::size_t {
    for (Eigen::Index j = 0; j < n; ++j)
      if (!std::isfinite(solver.eigenvalues()(j)) || !solver.eigenvectors().col(j).allFinite())
        return static_cast<std::size_t>(j);
    return static_cast<std::size_t>(n);
  };
  if (solver.info() != Eigen::Success) throw NumericalFailure("symmetric eigensolver did not converge", first_bad());
  if (const auto bad = first_bad(); bad != static_cast<std::size_t>(n))
    throw NumericalFailure("non-finite eigenpair", bad);

  SpectralDecomposition out;
  out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  // One Newton-Schulz sweep pulls Q^T Q back to I at roundoff level. Long
  // runs do one analysis/synthesis pair per step, so any defect here turns
  // into a steady mass drift.
  Eigen::MatrixXd q = solver.eigenvectors();
  const Eigen::MatrixXd defect = Eigen::MatrixXd::Identity(n, n) - q.transpose() * q;
  q += 0.5 * q * defect;
  out.eigenvectors = q / std::sqrt(weight);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Index at = 0;
    out.eigenvectors.col(j).cwiseAbs().maxCoeff(&at);
    if (out.eigenvectors(at, j) < 0.0) out.eigenvectors.col(j) *= -1.0;
  }
  return out;
}

DiscretizedHamiltonian::DiscretizedHamiltonian(const Grid1D& grid, std::span<const double> v_raw)
    : grid_(grid), v_(v_raw.begin(), v_raw.end()), gauge_shift_(0.0) {
  if (v_.size() != grid.size()) throw ShapeError("potential samples", grid.size(), v_.size());
  matrix_ = assemble_hamiltonian(grid_, v_);
  gauge_shift_ = gauge_shift_for(v_);
  for (auto& v : v_) v += gauge_shift_;
  matrix_.diagonal().array() += gauge_shift_;
  eig_ = eigendecompose(matrix_, grid_.spacing());
  rowmajor_ = eig_.eigenvectors.transpose();
  diff_ = std::make_unique<SpectralDifferentiator>(grid_);
}

std::shared_ptr<const DiscretizedHamiltonian> DiscretizedHamiltonian::build(const Grid1D& grid,
                                                                            const ConfiningPotential& v) {
  const RVector samples = sample_confining(v, grid);
  return std::make_shared<const DiscretizedHamiltonian>(grid, samples);
}

kernels::BasisView DiscretizedHamiltonian::basis() const {
  const auto n = size();
  return {std::span<const double>(eig_.eigenvectors.data(), n * n), std::span<const double>(rowmajor_.data(), n * n),
          n, n};
}

double DiscretizedHamiltonian::residual(std::size_t j) const {
  const auto col = eig_.eigenvectors.col(static_cast<Eigen::Index>(j));
  const Eigen::VectorXd r = matrix_ * col - eig_.eigenvalues[j] * col;
  return std::sqrt(grid_.spacing() * r.squaredNorm());
}

double DiscretizedHamiltonian::orthonormality_defect() const {
  const Eigen::MatrixXd gram = grid_.spacing() * (eig_.eigenvectors.transpose() * eig_.eigenvectors);
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace specsplit
