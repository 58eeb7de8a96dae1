#include "movingwell/wkb.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "movingwell/errors.hpp"

namespace movingwell {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double integral_delta_v(const PerturbingPotential& pot) {
  return pot.f / 2.0 + pot.k / 6.0;
}

double wkb_energy(int n, const PerturbingPotential& pot,
                  const PhysicalParams& params) {
  if (n < 1) throw std::invalid_argument("wkb_energy: n must be >= 1");
  const double hk = params.hbar() * n * kPi;
  return hk * hk / (2.0 * params.mass()) + integral_delta_v(pot);
}

double wkb_mode(int n, const PerturbingPotential& pot, double y,
                const PhysicalParams& params) {
  if (n < 1) throw std::invalid_argument("wkb_mode: n must be >= 1");
  if (y < 0.0 || y > 1.0) throw OutOfDomain("wkb_mode: y outside [0, 1]");
  const double pre =
      params.mass() / (params.hbar() * params.hbar() * n * kPi);
  const double corr =
      pot.f * y * (1.0 - y) / 2.0 + pot.k * y * (1.0 - y * y) / 6.0;
  return std::sqrt(2.0) * std::sin(n * kPi * y + pre * corr);
}

double SineBasisSpectrum::mode(std::size_t level, double y) const {
  const auto& c = coefficients.at(level);
  double v = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    v += c[j] * std::sqrt(2.0) * std::sin((j + 1.0) * kPi * y);
  }
  return v;
}

ComplexField SineBasisSpectrum::mode_field(std::size_t level,
                                           const SpatialGrid& grid) const {
  return ComplexField::sample(
      grid, [&](double y) { return cplx(mode(level, y)); }, Frame::comoving_y);
}

SineBasisSpectrum sine_basis_oracle(const PerturbingPotential& pot,
                                    std::size_t n_basis,
                                    const PhysicalParams& params) {
  if (n_basis < 8) {
    throw std::invalid_argument("sine_basis_oracle: n_basis must be >= 8");
  }
  // Simpson nodes: enough that the fastest product sin(i) sin(j) is resolved
  // by ~64 intervals per period.
  const std::size_t intervals = 128 * n_basis;
  const std::size_t nodes = intervals + 1;
  const double h = 1.0 / static_cast<double>(intervals);

  Eigen::MatrixXd basis(nodes, n_basis);
  Eigen::VectorXd weight(nodes);
  for (std::size_t q = 0; q < nodes; ++q) {
    const double y = static_cast<double>(q) * h;
    const double simpson =
        (q == 0 || q == intervals) ? 1.0 : (q % 2 == 1 ? 4.0 : 2.0);
    weight(q) = simpson * h / 3.0 * pot(y);
    for (std::size_t j = 0; j < n_basis; ++j) {
      basis(q, j) = std::sqrt(2.0) * std::sin((j + 1.0) * kPi * y);
    }
  }
  Eigen::MatrixXd ham = basis.transpose() * weight.asDiagonal() * basis;
  const double kin = params.hbar() * params.hbar() / (2.0 * params.mass());
  for (std::size_t j = 0; j < n_basis; ++j) {
    const double kj = (j + 1.0) * kPi;
    ham(j, j) += kin * kj * kj;
  }
  ham = 0.5 * (ham + ham.transpose()).eval();

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ham);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("sine_basis_oracle: diagonalisation failed");
  }
  SineBasisSpectrum out;
  out.energies.resize(n_basis);
  out.coefficients.assign(n_basis, std::vector<double>(n_basis));
  for (std::size_t level = 0; level < n_basis; ++level) {
    out.energies[level] = solver.eigenvalues()(level);
    Eigen::VectorXd v = solver.eigenvectors().col(level);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) v = -v;
    for (std::size_t j = 0; j < n_basis; ++j) out.coefficients[level][j] = v(j);
  }
  return out;
}

}  // namespace movingwell
