// Copyright 2026 The covq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "covq/fock.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace covq::fock {
namespace {

constexpr double kRankTolerance = 1e-14;

void check_cutoff(int cutoff, int minimum = 2) {
  if (cutoff < minimum) {
    throw DomainError("Fock cutoff must be at least " + std::to_string(minimum) + ", got " +
                      std::to_string(cutoff));
  }
}

void check_eta(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw DomainError("transmittance must lie in (0, 1), got " + std::to_string(eta));
  }
}

Eigen::Index power(int base, int exp) {
  Eigen::Index out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

Matrix fock_projector(int photons, int cutoff) {
  Matrix m = Matrix::Zero(cutoff, cutoff);
  m(photons, photons) = 1.0;
  return m;
}

// Thermal weights renormalized over the truncated support.
Eigen::VectorXd thermal_weights(double nbar, int cutoff) {
  Eigen::VectorXd w(cutoff);
  const double ratio = nbar / (1.0 + nbar);
  w(0) = 1.0 / (1.0 + nbar);
  for (int k = 1; k < cutoff; ++k) w(k) = w(k - 1) * ratio;
  return w / w.sum();
}

Matrix rail_output(const Matrix& unitary, RailInput input, const Matrix& env) {
  const int cutoff = static_cast<int>(env.rows());
  const Matrix in = fock_projector(input == RailInput::kVacuum ? 0 : 1, cutoff);
  const Matrix joint = unitary * Matrix(Eigen::kroneckerProduct(in, env)) * unitary.adjoint();
  return partial_trace(joint, cutoff, KeepMode::kSecond);
}

}  // namespace

DensityOperator::DensityOperator(Matrix matrix, int cutoff, int modes)
    : matrix_(std::move(matrix)), cutoff_(cutoff), modes_(modes) {
  check_cutoff(cutoff);
  if (modes < 1) throw DomainError("a density operator needs at least one mode");
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != power(cutoff, modes)) {
    throw DomainError("density matrix shape does not match cutoff^modes");
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
    throw DomainError("density matrix is not Hermitian");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kStateTolerance) {
    throw DomainError("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(matrix_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kStateTolerance) {
    throw DomainError("density matrix has a negative eigenvalue");
  }
}

double DensityOperator::mean_photon_number() const {
  if (modes_ != 1) throw DomainError("mean photon number is defined here for one mode only");
  double n = 0.0;
  for (int k = 0; k < cutoff_; ++k) n += k * matrix_(k, k).real();
  return n;
}

DensityOperator DensityOperator::tensor(const DensityOperator& other) const {
  if (other.cutoff_ != cutoff_) throw DomainError("tensor product needs equal cutoffs");
  return DensityOperator(Eigen::kroneckerProduct(matrix_, other.matrix_), cutoff_,
                         modes_ + other.modes_);
}

SignalSpec SignalSpec::dual_rail(Complex alpha, Complex beta) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
    throw DomainError("dual-rail amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
  }
  return SignalSpec(DualRail{alpha, beta});
}

DensityOperator thermal_state(double nbar, int cutoff) {
  check_cutoff(cutoff);
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw DomainError("mean photon number must be nonnegative, got " + std::to_string(nbar));
  }
  const Eigen::VectorXd w = thermal_weights(nbar, cutoff);
  return DensityOperator(w.cast<Complex>().asDiagonal().toDenseMatrix(), cutoff, 1);
}

Matrix annihilation(int cutoff) {
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (int k = 1; k < cutoff; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

Matrix beamsplitter_unitary(double eta, int cutoff) {
  check_eta(eta);
  check_cutoff(cutoff);
  const Matrix id = Matrix::Identity(cutoff, cutoff);
  const Matrix a1 = annihilation(cutoff);
  const Matrix a = Eigen::kroneckerProduct(a1, id);
  const Matrix e = Eigen::kroneckerProduct(id, a1);
  const double theta = std::acos(std::sqrt(eta));
  const Matrix generator = theta * (a.adjoint() * e - a * e.adjoint());
  return generator.exp();
}

Matrix partial_trace(const Matrix& two_mode, int cutoff, KeepMode keep) {
  const Eigen::Index d = cutoff;
  if (two_mode.rows() != d * d || two_mode.cols() != d * d) {
    throw DomainError("partial trace: operator is not two-mode at this cutoff");
  }
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      Complex s = 0.0;
      for (Eigen::Index t = 0; t < d; ++t) {
        s += keep == KeepMode::kFirst ? two_mode(r * d + t, c * d + t)
                                      : two_mode(t * d + r, t * d + c);
      }
      out(r, c) = s;
    }
  }
  return out;
}

DensityOperator willie_rail_state(RailInput input, double eta, double nbar, int cutoff) {
  const Matrix u = beamsplitter_unitary(eta, cutoff);
  return DensityOperator(rail_output(u, input, thermal_state(nbar, cutoff).matrix()), cutoff, 1);
}

DensityOperator willie_idle_state(double eta, double nbar, int cutoff) {
  const auto rail = willie_rail_state(RailInput::kVacuum, eta, nbar, cutoff);
  return rail.tensor(rail);
}

DensityOperator willie_signal_state(const SignalSpec& signal, double eta, double nbar,
                                    int cutoff) {
  if (std::holds_alternative<Vacuum>(signal.mode())) return willie_idle_state(eta, nbar, cutoff);
  const auto& [alpha, beta] = std::get<DualRail>(signal.mode());

  // Each rail is (alice mode) x (env mode) with index alice * d + env and, after
  // the beamsplitter, (bob) x (willie) with index bob * d + willie. The thermal
  // environments are mixtures of Fock states |k>|l>, so the slot is evolved one
  // pure component at a time: psi(railA, railB) = alpha |0,k>|1,l> + beta |1,k>|0,l>.
  const Eigen::Index d = cutoff;
  const Matrix u = beamsplitter_unitary(eta, cutoff);
  const Eigen::VectorXd w = thermal_weights(nbar, cutoff);

  Matrix willie = Matrix::Zero(d * d, d * d);
  Matrix bob_by_willie(d * d, d * d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = 0; l < d; ++l) {
      const double weight = w(k) * w(l);
      // U psi U^T for a psi with two nonzero entries is a sum of two outer products.
      const Matrix evolved = alpha * u.col(k) * u.col(d + l).transpose() +
                             beta * u.col(d + k) * u.col(l).transpose();
      for (Eigen::Index ba = 0; ba < d; ++ba)
        for (Eigen::Index bb = 0; bb < d; ++bb)
          for (Eigen::Index wa = 0; wa < d; ++wa)
            for (Eigen::Index wb = 0; wb < d; ++wb)
              bob_by_willie(ba * d + bb, wa * d + wb) = evolved(ba * d + wa, bb * d + wb);
      willie.noalias() += weight * (bob_by_willie.transpose() * bob_by_willie.conjugate());
    }
  }
  return DensityOperator(std::move(willie), cutoff, 2);
}

Chi2Result chi2_divergence(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DomainError("chi2 divergence needs equal dimensions");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma.matrix());
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const Matrix& vecs = eig.eigenvectors();
  const double largest = lambda.maxCoeff();
  const double cut = kRankTolerance * largest;

  Eigen::VectorXd inv_sqrt(lambda.size());
  bool deficient = false;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > cut) {
      inv_sqrt(i) = 1.0 / std::sqrt(lambda(i));
    } else {
      inv_sqrt(i) = 0.0;
      const double overlap = (vecs.col(i).adjoint() * rho.matrix() * vecs.col(i))(0, 0).real();
      if (overlap > kRankTolerance) deficient = true;
    }
  }
  const Matrix s = vecs * inv_sqrt.cast<Complex>().asDiagonal() * vecs.adjoint();
  const Matrix half = s * rho.matrix();
  const double value = (half * half).trace().real() - 1.0;
  return Chi2Result{value, deficient, lambda.minCoeff() / largest};
}

double chi2_coefficient(double eta, double nbar, int cutoff, LogicalBasis basis) {
  const Matrix u = beamsplitter_unitary(eta, cutoff);
  const Matrix env = thermal_state(nbar, cutoff).matrix();
  const DensityOperator dark(rail_output(u, RailInput::kVacuum, env), cutoff, 1);
  const DensityOperator lit(rail_output(u, RailInput::kSinglePhoton, env), cutoff, 1);
  // |0>_L = |01>: the photon travels on the second rail.
  const DensityOperator signal = basis == LogicalBasis::kZero ? dark.tensor(lit) : lit.tensor(dark);
  return chi2_divergence(signal, dark.tensor(dark)).value;
}

double chi2_coefficient_analytic(double eta, double nbar) {
  const double loss = 1.0 - eta;
  const double background = eta * nbar;
  return loss * loss / (background * (1.0 + background));
}

double c_cov_from_coefficient(double coeff) {
  if (!(coeff > 0.0)) throw DomainError("chi2 coefficient must be positive");
  return std::sqrt(2.0 / coeff);
}

std::vector<ConvergenceRow> convergence_sweep(double eta, double nbar,
                                              std::span<const int> cutoffs) {
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    check_cutoff(cutoffs[i], 3);
    if (i > 0 && cutoffs[i] <= cutoffs[i - 1]) {
      throw DomainError("cutoffs must be strictly ascending");
    }
  }
  const double analytic = chi2_coefficient_analytic(eta, nbar);
  std::vector<ConvergenceRow> rows;
  rows.reserve(cutoffs.size());
  for (int cutoff : cutoffs) {
    const double sim = chi2_coefficient(eta, nbar, cutoff);
    const double abs_err = std::abs(sim - analytic);
    rows.push_back({cutoff, sim, abs_err, 100.0 * abs_err / analytic});
  }
  return rows;
}

}  // namespace covq::fock
