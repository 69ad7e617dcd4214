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

#pragma once

// Truncated Fock-space model of the beamsplitter channel as seen by the
// warden. Each mode is cut off at `cutoff` photon-number states; a
// two-mode operator uses the basis |i, j> with flat index i * cutoff + j.

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "covq/errors.hpp"

namespace covq::fock {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

inline constexpr double kStateTolerance = 1e-10;

/// Hermitian, unit-trace, positive semidefinite operator on `modes` modes of
/// dimension `cutoff` each. The constructor enforces the three properties
/// within kStateTolerance and throws DomainError otherwise.
class DensityOperator {
 public:
  DensityOperator(Matrix matrix, int cutoff, int modes);

  const Matrix& matrix() const noexcept { return matrix_; }
  int cutoff() const noexcept { return cutoff_; }
  int modes() const noexcept { return modes_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }

  /// Expectation of the photon number of a single-mode state.
  double mean_photon_number() const;

  DensityOperator tensor(const DensityOperator& other) const;

 private:
  Matrix matrix_;
  int cutoff_;
  int modes_;
};

struct Vacuum {};
struct DualRail {
  Complex alpha;  // amplitude of |0>_L = |01>
  Complex beta;   // amplitude of |1>_L = |10>
};

/// What Alice injects into the two rails of one slot.
class SignalSpec {
 public:
  static SignalSpec vacuum() { return SignalSpec(Vacuum{}); }
  /// Throws DomainError unless |alpha|^2 + |beta|^2 = 1 within 1e-12.
  static SignalSpec dual_rail(Complex alpha, Complex beta);
  static SignalSpec logical_zero() { return dual_rail(1.0, 0.0); }
  static SignalSpec logical_one() { return dual_rail(0.0, 1.0); }

  const std::variant<Vacuum, DualRail>& mode() const noexcept { return mode_; }

 private:
  explicit SignalSpec(std::variant<Vacuum, DualRail> m) : mode_(m) {}
  std::variant<Vacuum, DualRail> mode_;
};

enum class RailInput { kVacuum, kSinglePhoton };
enum class LogicalBasis { kZero, kOne };

/// Geometric weights nbar^k / (1 + nbar)^(k+1), k < cutoff, renormalized to
/// unit trace.
DensityOperator thermal_state(double nbar, int cutoff);

/// Annihilation operator on one truncated mode.
Matrix annihilation(int cutoff);

/// exp(theta (a^dag e - a e^dag)) with theta = arccos(sqrt(eta)), acting on
/// (signal mode) x (environment mode). In the Heisenberg picture the first
/// output is sqrt(eta) a + sqrt(1 - eta) e (Bob) and the second is
/// -(sqrt(1 - eta) a - sqrt(eta) e), Willie's mode up to a phase.
Matrix beamsplitter_unitary(double eta, int cutoff);

enum class KeepMode { kFirst, kSecond };

/// Partial trace of a two-mode operator.
Matrix partial_trace(const Matrix& two_mode, int cutoff, KeepMode keep);

/// Willie's single-mode state for one rail: beamsplitter applied to
/// input x thermal(nbar), Bob's output traced out.
DensityOperator willie_rail_state(RailInput input, double eta, double nbar, int cutoff);

/// Willie's two-rail state when nothing is sent (hypothesis H0).
DensityOperator willie_idle_state(double eta, double nbar, int cutoff);

/// Willie's two-rail state for a general slot input, from the full four-mode
/// model: Alice's two rails, two thermal environment modes, two beamsplitters.
/// Handles superpositions of |01> and |10>.
DensityOperator willie_signal_state(const SignalSpec& signal, double eta, double nbar, int cutoff);

struct Chi2Result {
  double value;
  /// sigma had eigenvalues below the rank tolerance on which rho has weight.
  bool rank_deficient;
  /// smallest / largest eigenvalue of sigma.
  double condition;
};

/// tr[sigma^{-1/2} rho sigma^{-1/2} rho] - 1. Eigenvalues of sigma below 1e-14
/// relative to its largest are pseudo-inverted to zero and reported.
Chi2Result chi2_divergence(const DensityOperator& rho, const DensityOperator& sigma);

/// Per-slot chi^2 coefficient: divergence between Willie's two-rail state for
/// a logical basis state and his idle state, both as explicit tensor products.
double chi2_coefficient(double eta, double nbar, int cutoff,
                        LogicalBasis basis = LogicalBasis::kZero);

/// Closed form (1 - eta)^2 / (eta nbar (1 + eta nbar)).
double chi2_coefficient_analytic(double eta, double nbar);

/// sqrt(2 / coeff). Throws DomainError for coeff <= 0.
double c_cov_from_coefficient(double coeff);

struct ConvergenceRow {
  int cutoff;
  double chi2_sim;
  double abs_err;
  double rel_err_pct;
};

/// Throws DomainError unless cutoffs are strictly ascending and each >= 3.
std::vector<ConvergenceRow> convergence_sweep(double eta, double nbar, std::span<const int> cutoffs);

}  // namespace covq::fock
