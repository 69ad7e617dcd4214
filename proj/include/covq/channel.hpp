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

// Closed-form channel formulas for the lossy thermal-noise bosonic channel:
// the covertness constant, the effective depolarizing parameter seen by Bob,
// the Pauli error vector and the hashing-bound coding rate.

#include <array>
#include <cstdint>
#include <span>

#include "covq/errors.hpp"

namespace covq {

/// A channel realization (eta, n_bar_b). Validated on construction:
/// 0 < eta < 1 and n_bar_b > 0.
class ChannelParams {
 public:
  ChannelParams(double eta, double n_bar_b);

  double eta() const noexcept { return eta_; }
  double n_bar_b() const noexcept { return n_bar_b_; }

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;

 private:
  double eta_;
  double n_bar_b_;
};

/// Probabilities [p_I, p_X, p_Y, p_Z] of a depolarizing channel.
class PauliErrorVector {
 public:
  /// Builds [1 - 3p/4, p/4, p/4, p/4]. Throws DomainError outside [0, 1].
  static PauliErrorVector from_depolarizing(double p);

  const std::array<double, 4>& probs() const noexcept { return probs_; }
  std::span<const double> view() const noexcept { return probs_; }
  double identity() const noexcept { return probs_[0]; }

 private:
  explicit PauliErrorVector(const std::array<double, 4>& probs) : probs_(probs) {}
  std::array<double, 4> probs_;
};

/// Frame length and covertness parameter: n >= 1, 0 < delta < 1/2.
class PolicyParams {
 public:
  PolicyParams(std::uint64_t n, double delta);

  std::uint64_t n() const noexcept { return n_; }
  double delta() const noexcept { return delta_; }
  double sqrt_n() const noexcept;

 private:
  std::uint64_t n_;
  double delta_;
};

/// sqrt(2 eta n (1 + eta n)) / (1 - eta). Strictly increasing in both
/// arguments; sets the square-root-law budget q <= 2 delta c / sqrt(n).
double covertness_constant(const ChannelParams& params);

/// 1 - eta / (1 + (1 - eta) n)^4. Increasing in n, decreasing in eta.
double depolarizing_p(const ChannelParams& params);

PauliErrorVector pauli_vector(double p);

/// Shannon entropy in bits with 0 log 0 = 0. Throws DomainError on negative
/// entries or when the entries do not sum to 1 within 1e-9.
double shannon_entropy(std::span<const double> probs);

/// Hashing-bound rate [1 - H(pauli_vector(p))]^+.
double hashing_rate(double p);

/// Largest admissible transmission probability 2 delta c / sqrt(n).
double max_transmission_probability(double covertness, const PolicyParams& policy);

}  // namespace covq
