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

#include "covq/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace covq {

ChannelParams::ChannelParams(double eta, double n_bar_b) : eta_(eta), n_bar_b_(n_bar_b) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw DomainError("transmittance must lie in (0, 1), got " + std::to_string(eta));
  }
  if (!(n_bar_b > 0.0) || !std::isfinite(n_bar_b)) {
    throw DomainError("mean thermal photon number must be positive, got " +
                      std::to_string(n_bar_b));
  }
}

PauliErrorVector PauliErrorVector::from_depolarizing(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("depolarizing parameter must lie in [0, 1], got " + std::to_string(p));
  }
  const double off = p / 4.0;
  return PauliErrorVector({1.0 - 3.0 * p / 4.0, off, off, off});
}

PolicyParams::PolicyParams(std::uint64_t n, double delta) : n_(n), delta_(delta) {
  if (n == 0) throw DomainError("number of channel uses must be at least 1");
  if (!(delta > 0.0 && delta < 0.5)) {
    throw DomainError("covertness parameter delta must lie in (0, 0.5), got " +
                      std::to_string(delta));
  }
}

double PolicyParams::sqrt_n() const noexcept { return std::sqrt(static_cast<double>(n_)); }

double covertness_constant(const ChannelParams& params) {
  const double eta = params.eta();
  const double willie_background = eta * params.n_bar_b();
  return std::sqrt(2.0 * willie_background * (1.0 + willie_background)) / (1.0 - eta);
}

double depolarizing_p(const ChannelParams& params) {
  const double eta = params.eta();
  const double base = 1.0 + (1.0 - eta) * params.n_bar_b();
  const double sq = base * base;
  return 1.0 - eta / (sq * sq);
}

PauliErrorVector pauli_vector(double p) { return PauliErrorVector::from_depolarizing(p); }

double shannon_entropy(std::span<const double> probs) {
  double total = 0.0;
  for (double x : probs) {
    if (!(x >= 0.0)) throw DomainError("probability vector has a negative or NaN entry");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw DomainError("probability vector does not sum to 1 (sum = " + std::to_string(total) + ")");
  }
  double h = 0.0;
  for (double x : probs) {
    if (x == 0.0) continue;
    h -= x * std::log2(x);
  }
  return h;
}

double hashing_rate(double p) {
  const auto vec = pauli_vector(p);
  return std::max(1.0 - shannon_entropy(vec.view()), 0.0);
}

double max_transmission_probability(double covertness, const PolicyParams& policy) {
  return 2.0 * policy.delta() * covertness / policy.sqrt_n();
}

}  // namespace covq
