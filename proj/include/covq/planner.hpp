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

// Robust covert-payload planning over a rectangular uncertainty box of
// channel realizations.
//
// The covertness constant is smallest at (eta_min, nb_min) and the
// depolarizing parameter is largest at (eta_min, nb_max), so a static policy
// that is feasible for every member of the box is obtained by evaluating each
// constraint at its own corner. Everything here is pure: the same inputs give
// bit-identical outputs, whatever order grid cells are evaluated in.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "covq/channel.hpp"

namespace covq {

struct SymmetricMargin {
  double u;
  friend bool operator==(const SymmetricMargin&, const SymmetricMargin&) = default;
};

/// Relative margins: eta in [(1-a) eta0, min((1+b) eta0, 1)],
/// nb in [(1-c) nb0, (1+d) nb0].
struct AsymmetricMargins {
  double a, b, c, d;
  friend bool operator==(const AsymmetricMargins&, const AsymmetricMargins&) = default;
};

struct ExplicitBounds {
  friend bool operator==(const ExplicitBounds&, const ExplicitBounds&) = default;
};

using BoxProvenance = std::variant<SymmetricMargin, AsymmetricMargins, ExplicitBounds>;

class UncertaintyBox {
 public:
  /// Throws DomainError unless 0 < eta_min <= eta_max <= 1 and 0 < nb_min <= nb_max.
  UncertaintyBox(double eta_min, double eta_max, double nb_min, double nb_max,
                 BoxProvenance provenance = ExplicitBounds{});

  double eta_min() const noexcept { return eta_min_; }
  double eta_max() const noexcept { return eta_max_; }
  double nb_min() const noexcept { return nb_min_; }
  double nb_max() const noexcept { return nb_max_; }
  const BoxProvenance& provenance() const noexcept { return provenance_; }

  bool is_point() const noexcept { return eta_min_ == eta_max_ && nb_min_ == nb_max_; }
  bool contains(const ChannelParams& p) const noexcept;

 private:
  double eta_min_, eta_max_, nb_min_, nb_max_;
  BoxProvenance provenance_;
};

UncertaintyBox make_box_symmetric(double eta0, double nb0, double u);
UncertaintyBox make_box_asymmetric(double eta0, double nb0, const AsymmetricMargins& m);
UncertaintyBox make_box_explicit(double eta_min, double eta_max, double nb_min, double nb_max);

/// (eta_min, nb_min): where the covertness constant is minimal over the box.
/// Throws DegenerateBox when eta_min = 1.
ChannelParams covertness_corner(const UncertaintyBox& box);

/// (eta_min, nb_max): where the depolarizing parameter is maximal over the box.
ChannelParams reliability_corner(const UncertaintyBox& box);

struct RobustPlan {
  double q_rob;
  double r_rob;
  double c_cov_rob;
  double p_worst;
  ChannelParams covert_corner;
  ChannelParams reliab_corner;
  /// Guaranteed expected covert qubits per frame, 2 sqrt(n) c_cov_rob r_rob delta.
  double m_rob;
};

/// Throws QOutOfRange when the robust transmission probability exceeds 1.
RobustPlan robust_plan(const UncertaintyBox& box, const PolicyParams& policy);

struct NaivePlan {
  double q_nom;
  double r_nom;
  double scheduled_payload;
};

NaivePlan naive_plan(const ChannelParams& nominal, const PolicyParams& policy);

struct FeasibilityVerdict {
  bool feasible;
  NaivePlan plan;
  std::optional<ChannelParams> covertness_witness;
  std::optional<ChannelParams> reliability_witness;
  /// Scheduled payload when feasible, 0 as soon as any witness exists.
  double guaranteed_payload;
};

/// Checks whether the nominally tuned policy stays covert and reliable over
/// the whole box.
FeasibilityVerdict naive_feasibility(const UncertaintyBox& box, const ChannelParams& nominal,
                                     const PolicyParams& policy);

/// Both constraints evaluated at the reliability corner. Comparator only; not
/// a valid guarantee.
double aligned_payload(const UncertaintyBox& box, const PolicyParams& policy);

struct TaxReport {
  double m_rob;
  double m_aligned;
  double tax_fraction;
  /// Set when the worst-case rate is zero and tax_fraction = 1 is a convention
  /// marking collapse, not a computed ratio.
  bool post_cliff_convention;
};

TaxReport security_tax(const UncertaintyBox& box, const PolicyParams& policy);

/// Depolarizing parameter at which the hashing bound vanishes (~0.2524).
double solve_p_crit();

/// Worst-case depolarizing parameter of the symmetric box of level u.
double worst_case_p(const ChannelParams& nominal, double u);

/// Smallest u in [0, 1) with worst_case_p(nominal, u) >= p_crit, or nullopt
/// when the threshold is not reached below u = 1.
std::optional<double> solve_u_crit(const ChannelParams& nominal);

struct CliffResult {
  double p_crit;
  std::optional<double> u_crit;
};

CliffResult solve_cliff(const ChannelParams& nominal);

/// Linearly spaced axis; count == 1 yields {lo}.
struct GridAxis {
  double lo;
  double hi;
  std::size_t count;

  double at(std::size_t i) const noexcept;
};

struct DesignMapCell {
  double eta0;
  double nb0;
  std::optional<double> u_crit;
  /// nullopt when the cell's plan is out of the square-root-law regime.
  std::optional<double> m_rob;
};

struct DesignMap {
  GridAxis eta_axis;
  GridAxis nb_axis;
  /// Row-major: eta index outer, nb index inner.
  std::vector<DesignMapCell> cells;

  const DesignMapCell& at(std::size_t i_eta, std::size_t i_nb) const {
    return cells.at(i_eta * nb_axis.count + i_nb);
  }
};

/// Throws DomainError for fewer than 2 points per axis or invalid axis ranges.
DesignMap design_map(const GridAxis& eta_axis, const GridAxis& nb_axis, double u,
                     const PolicyParams& policy);

DesignMapCell design_map_cell(double eta0, double nb0, double u, const PolicyParams& policy);

struct PayloadVsNRow {
  std::uint64_t n;
  double perfect;
  std::vector<double> robust;  // one entry per u level
};

std::vector<PayloadVsNRow> sweep_payload_vs_n(const ChannelParams& nominal,
                                              std::span<const double> u_levels,
                                              std::span<const std::uint64_t> ns, double delta);

struct PayloadVsURow {
  double u;
  double m_rob;
};

std::vector<PayloadVsURow> sweep_payload_vs_u(const ChannelParams& nominal,
                                              std::span<const double> us,
                                              const PolicyParams& policy);

struct SymAsymRow {
  double u;
  double symmetric;
  double asymmetric;
};

struct SymAsymComparison {
  std::vector<SymAsymRow> rows;
  /// Equivalent symmetric margin: u where the symmetric payload equals the
  /// (u-independent) asymmetric one, when bracketed by the sweep range.
  std::optional<double> crossing_u;
};

SymAsymComparison compare_sym_asym(const ChannelParams& nominal, const AsymmetricMargins& asym,
                                   std::span<const double> us, const PolicyParams& policy);

}  // namespace covq
