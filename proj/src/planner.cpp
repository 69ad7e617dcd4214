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

#include "covq/planner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "covq/detail/bisect.hpp"

namespace covq {
namespace {

constexpr double kPCritTolerance = 1e-12;
constexpr double kUCritTolerance = 1e-12;
constexpr double kUSearchMax = 1.0 - 1e-9;
constexpr double kCrossingTolerance = 1e-12;

void check_margin(double m, const char* name) {
  if (!(m >= 0.0 && m < 1.0)) {
    throw DomainError(std::string("uncertainty margin ") + name + " must lie in [0, 1), got " +
                      std::to_string(m));
  }
}

// Payload identity shared by every plan: n q R = 2 sqrt(n) c R delta.
double payload(double covertness, double rate, const PolicyParams& policy) {
  return 2.0 * policy.sqrt_n() * covertness * rate * policy.delta();
}

double checked_q(double covertness, const PolicyParams& policy) {
  const double q = max_transmission_probability(covertness, policy);
  if (q > 1.0) {
    throw QOutOfRange("transmission probability " + std::to_string(q) +
                      " exceeds 1; increase n or decrease delta");
  }
  return q;
}

UncertaintyBox box_from_margins(double eta0, double nb0, double a, double b, double c, double d,
                                BoxProvenance provenance) {
  const ChannelParams nominal(eta0, nb0);
  check_margin(a, "a");
  check_margin(b, "b");
  check_margin(c, "c");
  check_margin(d, "d");
  const double eta = nominal.eta();
  const double nb = nominal.n_bar_b();
  return UncertaintyBox((1.0 - a) * eta, std::min((1.0 + b) * eta, 1.0), (1.0 - c) * nb,
                        (1.0 + d) * nb, std::move(provenance));
}

}  // namespace

UncertaintyBox::UncertaintyBox(double eta_min, double eta_max, double nb_min, double nb_max,
                               BoxProvenance provenance)
    : eta_min_(eta_min),
      eta_max_(eta_max),
      nb_min_(nb_min),
      nb_max_(nb_max),
      provenance_(std::move(provenance)) {
  if (!(eta_min > 0.0 && eta_min <= eta_max && eta_max <= 1.0)) {
    throw DomainError("transmittance bounds must satisfy 0 < eta_min <= eta_max <= 1");
  }
  if (!(nb_min > 0.0 && nb_min <= nb_max && std::isfinite(nb_max))) {
    throw DomainError("thermal-noise bounds must satisfy 0 < nb_min <= nb_max");
  }
}

bool UncertaintyBox::contains(const ChannelParams& p) const noexcept {
  return p.eta() >= eta_min_ && p.eta() <= eta_max_ && p.n_bar_b() >= nb_min_ &&
         p.n_bar_b() <= nb_max_;
}

UncertaintyBox make_box_symmetric(double eta0, double nb0, double u) {
  return box_from_margins(eta0, nb0, u, u, u, u, SymmetricMargin{u});
}

UncertaintyBox make_box_asymmetric(double eta0, double nb0, const AsymmetricMargins& m) {
  return box_from_margins(eta0, nb0, m.a, m.b, m.c, m.d, m);
}

UncertaintyBox make_box_explicit(double eta_min, double eta_max, double nb_min, double nb_max) {
  return UncertaintyBox(eta_min, eta_max, nb_min, nb_max, ExplicitBounds{});
}

ChannelParams covertness_corner(const UncertaintyBox& box) {
  if (box.eta_min() >= 1.0) {
    throw DegenerateBox("eta_min = 1: covertness constant is undefined at the corner");
  }
  return ChannelParams(box.eta_min(), box.nb_min());
}

ChannelParams reliability_corner(const UncertaintyBox& box) {
  if (box.eta_min() >= 1.0) {
    throw DegenerateBox("eta_min = 1: channel corner is outside (0, 1)");
  }
  return ChannelParams(box.eta_min(), box.nb_max());
}

RobustPlan robust_plan(const UncertaintyBox& box, const PolicyParams& policy) {
  const ChannelParams covert = covertness_corner(box);
  const ChannelParams reliab = reliability_corner(box);
  const double c_rob = covertness_constant(covert);
  const double p_worst = depolarizing_p(reliab);
  const double r_worst = hashing_rate(p_worst);
  const double q_rob = checked_q(c_rob, policy);
  return RobustPlan{q_rob, r_worst, c_rob, p_worst, covert, reliab, payload(c_rob, r_worst, policy)};
}

NaivePlan naive_plan(const ChannelParams& nominal, const PolicyParams& policy) {
  const double c_nom = covertness_constant(nominal);
  const double r_nom = hashing_rate(depolarizing_p(nominal));
  const double q_nom = checked_q(c_nom, policy);
  return NaivePlan{q_nom, r_nom, payload(c_nom, r_nom, policy)};
}

FeasibilityVerdict naive_feasibility(const UncertaintyBox& box, const ChannelParams& nominal,
                                     const PolicyParams& policy) {
  const NaivePlan plan = naive_plan(nominal, policy);
  FeasibilityVerdict verdict{true, plan, std::nullopt, std::nullopt, plan.scheduled_payload};

  const ChannelParams covert = covertness_corner(box);
  if (plan.q_nom > max_transmission_probability(covertness_constant(covert), policy)) {
    verdict.covertness_witness = covert;
  }
  const ChannelParams reliab = reliability_corner(box);
  if (plan.r_nom > hashing_rate(depolarizing_p(reliab))) {
    verdict.reliability_witness = reliab;
  }
  if (verdict.covertness_witness || verdict.reliability_witness) {
    verdict.feasible = false;
    verdict.guaranteed_payload = 0.0;
  }
  return verdict;
}

double aligned_payload(const UncertaintyBox& box, const PolicyParams& policy) {
  const ChannelParams corner = reliability_corner(box);
  const double c = covertness_constant(corner);
  const double r = hashing_rate(depolarizing_p(corner));
  checked_q(c, policy);
  return payload(c, r, policy);
}

TaxReport security_tax(const UncertaintyBox& box, const PolicyParams& policy) {
  const RobustPlan plan = robust_plan(box, policy);
  const double aligned = aligned_payload(box, policy);
  if (plan.r_rob == 0.0) {
    return TaxReport{plan.m_rob, aligned, 1.0, true};
  }
  return TaxReport{plan.m_rob, aligned, (aligned - plan.m_rob) / aligned, false};
}

double solve_p_crit() {
  // H(pauli_vector(p)) rises from 0 at p = 0 to 2 at p = 1, so [0, 1] brackets
  // the single crossing of H = 1.
  static const double p_crit = detail::bisect_boundary(
      [](double p) { return shannon_entropy(pauli_vector(p).view()) >= 1.0; }, 0.0, 1.0,
      kPCritTolerance);
  return p_crit;
}

double worst_case_p(const ChannelParams& nominal, double u) {
  return depolarizing_p(reliability_corner(make_box_symmetric(nominal.eta(), nominal.n_bar_b(), u)));
}

std::optional<double> solve_u_crit(const ChannelParams& nominal) {
  const double p_crit = solve_p_crit();
  auto past_cliff = [&](double u) { return worst_case_p(nominal, u) >= p_crit; };
  if (past_cliff(0.0)) return 0.0;
  if (!past_cliff(kUSearchMax)) return std::nullopt;
  return detail::bisect_boundary(past_cliff, 0.0, kUSearchMax, kUCritTolerance);
}

CliffResult solve_cliff(const ChannelParams& nominal) {
  return CliffResult{solve_p_crit(), solve_u_crit(nominal)};
}

double GridAxis::at(std::size_t i) const noexcept {
  if (count <= 1) return lo;
  if (i + 1 == count) return hi;
  return std::lerp(lo, hi, static_cast<double>(i) / static_cast<double>(count - 1));
}

DesignMapCell design_map_cell(double eta0, double nb0, double u, const PolicyParams& policy) {
  const ChannelParams nominal(eta0, nb0);
  DesignMapCell cell{eta0, nb0, solve_u_crit(nominal), std::nullopt};
  try {
    cell.m_rob = robust_plan(make_box_symmetric(eta0, nb0, u), policy).m_rob;
  } catch (const QOutOfRange&) {
    // flagged cell: left empty
  }
  return cell;
}

DesignMap design_map(const GridAxis& eta_axis, const GridAxis& nb_axis, double u,
                     const PolicyParams& policy) {
  if (eta_axis.count < 2 || nb_axis.count < 2) {
    throw DomainError("design map needs at least 2 points per axis");
  }
  if (!(eta_axis.lo > 0.0 && eta_axis.lo <= eta_axis.hi && eta_axis.hi < 1.0)) {
    throw DomainError("eta range must lie inside (0, 1) with lo <= hi");
  }
  if (!(nb_axis.lo > 0.0 && nb_axis.lo <= nb_axis.hi)) {
    throw DomainError("thermal-noise range must be positive with lo <= hi");
  }
  check_margin(u, "u");

  DesignMap map{eta_axis, nb_axis, {}};
  map.cells.reserve(eta_axis.count * nb_axis.count);
  for (std::size_t i = 0; i < eta_axis.count; ++i) {
    for (std::size_t j = 0; j < nb_axis.count; ++j) {
      map.cells.push_back(design_map_cell(eta_axis.at(i), nb_axis.at(j), u, policy));
    }
  }
  return map;
}

std::vector<PayloadVsNRow> sweep_payload_vs_n(const ChannelParams& nominal,
                                              std::span<const double> u_levels,
                                              std::span<const std::uint64_t> ns, double delta) {
  std::vector<UncertaintyBox> boxes;
  boxes.reserve(u_levels.size());
  for (double u : u_levels) boxes.push_back(make_box_symmetric(nominal.eta(), nominal.n_bar_b(), u));

  std::vector<PayloadVsNRow> rows;
  rows.reserve(ns.size());
  for (std::uint64_t n : ns) {
    const PolicyParams policy(n, delta);
    PayloadVsNRow row{n, naive_plan(nominal, policy).scheduled_payload, {}};
    row.robust.reserve(boxes.size());
    for (const auto& box : boxes) row.robust.push_back(robust_plan(box, policy).m_rob);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<PayloadVsURow> sweep_payload_vs_u(const ChannelParams& nominal,
                                              std::span<const double> us,
                                              const PolicyParams& policy) {
  std::vector<PayloadVsURow> rows;
  rows.reserve(us.size());
  for (double u : us) {
    const auto box = make_box_symmetric(nominal.eta(), nominal.n_bar_b(), u);
    rows.push_back({u, robust_plan(box, policy).m_rob});
  }
  return rows;
}

SymAsymComparison compare_sym_asym(const ChannelParams& nominal, const AsymmetricMargins& asym,
                                   std::span<const double> us, const PolicyParams& policy) {
  const double eta0 = nominal.eta();
  const double nb0 = nominal.n_bar_b();
  const double asym_payload = robust_plan(make_box_asymmetric(eta0, nb0, asym), policy).m_rob;
  auto symmetric = [&](double u) {
    return robust_plan(make_box_symmetric(eta0, nb0, u), policy).m_rob;
  };

  SymAsymComparison out;
  out.rows.reserve(us.size());
  for (double u : us) out.rows.push_back({u, symmetric(u), asym_payload});

  if (!us.empty()) {
    const double lo = us.front();
    const double hi = us.back();
    auto below = [&](double u) { return symmetric(u) <= asym_payload; };
    if (lo < hi && !below(lo) && below(hi)) {
      out.crossing_u = detail::bisect_boundary(below, lo, hi, kCrossingTolerance);
    } else if (below(lo) && symmetric(lo) == asym_payload) {
      out.crossing_u = lo;
    }
  }
  return out;
}

}  // namespace covq
