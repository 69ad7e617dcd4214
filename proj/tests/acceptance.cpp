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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "covq/fock.hpp"
#include "covq/planner.hpp"
#include "covq/report.hpp"
#include "oracle_values.hpp"
#include "oracles.hpp"

using namespace covq;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) detail << "; ";
      detail << what;
      ok = false;
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream msg;
      msg.precision(10);
      msg << what << " = " << got << " (want " << want << " +/- " << tol << ")";
      expect(false, msg.str());
    }
  }
};

struct Criterion {
  const char* name;
  double limit_s;
  std::function<void(Check&)> body;
};

const PolicyParams kPolicy(100'000'000, 0.05);
const ChannelParams kNominal(0.9, 0.12);

void table_three(Check& c) {
  const auto presets = report::builtin_presets();
  const double want[2][4] = {{1.9144, 0.1419, 0.3422, 655.0}, {0.2001, 0.2127, 0.1141, 22.82}};
  const double tol[4] = {5e-4, 5e-5, 5e-4, 0.0};
  const double payload_tol[2] = {0.5, 0.05};
  for (std::size_t k = 0; k < 2; ++k) {
    const auto plan = robust_plan(presets[k].box, PolicyParams(presets[k].n, presets[k].delta));
    const std::string tag = presets[k].name + " ";
    c.near(plan.c_cov_rob, want[k][0], tol[0], tag + "c_cov_rob");
    c.near(plan.p_worst, want[k][1], tol[1], tag + "p_worst");
    c.near(plan.r_rob, want[k][2], tol[2], tag + "R_worst");
    c.near(plan.m_rob, want[k][3], payload_tol[k], tag + "M_rob");
  }
}

void anchor(Check& c) {
  const auto box = make_box_symmetric(0.9, 0.12, 0.05);
  const auto verdict = naive_feasibility(box, kNominal, kPolicy);
  c.near(verdict.plan.scheduled_payload, 1673.9, 1.0, "naive scheduled payload");
  c.near(robust_plan(box, kPolicy).m_rob, 440.2, 0.5, "robust payload");
  c.expect(!verdict.feasible, "naive plan reported feasible");
  c.expect(verdict.guaranteed_payload == 0.0, "naive guaranteed payload nonzero");
  c.expect(verdict.covertness_witness.has_value(), "covertness witness missing");
  c.expect(verdict.reliability_witness.has_value(), "reliability witness missing");
}

void cliff(Check& c) {
  const auto result = solve_cliff(kNominal);
  c.near(result.p_crit, 0.2524, 1e-4, "p_crit");
  c.expect(result.u_crit.has_value(), "u_crit absent");
  if (!result.u_crit) return;
  const double u_crit = *result.u_crit;
  c.near(u_crit, 0.0885, 5e-4, "u_crit");
  std::vector<double> us;
  for (int i = 0; i <= 300; ++i) us.push_back(0.15 * i / 300.0);
  us.push_back(u_crit);
  us.push_back(u_crit - 1e-9);  // just outside the bisection bracket
  std::sort(us.begin(), us.end());
  for (const auto& row : sweep_payload_vs_u(kNominal, us, kPolicy)) {
    if (row.u >= u_crit && row.m_rob != 0.0) c.expect(false, "payload > 0 at u >= u_crit");
    if (row.u < u_crit && !(row.m_rob > 0.0)) c.expect(false, "payload == 0 below u_crit");
  }
}

void tax(Check& c) {
  const auto at = [](double u) { return security_tax(make_box_symmetric(0.9, 0.12, u), kPolicy); };
  const auto t5 = at(0.05), t0 = at(0.0), t10 = at(0.10);
  c.near(100.0 * t5.tax_fraction, 5.32, 0.05, "tax at u=0.05 (%)");
  c.expect(!t5.post_cliff_convention, "convention flag set at u=0.05");
  c.expect(t0.tax_fraction == 0.0, "tax at u=0 nonzero");
  c.expect(t10.tax_fraction == 1.0, "tax at u=0.10 not 100%");
  c.expect(t10.post_cliff_convention, "convention flag not set at u=0.10");
}

void table_two(Check& c) {
  std::vector<int> cutoffs{3, 4, 5, 6, 7, 8, 9, 10};
  const auto rows = fock::convergence_sweep(0.9, 0.12, cutoffs);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    c.near(rows[i].chi2_sim, oracle::kTableChi2[i], 2e-4,
           "chi2 at cutoff " + std::to_string(rows[i].cutoff));
    if (i > 0 && !(rows[i].rel_err_pct < rows[i - 1].rel_err_pct)) {
      c.expect(false, "relative error not decreasing at cutoff " + std::to_string(rows[i].cutoff));
    }
  }
  c.near(rows.back().chi2_sim, 0.08356732, 1e-6, "chi2 at cutoff 10");
  c.expect(rows[4].cutoff == 7 && rows[4].rel_err_pct < 0.01, "relative error at cutoff 7 >= 0.01%");
}

UncertaintyBox random_box(std::mt19937_64& rng, int kind) {
  std::uniform_real_distribution<double> eta0(0.3, 0.99), nb0(0.005, 1.5), m(0.0, 0.6);
  const double e = eta0(rng), n = nb0(rng);
  if (kind % 2 == 0) return make_box_symmetric(e, n, m(rng));
  return make_box_asymmetric(e, n, {m(rng), m(rng), m(rng), m(rng)});
}

void properties(Check& c) {
  std::mt19937_64 rng(2026);

  // monotonicity of c_cov and p
  std::uniform_real_distribution<double> eta(0.05, 0.95), nb(0.001, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double e = eta(rng), n = nb(rng), h = 1e-4;
    const double cc = covertness_constant({e, n});
    const double pp = depolarizing_p({e, n});
    if (!(covertness_constant({e, n + h}) > cc && covertness_constant({e + h, n}) > cc)) {
      c.expect(false, "c_cov not increasing");
    }
    if (!(depolarizing_p({e, n + h}) > pp && depolarizing_p({e + h, n}) < pp)) {
      c.expect(false, "p not monotone");
    }
  }

  // corner extremizers, payload identity and clamp finiteness
  for (int k = 0; k < 100; ++k) {
    const auto box = random_box(rng, k);
    const double eta_hi = std::min(box.eta_max(), 1.0 - 1e-9);
    const auto cmin = oracle::grid_extremum(box.eta_min(), eta_hi, box.nb_min(), box.nb_max(), 50,
                                            oracle::ccov_formula, true);
    const auto pmax = oracle::grid_extremum(box.eta_min(), eta_hi, box.nb_min(), box.nb_max(), 50,
                                            oracle::p_formula, false);
    if (cmin.i_eta != 0 || cmin.i_nb != 0) c.expect(false, "c_cov minimum off the corner");
    if (pmax.i_eta != 0 || (box.nb_max() > box.nb_min() && pmax.i_nb != 49)) {
      c.expect(false, "p maximum off the corner");
    }
    const PolicyParams policy(10'000'000'000ULL, 0.05);
    const auto plan = robust_plan(box, policy);
    const double identity = static_cast<double>(policy.n()) * plan.q_rob * plan.r_rob;
    if (!(std::abs(identity - plan.m_rob) <= 1e-9 * plan.m_rob)) {
      c.expect(false, "payload identity violated");
    }
    if (!std::isfinite(plan.m_rob)) c.expect(false, "non-finite payload");
  }

  // square-root scaling
  const std::vector<double> levels{0.0, 0.02, 0.05};
  const std::vector<std::uint64_t> ns{1'000'000, 37'000'000, 100'000'000, 10'000'000'000ULL};
  const auto rows = sweep_payload_vs_n(kNominal, levels, ns, 0.05);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      const double want = std::sqrt(static_cast<double>(ns[b]) / static_cast<double>(ns[a]));
      for (std::size_t k = 0; k < levels.size(); ++k) {
        if (!(std::abs(rows[b].robust[k] / rows[a].robust[k] - want) <= 1e-9 * want)) {
          c.expect(false, "sqrt(n) scaling violated");
        }
      }
    }
  }

  // density operators and the beamsplitter
  for (int d = 3; d <= 10; ++d) {
    const auto u = fock::beamsplitter_unitary(0.9, d);
    const double unitarity =
        (u.adjoint() * u - fock::Matrix::Identity(d * d, d * d)).cwiseAbs().maxCoeff();
    if (!(unitarity < 1e-10)) c.expect(false, "beamsplitter not unitary at cutoff " + std::to_string(d));
    for (auto input : {fock::RailInput::kVacuum, fock::RailInput::kSinglePhoton}) {
      const fock::Matrix m = fock::willie_rail_state(input, 0.9, 0.12, d).matrix();
      Eigen::SelfAdjointEigenSolver<fock::Matrix> es(m);
      if (!((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-10 && std::abs(m.trace() - 1.0) < 1e-10 &&
            es.eigenvalues().minCoeff() >= -1e-10)) {
        c.expect(false, "invalid density operator at cutoff " + std::to_string(d));
      }
    }
  }

  // chi-square identities
  const auto r1 = fock::willie_rail_state(fock::RailInput::kSinglePhoton, 0.9, 0.12, 6);
  const auto s1 = fock::willie_rail_state(fock::RailInput::kVacuum, 0.9, 0.12, 6);
  const auto r2 = fock::willie_rail_state(fock::RailInput::kSinglePhoton, 0.8, 0.3, 6);
  const auto s2 = fock::willie_rail_state(fock::RailInput::kVacuum, 0.8, 0.3, 6);
  c.near(fock::chi2_divergence(r1, r1).value, 0.0, 1e-9, "chi2(rho, rho)");
  const double c1 = fock::chi2_divergence(r1, s1).value;
  const double c2 = fock::chi2_divergence(r2, s2).value;
  c.near(fock::chi2_divergence(r1.tensor(r2), s1.tensor(s2)).value, (1 + c1) * (1 + c2) - 1, 1e-9,
         "tensor factorization");
}

void map_slice(Check& c) {
  // default grid, timed as a whole
  const auto full = design_map({0.75, 0.99, 61}, {0.01, 0.30, 61}, 0.05, kPolicy);
  c.expect(full.cells.size() == 61 * 61, "default map has the wrong size");

  // a 61x61 grid whose axes pass exactly through (0.9, 0.12)
  const GridAxis eta_axis{0.81, 0.99, 61};
  const GridAxis nb_axis{0.06, 0.30, 61};
  const auto map = design_map(eta_axis, nb_axis, 0.05, kPolicy);
  const std::size_t i = 30, j = 15;
  c.expect(eta_axis.at(i) == 0.9 && nb_axis.at(j) == 0.12, "grid misses (0.9, 0.12)");
  const auto& cell = map.at(i, j);
  const auto u_crit = solve_u_crit(kNominal);
  const double m_rob = robust_plan(make_box_symmetric(0.9, 0.12, 0.05), kPolicy).m_rob;
  c.expect(cell.u_crit.has_value() && u_crit.has_value() && *cell.u_crit == *u_crit,
           "map u_crit differs from the standalone cliff");
  c.expect(cell.m_rob.has_value() && *cell.m_rob == m_rob,
           "map payload differs from the standalone bound");

  // the whole eta0 = 0.9 column
  for (std::size_t k = 0; k < nb_axis.count; ++k) {
    const ChannelParams nominal(0.9, nb_axis.at(k));
    const auto& slice = map.at(i, k);
    if (slice.u_crit != solve_u_crit(nominal) ||
        slice.m_rob != robust_plan(make_box_symmetric(0.9, nominal.n_bar_b(), 0.05), kPolicy).m_rob) {
      c.expect(false, "slice cell " + std::to_string(k) + " differs");
    }
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1 worked-example presets", 1.0, table_three},
      {"2 nominal anchor (naive vs robust)", 1.0, anchor},
      {"3 reliability cliff", 1.0, cliff},
      {"4 security tax", 1.0, tax},
      {"5 chi-square cutoff convergence", 30.0, table_two},
      {"6 property suites", 120.0, properties},
      {"7 design-map slice consistency", 120.0, map_slice},
  };
  int failures = 0;
  for (const auto& crit : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed >= crit.limit_s) {
      check.expect(false, "runtime " + std::to_string(elapsed) + " s over the limit");
    }
    std::printf("%s criterion %s (%.3f s, limit %.0f s)%s%s\n", check.ok ? "PASS" : "FAIL",
                crit.name, elapsed, crit.limit_s, check.ok ? "" : ": ",
                check.detail.str().c_str());
    if (!check.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
