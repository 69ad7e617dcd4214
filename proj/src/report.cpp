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

#include "covq/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "covq/fock.hpp"

namespace covq::report {
namespace {

using Json = nlohmann::ordered_json;

std::string cell_csv(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {};
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_real(v);
        } else {
          return v;
        }
      },
      cell);
}

Json cell_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          // Round through the 9-digit text form so JSON and CSV agree.
          return std::strtod(format_real(v).c_str(), nullptr);
        } else {
          return v;
        }
      },
      cell);
}

Cell opt(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

Cell flag(bool b) { return std::int64_t{b ? 1 : 0}; }

Cell count(std::uint64_t n) { return static_cast<std::int64_t>(n); }

void add_policy(Table& t, const PolicyParams& policy) {
  t.params.emplace_back("n", count(policy.n()));
  t.params.emplace_back("delta", policy.delta());
}

void add_nominal(Table& t, const ChannelParams& nominal) {
  t.params.emplace_back("eta0", nominal.eta());
  t.params.emplace_back("nb0", nominal.n_bar_b());
}

void add_box(Table& t, const UncertaintyBox& box) {
  t.params.emplace_back("eta_min", box.eta_min());
  t.params.emplace_back("eta_max", box.eta_max());
  t.params.emplace_back("nb_min", box.nb_min());
  t.params.emplace_back("nb_max", box.nb_max());
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void emit_table(const Table& table, Format format, std::ostream& out) {
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("row width does not match the " + table.schema + " header");
    }
  }
  if (format == Format::kCsv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_csv(row[i]);
      out << '\n';
    }
    return;
  }

  Json doc;
  doc["schema"] = table.schema;
  Json params = Json::object();
  for (const auto& [key, value] : table.params) params[key] = cell_json(value);
  doc["params"] = std::move(params);
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

std::vector<ScenarioPreset> builtin_presets() {
  return {
      {"nighttime-fso", make_box_explicit(0.90, 0.98, 0.02, 0.12), 100'000'000, 0.05},
      {"short-fiber", make_box_explicit(0.80, 0.90, 0.001, 0.02), 100'000'000, 0.05},
  };
}

Table worked_examples_table(std::span<const ScenarioPreset> presets) {
  Table t{"worked-examples",
          {"scenario", "eta_min", "eta_max", "nb_min", "nb_max", "n", "delta", "c_cov_rob",
           "p_worst", "r_worst", "m_rob"},
          {},
          {}};
  for (const auto& p : presets) {
    const auto plan = robust_plan(p.box, PolicyParams(p.n, p.delta));
    t.rows.push_back({p.name, p.box.eta_min(), p.box.eta_max(), p.box.nb_min(), p.box.nb_max(),
                      count(p.n), p.delta, plan.c_cov_rob, plan.p_worst, plan.r_rob, plan.m_rob});
  }
  return t;
}

Table bound_table(const UncertaintyBox& box, const PolicyParams& policy) {
  const auto plan = robust_plan(box, policy);
  Table t{"bound",
          {"eta_min", "eta_max", "nb_min", "nb_max", "c_cov_rob", "p_worst", "q_rob", "r_rob",
           "m_rob"},
          {},
          {}};
  add_policy(t, policy);
  t.rows.push_back({box.eta_min(), box.eta_max(), box.nb_min(), box.nb_max(), plan.c_cov_rob,
                    plan.p_worst, plan.q_rob, plan.r_rob, plan.m_rob});
  return t;
}

Table naive_compare_table(const UncertaintyBox& box, const ChannelParams& nominal,
                          const PolicyParams& policy) {
  const auto verdict = naive_feasibility(box, nominal, policy);
  const auto plan = robust_plan(box, policy);
  Table t{"naive-compare",
          {"q_nom", "r_nom", "scheduled_payload", "guaranteed_payload", "feasible",
           "covertness_witness", "cov_witness_eta", "cov_witness_nb", "reliability_witness",
           "rel_witness_eta", "rel_witness_nb", "m_rob"},
          {},
          {}};
  add_nominal(t, nominal);
  add_box(t, box);
  add_policy(t, policy);
  auto coord = [](const std::optional<ChannelParams>& w, bool eta) -> Cell {
    if (!w) return std::monostate{};
    return eta ? w->eta() : w->n_bar_b();
  };
  const auto& cw = verdict.covertness_witness;
  const auto& rw = verdict.reliability_witness;
  t.rows.push_back({verdict.plan.q_nom, verdict.plan.r_nom, verdict.plan.scheduled_payload,
                    verdict.guaranteed_payload, flag(verdict.feasible), flag(cw.has_value()),
                    coord(cw, true), coord(cw, false), flag(rw.has_value()), coord(rw, true),
                    coord(rw, false), plan.m_rob});
  return t;
}

Table cliff_table(const ChannelParams& nominal) {
  const auto cliff = solve_cliff(nominal);
  Table t{"cliff", {"eta0", "nb0", "p_crit", "u_crit"}, {}, {}};
  t.rows.push_back({nominal.eta(), nominal.n_bar_b(), cliff.p_crit, opt(cliff.u_crit)});
  return t;
}

Table tax_table(const UncertaintyBox& box, const PolicyParams& policy) {
  const auto tax = security_tax(box, policy);
  Table t{"tax", {"m_rob", "m_aligned", "tax_fraction", "post_cliff_convention"}, {}, {}};
  add_box(t, box);
  add_policy(t, policy);
  t.rows.push_back({tax.m_rob, tax.m_aligned, tax.tax_fraction, flag(tax.post_cliff_convention)});
  return t;
}

Table tax_sweep_table(const ChannelParams& nominal, std::span<const double> us,
                      const PolicyParams& policy) {
  Table t{"tax-sweep", {"u", "m_rob", "m_aligned", "tax_fraction", "post_cliff_convention"}, {}, {}};
  add_nominal(t, nominal);
  add_policy(t, policy);
  for (double u : us) {
    const auto tax = security_tax(make_box_symmetric(nominal.eta(), nominal.n_bar_b(), u), policy);
    t.rows.push_back(
        {u, tax.m_rob, tax.m_aligned, tax.tax_fraction, flag(tax.post_cliff_convention)});
  }
  return t;
}

Table map_table(const DesignMap& map, double u, const PolicyParams& policy) {
  Table t{"map", {"eta0", "nb0", "u_crit", "m_rob"}, {}, {}};
  t.params.emplace_back("u", u);
  add_policy(t, policy);
  t.params.emplace_back("grid_eta", count(map.eta_axis.count));
  t.params.emplace_back("grid_nb", count(map.nb_axis.count));
  t.rows.reserve(map.cells.size());
  for (const auto& c : map.cells) t.rows.push_back({c.eta0, c.nb0, opt(c.u_crit), opt(c.m_rob)});
  return t;
}

Table sweep_n_table(const ChannelParams& nominal, std::span<const double> u_levels,
                    std::span<const std::uint64_t> ns, double delta) {
  Table t{"sweep-n", {"n", "perfect"}, {}, {}};
  for (double u : u_levels) t.columns.push_back("m_rob_u" + format_real(u));
  add_nominal(t, nominal);
  t.params.emplace_back("delta", delta);
  for (const auto& row : sweep_payload_vs_n(nominal, u_levels, ns, delta)) {
    std::vector<Cell> cells{count(row.n), row.perfect};
    for (double m : row.robust) cells.emplace_back(m);
    t.rows.push_back(std::move(cells));
  }
  return t;
}

Table sweep_u_table(const ChannelParams& nominal, std::span<const double> us,
                    const PolicyParams& policy) {
  Table t{"sweep-u", {"u", "m_rob"}, {}, {}};
  add_nominal(t, nominal);
  add_policy(t, policy);
  for (const auto& row : sweep_payload_vs_u(nominal, us, policy)) t.rows.push_back({row.u, row.m_rob});
  return t;
}

Table asym_compare_table(const ChannelParams& nominal, const AsymmetricMargins& asym,
                         std::span<const double> us, const PolicyParams& policy) {
  const auto cmp = compare_sym_asym(nominal, asym, us, policy);
  Table t{"asym-compare", {"u", "symmetric", "asymmetric"}, {}, {}};
  add_nominal(t, nominal);
  add_policy(t, policy);
  t.params.emplace_back("a", asym.a);
  t.params.emplace_back("b", asym.b);
  t.params.emplace_back("c", asym.c);
  t.params.emplace_back("d", asym.d);
  t.params.emplace_back("crossing_u", opt(cmp.crossing_u));
  for (const auto& row : cmp.rows) t.rows.push_back({row.u, row.symmetric, row.asymmetric});
  return t;
}

Table chi2_converge_table(double eta, double nbar, std::span<const int> cutoffs) {
  Table t{"chi2-converge", {"cutoff", "chi2_sim", "abs_err", "rel_err_pct"}, {}, {}};
  t.params.emplace_back("eta", eta);
  t.params.emplace_back("nbar", nbar);
  t.params.emplace_back("chi2_analytic", fock::chi2_coefficient_analytic(eta, nbar));
  for (const auto& r : fock::convergence_sweep(eta, nbar, cutoffs)) {
    t.rows.push_back({std::int64_t{r.cutoff}, r.chi2_sim, r.abs_err, r.rel_err_pct});
  }
  return t;
}

}  // namespace covq::report
