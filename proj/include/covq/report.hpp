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

// Tabular output for every command of the covq tool. Builders only call
// planner and simulator operations; no numeric logic lives here.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "covq/planner.hpp"

namespace covq::report {

enum class Format { kCsv, kJson };

/// Empty cells (monostate) render as an empty CSV field and JSON null.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> params;
};

/// Nine significant digits, printf %.9g.
std::string format_real(double value);

/// CSV: header line then one line per row, comma separated, LF endings.
/// JSON: {"schema": ..., "params": {...}, "rows": [{column: value, ...}, ...]}.
/// Throws std::invalid_argument when a row's width differs from the header.
void emit_table(const Table& table, Format format, std::ostream& out);

struct ScenarioPreset {
  std::string name;
  UncertaintyBox box;
  std::uint64_t n;
  double delta;
};

/// Nighttime free-space link and short fiber link, n = 1e8, delta = 0.05.
std::vector<ScenarioPreset> builtin_presets();

Table worked_examples_table(std::span<const ScenarioPreset> presets);
Table bound_table(const UncertaintyBox& box, const PolicyParams& policy);
Table naive_compare_table(const UncertaintyBox& box, const ChannelParams& nominal,
                          const PolicyParams& policy);
Table cliff_table(const ChannelParams& nominal);
Table tax_table(const UncertaintyBox& box, const PolicyParams& policy);
Table tax_sweep_table(const ChannelParams& nominal, std::span<const double> us,
                      const PolicyParams& policy);
Table map_table(const DesignMap& map, double u, const PolicyParams& policy);
Table sweep_n_table(const ChannelParams& nominal, std::span<const double> u_levels,
                    std::span<const std::uint64_t> ns, double delta);
Table sweep_u_table(const ChannelParams& nominal, std::span<const double> us,
                    const PolicyParams& policy);
Table asym_compare_table(const ChannelParams& nominal, const AsymmetricMargins& asym,
                         std::span<const double> us, const PolicyParams& policy);
Table chi2_converge_table(double eta, double nbar, std::span<const int> cutoffs);

}  // namespace covq::report
