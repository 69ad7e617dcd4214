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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "covq/planner.hpp"
#include "covq/report.hpp"

namespace covq::cli {

enum class Command {
  kBound,
  kNaiveCompare,
  kCliff,
  kTax,
  kMap,
  kSweepN,
  kSweepU,
  kAsymCompare,
  kChi2Converge,
  kWorkedExamples,
};

struct ExplicitBox {
  double eta_min, eta_max, nb_min, nb_max;
};

using BoxSpec = std::variant<SymmetricMargin, AsymmetricMargins, ExplicitBox>;

struct Range {
  double lo;
  double hi;
};

/// Defaults: eta0 = 0.9, nb0 = 0.12, delta = 0.05, n = 1e8, u = 0.05.
struct RunConfig {
  Command command = Command::kBound;
  double eta0 = 0.9;
  double nb0 = 0.12;
  BoxSpec box = SymmetricMargin{0.05};
  std::uint64_t n = 100'000'000;
  double delta = 0.05;
  std::size_t grid_eta = 61;
  std::size_t grid_nb = 61;
  Range eta_range{0.75, 0.99};
  Range nb_range{0.01, 0.30};
  std::vector<int> cutoffs{3, 4, 5, 6, 7, 8, 9, 10};
  std::optional<Range> u_range;
  Range n_range{1e6, 1e10};
  std::optional<std::size_t> points;
  std::vector<double> u_levels{0.01, 0.02, 0.05};
  std::optional<std::string> out_path;
  report::Format format = report::Format::kCsv;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr std::size_t kMapCellCap = 1'000'000;
inline constexpr std::size_t kMapCellWarn = 10'000;

/// Thrown for malformed flag values; maps to exit code 2.
class UsageError : public DomainError {
 public:
  using DomainError::DomainError;
};

std::optional<Command> parse_command(const std::string& name);

/// Builds the table a config asks for. Throws DomainError / QOutOfRange on
/// invalid parameters.
report::Table build_table(const RunConfig& config, std::ostream& diag);

/// Builds and writes the table. Returns an exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

/// Parses argv (CLI flags over config-file values over defaults) and runs.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& diag);

}  // namespace covq::cli
