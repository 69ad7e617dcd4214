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

#include "covq/cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

namespace covq::cli {
namespace {

const std::map<std::string, Command>& command_names() {
  static const std::map<std::string, Command> names{
      {"bound", Command::kBound},
      {"naive-compare", Command::kNaiveCompare},
      {"cliff", Command::kCliff},
      {"tax", Command::kTax},
      {"map", Command::kMap},
      {"sweep-n", Command::kSweepN},
      {"sweep-u", Command::kSweepU},
      {"asym-compare", Command::kAsymCompare},
      {"chi2-converge", Command::kChi2Converge},
      {"worked-examples", Command::kWorkedExamples},
  };
  return names;
}

double parse_real(const std::string& text, const std::string& flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw UsageError("--" + flag + ": not a number: '" + text + "'");
  }
  return v;
}

std::uint64_t parse_count(const std::string& text, const std::string& flag) {
  const double v = parse_real(text, flag);
  if (!(v >= 1.0) || v > 9.0e18 || std::floor(v) != v) {
    throw UsageError("--" + flag + ": expected a positive integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

Range parse_range(const std::string& text, const std::string& flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--" + flag + ": expected lo:hi");
  Range r{parse_real(text.substr(0, colon), flag), parse_real(text.substr(colon + 1), flag)};
  if (r.lo > r.hi) throw UsageError("--" + flag + ": lo must not exceed hi");
  return r;
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw UsageError("--grid: expected NxM");
  return {parse_count(text.substr(0, x), "grid"), parse_count(text.substr(x + 1), "grid")};
}

std::vector<int> parse_cutoffs(const std::vector<std::string>& items) {
  std::vector<int> out;
  for (const auto& item : items) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<int>(parse_count(item, "cutoffs")));
      continue;
    }
    const auto lo = parse_count(item.substr(0, dots), "cutoffs");
    const auto hi = parse_count(item.substr(dots + 2), "cutoffs");
    if (lo > hi || hi > 64) throw UsageError("--cutoffs: bad range '" + item + "'");
    for (auto c = lo; c <= hi; ++c) out.push_back(static_cast<int>(c));
  }
  return out;
}

std::vector<double> linspace(const Range& r, std::size_t points) {
  const GridAxis axis{r.lo, r.hi, points};
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) out[i] = axis.at(i);
  return out;
}

std::vector<std::uint64_t> logspace_counts(const Range& r, std::size_t points) {
  if (!(r.lo >= 1.0)) throw UsageError("--n-range: lower end must be at least 1");
  const GridAxis axis{std::log10(r.lo), std::log10(r.hi), points};
  std::vector<std::uint64_t> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = static_cast<std::uint64_t>(std::llround(std::pow(10.0, axis.at(i))));
  }
  return out;
}

UncertaintyBox make_box(const RunConfig& c) {
  return std::visit(
      [&](const auto& spec) -> UncertaintyBox {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, SymmetricMargin>) {
          return make_box_symmetric(c.eta0, c.nb0, spec.u);
        } else if constexpr (std::is_same_v<T, AsymmetricMargins>) {
          return make_box_asymmetric(c.eta0, c.nb0, spec);
        } else {
          return make_box_explicit(spec.eta_min, spec.eta_max, spec.nb_min, spec.nb_max);
        }
      },
      c.box);
}

double symmetric_u(const RunConfig& c, const char* command) {
  if (const auto* sym = std::get_if<SymmetricMargin>(&c.box)) return sym->u;
  throw UsageError(std::string(command) + " takes a symmetric level --u, not --asym/--box");
}

std::vector<double> u_grid(const RunConfig& c) {
  return linspace(c.u_range.value_or(Range{0.0, 0.15}), c.points.value_or(201));
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  const auto& names = command_names();
  const auto it = names.find(name);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

report::Table build_table(const RunConfig& c, std::ostream& diag) {
  const ChannelParams nominal(c.eta0, c.nb0);
  const PolicyParams policy(c.n, c.delta);

  switch (c.command) {
    case Command::kBound:
      return report::bound_table(make_box(c), policy);
    case Command::kNaiveCompare:
      return report::naive_compare_table(make_box(c), nominal, policy);
    case Command::kCliff:
      return report::cliff_table(nominal);
    case Command::kTax:
      if (c.u_range) return report::tax_sweep_table(nominal, u_grid(c), policy);
      return report::tax_table(make_box(c), policy);
    case Command::kMap: {
      const std::size_t cells = c.grid_eta * c.grid_nb;
      if (cells > kMapCellCap) {
        throw UsageError("--grid: " + std::to_string(cells) + " cells exceeds the cap of " +
                         std::to_string(kMapCellCap));
      }
      if (cells > kMapCellWarn) {
        diag << "warning: design map with " << cells << " cells may take a while\n";
      }
      const double u = symmetric_u(c, "map");
      const auto map = design_map({c.eta_range.lo, c.eta_range.hi, c.grid_eta},
                                  {c.nb_range.lo, c.nb_range.hi, c.grid_nb}, u, policy);
      return report::map_table(map, u, policy);
    }
    case Command::kSweepN: {
      const auto ns = logspace_counts(c.n_range, c.points.value_or(41));
      return report::sweep_n_table(nominal, c.u_levels, ns, c.delta);
    }
    case Command::kSweepU:
      return report::sweep_u_table(nominal, u_grid(c), policy);
    case Command::kAsymCompare: {
      AsymmetricMargins asym{0.02, 0.08, 0.01, 0.12};
      if (const auto* a = std::get_if<AsymmetricMargins>(&c.box)) asym = *a;
      auto table = report::asym_compare_table(nominal, asym, u_grid(c), policy);
      for (const auto& [key, value] : table.params) {
        if (key == "crossing_u" && std::holds_alternative<double>(value)) {
          diag << "equivalent symmetric margin: u = "
               << report::format_real(std::get<double>(value)) << '\n';
        }
      }
      return table;
    }
    case Command::kChi2Converge:
      return report::chi2_converge_table(c.eta0, c.nb0, c.cutoffs);
    case Command::kWorkedExamples: {
      const auto presets = report::builtin_presets();
      return report::worked_examples_table(presets);
    }
  }
  throw UsageError("unknown command");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  report::Table table;
  try {
    table = build_table(config, diag);
  } catch (const std::invalid_argument& e) {  // DomainError, UsageError
    diag << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const QOutOfRange& e) {
    diag << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegenerateBox& e) {
    diag << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    diag << "numerical failure: " << e.what() << '\n';
    return kExitFailure;
  }

  try {
    if (config.out_path) {
      std::ofstream file(*config.out_path, std::ios::binary | std::ios::trunc);
      if (!file) {
        diag << "error: cannot open " << *config.out_path << " for writing\n";
        return kExitFailure;
      }
      report::emit_table(table, config.format, file);
      file.flush();
      if (!file) {
        diag << "error: write to " << *config.out_path << " failed\n";
        return kExitFailure;
      }
    } else {
      report::emit_table(table, config.format, out);
    }
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& diag) {
  CLI::App app{"Robust covert quantum communication planner", "covq"};

  std::string command;
  std::vector<std::string> names;
  for (const auto& [name, _] : command_names()) names.push_back(name);
  app.add_option("command", command, "What to compute")->required()->check(CLI::IsMember(names));

  RunConfig cfg;
  std::optional<double> u;
  std::vector<double> asym, box, u_levels;
  std::string n_text, grid, eta_range, nb_range, u_range, n_range, format, out_path;
  std::vector<std::string> cutoffs;
  std::optional<std::size_t> points;

  app.add_option("--eta0", cfg.eta0, "Nominal transmittance");
  app.add_option("--nb0", cfg.nb0, "Nominal mean thermal photon number");
  auto* u_opt = app.add_option("--u", u, "Symmetric relative uncertainty level");
  auto* asym_opt = app.add_option("--asym", asym, "Asymmetric margins a,b,c,d")
                       ->delimiter(',')
                       ->expected(4);
  auto* box_opt = app.add_option("--box", box, "Explicit box emin,emax,nmin,nmax")
                      ->delimiter(',')
                      ->expected(4);
  u_opt->excludes(asym_opt)->excludes(box_opt);
  asym_opt->excludes(box_opt);
  app.add_option("--n", n_text, "Channel uses per frame");
  app.add_option("--delta", cfg.delta, "Covertness parameter");
  app.add_option("--grid", grid, "Design-map grid NxM (eta x nb)");
  app.add_option("--eta-range", eta_range, "Design-map eta0 range lo:hi");
  app.add_option("--nb-range", nb_range, "Design-map nb0 range lo:hi");
  app.add_option("--cutoffs", cutoffs, "Fock cutoffs, e.g. 3..10 or 3,5,7")->delimiter(',');
  app.add_option("--u-range", u_range, "Sweep range for u, lo:hi");
  app.add_option("--n-range", n_range, "Sweep range for n, lo:hi (log spaced)");
  app.add_option("--points", points, "Number of sweep points");
  app.add_option("--u-levels", u_levels, "Uncertainty levels for sweep-n")->delimiter(',');
  app.add_option("--out", out_path, "Output file (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.set_config("--config", "", "Flat key=value configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, diag);
    diag << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    cfg.command = *parse_command(command);
    if (u) cfg.box = SymmetricMargin{*u};
    if (!asym.empty()) cfg.box = AsymmetricMargins{asym[0], asym[1], asym[2], asym[3]};
    if (!box.empty()) cfg.box = ExplicitBox{box[0], box[1], box[2], box[3]};
    if (!n_text.empty()) cfg.n = parse_count(n_text, "n");
    if (!grid.empty()) std::tie(cfg.grid_eta, cfg.grid_nb) = parse_grid(grid);
    if (!eta_range.empty()) cfg.eta_range = parse_range(eta_range, "eta-range");
    if (!nb_range.empty()) cfg.nb_range = parse_range(nb_range, "nb-range");
    if (!cutoffs.empty()) cfg.cutoffs = parse_cutoffs(cutoffs);
    if (!u_range.empty()) cfg.u_range = parse_range(u_range, "u-range");
    if (!n_range.empty()) cfg.n_range = parse_range(n_range, "n-range");
    if (points) {
      if (*points < 1) throw UsageError("--points must be at least 1");
      cfg.points = points;
    }
    if (!u_levels.empty()) cfg.u_levels = u_levels;
    if (!out_path.empty()) cfg.out_path = out_path;
    if (format == "json") cfg.format = report::Format::kJson;
  } catch (const UsageError& e) {
    diag << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  return run(cfg, out, diag);
}

}  // namespace covq::cli
