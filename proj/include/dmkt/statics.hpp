// Copyright 2026 The dmkt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Comparative statics over c0, delta or F. Both Stage-0 branches are solved
// at every grid point, whichever one the incumbent ends up choosing.

#ifndef DMKT_STATICS_HPP
#define DMKT_STATICS_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dmkt/econ.hpp"
#include "dmkt/params.hpp"
#include "dmkt/spne.hpp"

namespace dmkt {

enum class SweepParameter { C0, Delta, F };

std::string_view to_string(SweepParameter p);
/// Accepts "c0", "delta" or "F"; throws ConfigError("param", ...).
SweepParameter sweep_parameter_from_string(std::string_view s);

/// {3/6, 4/6, 5/6, 6/6} for c0, {0, 1, 2, 3, 4} for delta, the three entry
/// cost levels for F. With dense_points >= 2, that many equispaced points
/// over the same range instead.
std::vector<double> default_grid(SweepParameter p, int dense_points = 0);

/// Low, medium and high entry costs.
std::vector<double> default_f_levels();

struct SweepSpec {
  SweepParameter parameter = SweepParameter::C0;
  std::vector<double> grid;
  std::vector<double> f_levels;  // ignored when parameter == F
  MarketParams base;
  GameSettings settings;
  int threads = 0;  // 0 = hardware concurrency

  /// Throws ConfigError: empty or non-increasing grid, empty f_levels, or a
  /// value the market parameters reject.
  void validate() const;
};

struct SweepRow {
  double param_value = 0.0;
  double F = 0.0;

  std::optional<Regime> regime;  // empty when the row failed
  std::string error;

  std::optional<DeterrenceResult> deterrence;
  std::optional<AccommodationResult> accommodation;
  double d0_mon = 0.0;

  // chosen path
  double d0 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double w = 0.0;
  double w0 = 0.0;
  AgentProfits profits;

  // each branch followed to the end, for branch comparisons
  std::optional<AgentProfits> profits_det;
  std::optional<AgentProfits> profits_acc;

  // strategic effects at d0_acc when accommodation is feasible, else d0_det
  std::optional<double> sed;
  std::optional<double> sea;
  std::optional<double> slope_br1;
  std::optional<double> slope_br2;
  std::optional<double> direct_effect;
  std::string diagnostics_error;
  int invalid_points = 0;
};

/// One row per (F level, grid value), F-major, each block in grid order.
/// Per-row failures are recorded in the row; the sweep carries on.
/// Rows are solved independently, optionally on several threads; the
/// output does not depend on the thread count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Solves a single sweep point.
SweepRow solve_row(const MarketParams& params, double param_value,
                   const GameSettings& settings);

struct WelfareFinding {
  std::size_t row = 0;
  bool applicable = false;  // both branches feasible
  double sw_deter = 0.0;
  double sw_accommodate = 0.0;
  double sw_difference = 0.0;    // deter - accommodate
  bool d2_prefers_accommodation = false;   // pi2_acc >= 0 = pi2_det
  bool p1_prefers_accommodation = false;
  bool p0_prefers_deterrence = false;
  bool d1_prefers_deterrence = false;
};

std::vector<WelfareFinding> welfare_comparison(const std::vector<SweepRow>& rows);

inline constexpr std::string_view kSweepCsvHeader =
    "param_value,F,regime,d0_det,d0_acc,d0_mon,pi1_det,pi1_acc,pi2,pi_p1,"
    "pi_p0,sw_det,sw_acc,sed,sea,slope_br2";

/// Shortest round-trip decimal representation, locale independent.
std::string format_double(double x);

/// Writes the header and the given rows. Infeasible branches and missing
/// diagnostics are empty fields.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Distinct F values of the rows, in first-seen order.
std::vector<double> sweep_f_levels(const std::vector<SweepRow>& rows);

/// Rows whose F equals `f` exactly.
std::vector<SweepRow> rows_for_f(const std::vector<SweepRow>& rows, double f);

/// "sweep_<param>_F<value>.csv", or "sweep_F.csv" for an F sweep.
std::string sweep_csv_name(SweepParameter p, double f);

}  // namespace dmkt

#endif  // DMKT_STATICS_HPP
