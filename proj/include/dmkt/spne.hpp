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

// Backward-induction solver for the entry game:
//
//   Stage 0   D1 buys d0 from its exclusive producer P0.
//   Stage 1   D2 enters iff its duopsony profit is >= 0.
//   Stage 2a  D1 and D2 choose d1, d2 simultaneously (Cournot duopsony).
//   Stage 2b  D1 alone chooses d1 (monopsony).
//
// Stage 0 is a bilevel problem; every candidate d0 triggers a full re-solve
// of the downstream stage.

#ifndef DMKT_SPNE_HPP
#define DMKT_SPNE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dmkt/econ.hpp"
#include "dmkt/params.hpp"
#include "dmkt/scalar_solve.hpp"

namespace dmkt {

struct MonopsonyOutcome {
  double d1m = 0.0;
  double w = 0.0;
  double pi1 = 0.0;  // includes -w0 d0
};

struct DuopsonyEquilibrium {
  double d1 = 0.0;
  double d2 = 0.0;
  double w = 0.0;
  double pi1 = 0.0;  // includes -w0 d0
  double pi2 = 0.0;  // includes -F
  FixedPointReport report;
};

enum class Regime { Blockade, Deter, Accommodate };

std::string_view to_string(Regime r);
/// Inverse of to_string; throws std::invalid_argument.
Regime regime_from_string(std::string_view s);

/// Upper bound used for every quantity search: hi_factor * d_m, or
/// hi_factor / k when d_m <= 0.
double quantity_bound(const MarketParams& params, const GameSettings& s);

// ---- Stage 2 -------------------------------------------------------------

/// D1's duopsony objective and its derivative in d1, given d0 and d2.
double d1_duopsony_profit(const MarketParams& p, double d0, double d1,
                          double d2);
double d2_duopsony_profit(const MarketParams& p, double d1, double d2);

/// Single-player best responses used by the duopsony fixed point.
double best_response_d1(const MarketParams& p, double d0, double d2,
                        const GameSettings& s = {});
double best_response_d2(const MarketParams& p, double d1,
                        const GameSettings& s = {});

MonopsonyOutcome solve_monopsony(const MarketParams& p, double d0,
                                 const GameSettings& s = {});

/// Nash equilibrium of the quantity game; non-convergence is flagged in
/// `report`, the caller decides what to do with it.
DuopsonyEquilibrium solve_duopsony(const MarketParams& p, double d0,
                                   const GameSettings& s = {});

// ---- Stage 1 -------------------------------------------------------------

/// D2 enters iff its equilibrium profit is >= 0.
bool entry_decision(const DuopsonyEquilibrium& eq);

// ---- Stage 0 -------------------------------------------------------------

/// Everything known about one candidate d0: both downstream continuations.
struct Stage0Point {
  double d0 = 0.0;
  MonopsonyOutcome monopsony;
  DuopsonyEquilibrium duopsony;
  bool valid() const { return duopsony.report.converged; }
};

Stage0Point evaluate_stage0(const MarketParams& p, double d0,
                            const GameSettings& s = {});

/// Coarse scan of Stage-0 candidates on [0, quantity_bound], shared by the
/// deterrence and accommodation searches.
struct Stage0Scan {
  std::vector<Stage0Point> points;
  int invalid_points = 0;  // inner fixed point did not converge
};

Stage0Scan scan_stage0(const MarketParams& p, const GameSettings& s = {});

struct DeterrenceResult {
  double d0 = 0.0;
  double pi1 = 0.0;            // monopsony-continuation profit at d0
  bool blockaded = false;
  double d0_monopsony = 0.0;   // unconstrained maximiser
  double pi1_monopsony = 0.0;
  double pi2_counterfactual = 0.0;  // duopsony pi2 at d0 (< 0)
};

struct AccommodationResult {
  double d0 = 0.0;
  double pi1 = 0.0;  // duopsony-continuation profit at d0
  double pi2 = 0.0;  // >= 0
};

/// Unconstrained monopsony-continuation optimum over d0 (no entry threat).
ScalarMax solve_unconstrained_d0(const MarketParams& p,
                                 const GameSettings& s = {});

/// Best d0 among those keeping the challenger out (pi2 <= -eps_det).
/// nullopt when no scanned d0 is entry-proof.
std::optional<DeterrenceResult> solve_deterrence(const MarketParams& p,
                                                 const GameSettings& s = {});
std::optional<DeterrenceResult> solve_deterrence(const MarketParams& p,
                                                 const Stage0Scan& scan,
                                                 const GameSettings& s);

/// Best d0 among those at which the challenger enters (pi2 >= 0).
std::optional<AccommodationResult> solve_accommodation(
    const MarketParams& p, const GameSettings& s = {});
std::optional<AccommodationResult> solve_accommodation(
    const MarketParams& p, const Stage0Scan& scan, const GameSettings& s);

/// Deter (or Blockade) when pi1_deter >= pi1_accommodate or accommodation is
/// infeasible; Accommodate otherwise. Throws SolverError when neither branch
/// is feasible.
Regime choose_regime(const std::optional<DeterrenceResult>& det,
                     const std::optional<AccommodationResult>& acc);

struct StageZeroOutcome {
  Regime regime = Regime::Accommodate;
  double d0 = 0.0;
  double w0 = 0.0;
  bool entered = false;
  std::variant<MonopsonyOutcome, DuopsonyEquilibrium> downstream;
  AgentProfits profits;
  std::optional<DeterrenceResult> deterrence;
  std::optional<AccommodationResult> accommodation;
  std::optional<double> pi1_deter;
  std::optional<double> pi1_accommodate;
  double d0_monopsony = 0.0;
  int invalid_points = 0;
  std::vector<std::string> warnings;

  /// Downstream quantities along the chosen path (d2 = 0 without entry).
  double d1() const;
  double d2() const;
  double w() const;
};

/// Full subgame-perfect equilibrium by backward induction.
StageZeroOutcome solve_spne(const MarketParams& p, const GameSettings& s = {});

/// Profits of every agent if D1 commits to d0 and the game continues along
/// the given branch. Used for branch-by-branch welfare comparisons.
AgentProfits branch_profits(const MarketParams& p, double d0, bool entered,
                            const GameSettings& s = {});

}  // namespace dmkt

#endif  // DMKT_SPNE_HPP
