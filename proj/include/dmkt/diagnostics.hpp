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

// Strategic-effect decomposition of the incumbent's Stage-0 choice.
//
// For the challenger (deterrence view):
//   dPi2/dd0 = dPi2/dd0|direct + dPi2/dd1 * dd1*/dd0 + dPi2/dd2 * dd2*/dd0
// where the last term vanishes at the Stage-2 equilibrium; the middle term
// is the strategic effect `sed`.
//
// For the incumbent (accommodation view):
//   dPi1/dd0 = dPi1/dd0|direct + dPi1/dd1 * dd1*/dd0 + dPi1/dd2 * dd2*/dd0
// where the middle term vanishes and the last one is `sea`.
//
// Partial derivatives hold the equilibrium quantities fixed and re-evaluate
// profits; derivatives of equilibrium selections re-run the solver.

#ifndef DMKT_DIAGNOSTICS_HPP
#define DMKT_DIAGNOSTICS_HPP

#include <optional>
#include <string_view>

#include "dmkt/params.hpp"

namespace dmkt {

enum class Taxonomy { TopDog, PuppyDog, LeanAndHungry, FatCat };
enum class StrategyMode { Deterrence, Accommodation };

std::string_view to_string(Taxonomy t);
std::string_view to_string(StrategyMode m);

struct StrategicDiagnostics {
  double d0 = 0.0;
  double d1 = 0.0;  // Stage-2 equilibrium at d0
  double d2 = 0.0;

  double sed = 0.0;
  double sea = 0.0;
  double direct_effect = 0.0;  // dPi2/dd0 with (d1, d2) held fixed
  double slope_br2 = 0.0;      // dBR2/dd1
  double slope_br1 = 0.0;      // dBR1/dd2

  double dpi2_dd1 = 0.0;
  double dpi1_dd2 = 0.0;
  double dd1_dd0 = 0.0;
  double dd2_dd0 = 0.0;
  double pi1_direct_effect = 0.0;     // dPi1/dd0 with (d1, d2) held fixed
  double pi1_total_derivative = 0.0;  // along re-solved equilibria

  bool substitutes = false;      // both best-response slopes negative
  bool consistency_ok = true;    // sign(sea) == sign(sed) * sign(slope_br2)
  bool ill_conditioned = false;  // h vs h/2 estimates differ by > 10%
  std::optional<Taxonomy> taxonomy;  // nullopt inside the dead-band
  StrategyMode mode = StrategyMode::Accommodation;
};

/// Sign with a dead-band: 0 when |x| < dead_band.
int banded_sign(double x, double dead_band);

/// Finite-difference decomposition at d0 with step h (h <= 0 selects
/// s.fd_step). Uses central differences, or second-order one-sided ones when
/// a perturbed argument would leave the domain. Throws SolverError if a
/// required Stage-2 equilibrium does not converge.
StrategicDiagnostics strategic_effects(
    const MarketParams& p, double d0, double h, const GameSettings& s = {},
    StrategyMode mode = StrategyMode::Accommodation);

/// Bain / Fudenberg-Tirole posture of the incumbent.
///   Deterrence:                     sed < 0 TopDog,  sed > 0 LeanAndHungry
///   Accommodation, substitutes:     sea > 0 TopDog,  sea < 0 LeanAndHungry
///   Accommodation, complements:     sea < 0 PuppyDog, sea > 0 FatCat
/// Throws IndeterminateError when the deciding effect is inside the
/// dead-band, or when the best-response slopes are neither both negative nor
/// both positive in accommodation mode.
Taxonomy classify_strategy(const StrategicDiagnostics& diag, StrategyMode mode,
                           double dead_band = 1e-8);

}  // namespace dmkt

#endif  // DMKT_DIAGNOSTICS_HPP
