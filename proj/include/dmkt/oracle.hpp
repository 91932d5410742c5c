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

// Brute-force reference solutions. The reference routines use only the
// closed-form primitives, never the scalar or stage solvers; run_selftest is
// the harness that puts the two side by side.

#ifndef DMKT_ORACLE_HPP
#define DMKT_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "dmkt/params.hpp"

namespace dmkt::oracle {

/// d_m by bisection on eta_max / (1 + exp(k x)) = eta_0.
double bisect_dm(double eta_max, double eta_0, double k);

struct GridMax {
  double argmax = 0.0;
  double value = 0.0;
};

/// Exhaustive scan of f on lo, lo + step, ..., hi (first maximum wins).
GridMax grid_argmax(const std::function<double(double)>& f, double lo,
                    double hi, double step);

/// Monopsony d1 by exhaustive scan over [0, hi].
GridMax grid_monopsony(const MarketParams& p, double d0, double hi,
                       double step = 1e-5);

struct GridNash {
  double d1 = 0.0;
  double d2 = 0.0;
  double max_gain = 0.0;  // largest unilateral grid deviation gain
  // every grid pair whose largest deviation gain is within `slack` of the
  // minimum; more than one point signals multiple equilibria
  std::vector<std::pair<double, double>> near_equilibria;
};

/// Exhaustive grid search for the duopsony equilibrium: every grid pair is
/// scored by its largest profitable unilateral grid deviation and the pair
/// with the smallest score is returned.
GridNash grid_nash(const MarketParams& p, double d0, double hi,
                   double step = 1e-3, double slack = 1e-9);

struct DrawResult {
  MarketValues values;
  double d0 = 0.0;
  double monopsony_gap = 0.0;  // |solver - oracle| in d1m
  double duopsony_gap = 0.0;   // max coordinate distance to a grid Nash pair
  bool duopsony_converged = false;
  bool pass = false;
};

struct SelftestReport {
  std::vector<DrawResult> draws;
  double tolerance = 5e-3;
  bool pass() const;
};

/// Random parameter draws: c, c0 in [0.4, 1.2], delta in [0, 3],
/// F in [1e-5, 1e-3], d0 in [0, 1]; other constants at their defaults.
std::vector<std::pair<MarketValues, double>> random_draws(std::uint64_t seed,
                                                          int count);

/// Solver vs oracle on `count` seeded draws (monopsony step 1e-5, grid-Nash
/// step 1e-3, tolerance 5e-3 per coordinate).
SelftestReport run_selftest(std::uint64_t seed, int count,
                            const GameSettings& s = {});

}  // namespace dmkt::oracle

#endif  // DMKT_ORACLE_HPP
