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

#include <algorithm>
#include <cmath>
#include <random>

#include "dmkt/oracle.hpp"
#include "dmkt/spne.hpp"

namespace dmkt::oracle {

bool SelftestReport::pass() const {
  return !draws.empty() &&
         std::all_of(draws.begin(), draws.end(),
                     [](const DrawResult& d) { return d.pass; });
}

std::vector<std::pair<MarketValues, double>> random_draws(std::uint64_t seed,
                                                          int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> cost(0.4, 1.2);
  std::uniform_real_distribution<double> scope(0.0, 3.0);
  std::uniform_real_distribution<double> entry(1e-5, 1e-3);
  std::uniform_real_distribution<double> exclusive(0.0, 1.0);

  std::vector<std::pair<MarketValues, double>> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    MarketValues v;
    v.c = cost(rng);
    v.c0 = cost(rng);
    v.delta = scope(rng);
    v.F = entry(rng);
    out.emplace_back(v, exclusive(rng));
  }
  return out;
}

SelftestReport run_selftest(std::uint64_t seed, int count,
                            const GameSettings& s) {
  SelftestReport report;
  for (const auto& [values, d0] : random_draws(seed, count)) {
    const MarketParams p(values);
    const double hi = quantity_bound(p, s);
    DrawResult r;
    r.values = values;
    r.d0 = d0;

    const MonopsonyOutcome mon = solve_monopsony(p, d0, s);
    r.monopsony_gap = std::abs(mon.d1m - grid_monopsony(p, d0, hi).argmax);

    const DuopsonyEquilibrium eq = solve_duopsony(p, d0, s);
    r.duopsony_converged = eq.report.converged;
    const GridNash nash = grid_nash(p, d0, hi);
    auto dist = [&](double a, double b) {
      return std::max(std::abs(eq.d1 - a), std::abs(eq.d2 - b));
    };
    r.duopsony_gap = dist(nash.d1, nash.d2);
    for (const auto& [a, b] : nash.near_equilibria) {
      r.duopsony_gap = std::min(r.duopsony_gap, dist(a, b));
    }

    r.pass = r.duopsony_converged && r.monopsony_gap <= report.tolerance &&
             r.duopsony_gap <= report.tolerance;
    report.draws.push_back(r);
  }
  return report;
}

}  // namespace dmkt::oracle
