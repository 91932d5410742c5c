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

#include <cmath>
#include <variant>

#include "doctest.h"
#include "dmkt/econ.hpp"
#include "dmkt/error.hpp"
#include "dmkt/oracle.hpp"
#include "dmkt/spne.hpp"
#include "scenarios.hpp"

namespace dmkt {
namespace {

using testing::responsive_market;

double central(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Own-variable first-order condition: |f'| small in the interior, f' <= 0
// (one-sided) at the lower corner.
void check_kkt(const std::function<double(double)>& f, double x) {
  const double h = 1e-6;
  if (x > 10.0 * h) {
    CHECK(std::abs(central(f, x, h)) <= 1e-5);
  } else {
    CHECK((f(x + h) - f(x)) / h <= 1e-5);
  }
}

void check_downstream_kkt(const MarketParams& p, const StageZeroOutcome& o) {
  if (o.entered) {
    check_kkt([&](double d1) { return d1_duopsony_profit(p, o.d0, d1, o.d2()); },
              o.d1());
    check_kkt([&](double d2) { return d2_duopsony_profit(p, o.d1(), d2); },
              o.d2());
  } else {
    const double w0d0 = inverse_supply(p.c0(), o.d0) * o.d0;
    const ScaleCurve curve(p);
    check_kkt(
        [&](double d1) {
          return curve.value(scope_value(p, o.d0, d1)) -
                 inverse_supply(p.c(), d1) * d1 - w0d0;
        },
        o.d1());
  }
}

void check_backward_induction(const MarketParams& p,
                              const StageZeroOutcome& o) {
  const GameSettings s;
  if (o.entered) {
    const auto eq = solve_duopsony(p, o.d0, s);
    CHECK(std::abs(eq.d1 - o.d1()) < 1e-8);
    CHECK(std::abs(eq.d2 - o.d2()) < 1e-8);
    CHECK(entry_decision(eq));
  } else {
    const auto m = solve_monopsony(p, o.d0, s);
    CHECK(std::abs(m.d1m - o.d1()) < 1e-8);
    CHECK_FALSE(entry_decision(solve_duopsony(p, o.d0, s)));
  }
  const AgentProfits again = aggregator_profits(p, o.d0, o.d1(), o.d2(),
                                                o.entered);
  CHECK(again == o.profits);
}

TEST_SUITE("spne") {
  TEST_CASE("regime names round-trip") {
    for (Regime r : {Regime::Blockade, Regime::Deter, Regime::Accommodate}) {
      CHECK(regime_from_string(to_string(r)) == r);
    }
    CHECK(to_string(Regime::Deter) == "Deter");
    CHECK_THROWS_AS(regime_from_string("deter"), std::invalid_argument);
  }

  TEST_CASE("quantity bound") {
    const GameSettings s;
    CHECK(quantity_bound(MarketParams(), s) == 5.0 * derive_dm(MarketParams()));
    const MarketParams flat = MarketParams().with("eta_0", 0.5);
    CHECK(quantity_bound(flat, s) == doctest::Approx(5.0 / flat.k()).epsilon(1e-15));
  }

  TEST_CASE("monopsony: cost-dominated limit") {
    const auto m = solve_monopsony(MarketParams().with("c", 1e6), 0.0);
    CHECK(m.d1m < 1e-4);
  }

  TEST_CASE("monopsony against a fine grid") {
    const MarketParams p;
    const GameSettings s;
    for (double d0 : {0.0, 0.5}) {
      const auto m = solve_monopsony(p, d0, s);
      const auto g = oracle::grid_monopsony(p, d0, quantity_bound(p, s));
      CHECK(std::abs(m.d1m - g.argmax) < 1e-4);
    }
    const MarketParams q = responsive_market(0.0);
    const auto m = solve_monopsony(q, 0.01, s);
    const auto g = oracle::grid_monopsony(q, 0.01, quantity_bound(q, s));
    CHECK(m.d1m > 0.01);
    CHECK(std::abs(m.d1m - g.argmax) < 1e-4);
  }

  TEST_CASE("monopsony profit recomposes") {
    const MarketParams p;
    const ScaleCurve curve(p);
    const double d0 = 0.5;
    const auto m = solve_monopsony(p, d0);
    const double expected = curve.value(scope_value(p, d0, m.d1m)) -
                            (4.0 / 3.0) * m.d1m * m.d1m - (5.0 / 3.0) * 0.25;
    CHECK(std::abs(m.pi1 - expected) < 1e-12);
    CHECK(std::abs(m.w - inverse_supply(p.c(), m.d1m)) < 1e-15);
  }

  TEST_CASE("duopsony: prohibitive entry cost") {
    const MarketParams p = MarketParams().with("F", 1.0);
    for (double d0 : {0.0, 0.3}) {
      const auto eq = solve_duopsony(p, d0);
      CHECK(eq.pi2 < 0.0);
      CHECK_FALSE(entry_decision(eq));
    }
  }

  TEST_CASE("duopsony against grid Nash") {
    const GameSettings s;
    for (const MarketParams& p :
         {MarketParams(), MarketParams().with("delta", 0.0),
          responsive_market(0.0)}) {
      const auto eq = solve_duopsony(p, 0.0, s);
      REQUIRE(eq.report.converged);
      const auto nash = oracle::grid_nash(p, 0.0, quantity_bound(p, s));
      double gap =
          std::max(std::abs(eq.d1 - nash.d1), std::abs(eq.d2 - nash.d2));
      for (const auto& [a, b] : nash.near_equilibria) {
        gap = std::min(gap, std::max(std::abs(eq.d1 - a), std::abs(eq.d2 - b)));
      }
      CHECK(gap < 5e-3);
    }
  }

  TEST_CASE("entry decision") {
    DuopsonyEquilibrium eq;
    eq.pi2 = 0.0;
    CHECK(entry_decision(eq));
    eq.pi2 = -1e-300;
    CHECK_FALSE(entry_decision(eq));
    CHECK(entry_decision(solve_duopsony(MarketParams().with("F", 0.0), 0.2)));
    CHECK_FALSE(
        entry_decision(solve_duopsony(MarketParams().with("F", 1.5), 0.2)));
  }

  TEST_CASE("choose_regime") {
    DeterrenceResult det;
    det.pi1 = 1.0;
    AccommodationResult acc;
    acc.pi1 = 1.0;
    CHECK(choose_regime(det, acc) == Regime::Deter);
    acc.pi1 = 1.0 + 1e-12;
    CHECK(choose_regime(det, acc) == Regime::Accommodate);
    det.blockaded = true;
    CHECK(choose_regime(det, std::nullopt) == Regime::Blockade);
    CHECK(choose_regime(std::nullopt, acc) == Regime::Accommodate);
    CHECK_THROWS_AS(choose_regime(std::nullopt, std::nullopt), SolverError);
  }

  TEST_CASE("prohibitive entry cost blockades") {
    const MarketParams p = MarketParams().with("F", 1.5);
    const auto det = solve_deterrence(p);
    REQUIRE(det.has_value());
    CHECK(det->blockaded);
    CHECK(det->d0 == det->d0_monopsony);
    CHECK(std::abs(det->d0 - solve_unconstrained_d0(p).argmax) < 1e-12);
    CHECK_FALSE(solve_accommodation(p).has_value());
    const auto o = solve_spne(p);
    CHECK(o.regime == Regime::Blockade);
    CHECK_FALSE(o.entered);
    CHECK(o.d2() == 0.0);
    CHECK(o.profits.pi2 == 0.0);
    CHECK(std::holds_alternative<MonopsonyOutcome>(o.downstream));
    check_backward_induction(p, o);
    check_downstream_kkt(p, o);
  }

  TEST_CASE("free entry is always accommodated") {
    const MarketParams p = MarketParams().with("F", 0.0);
    CHECK_FALSE(solve_deterrence(p).has_value());
    const auto o = solve_spne(p);
    CHECK(o.regime == Regime::Accommodate);
    CHECK(o.entered);
    CHECK(o.profits.pi2 >= 0.0);
  }

  TEST_CASE("unconstrained d0 matches the envelope grid") {
    for (const MarketParams& p : {MarketParams(), responsive_market(0.0)}) {
      const GameSettings s;
      const auto u = solve_unconstrained_d0(p, s);
      const auto g = oracle::grid_argmax(
          [&](double d0) { return solve_monopsony(p, d0, s).pi1; }, 0.0, 0.2,
          1e-4);
      CHECK(std::abs(u.argmax - g.argmax) < 2e-4);
      CHECK(u.value >= g.value - 1e-12);
    }
  }

  TEST_CASE("binding deterrence") {
    const MarketParams p = responsive_market(testing::kDeterF);
    const GameSettings s;
    const auto o = solve_spne(p, s);
    CHECK(o.regime == Regime::Deter);
    REQUIRE(o.deterrence.has_value());
    REQUIRE(o.accommodation.has_value());
    const auto& det = *o.deterrence;
    CHECK_FALSE(det.blockaded);
    CHECK(det.d0 < det.d0_monopsony);
    CHECK(det.pi1 < det.pi1_monopsony);
    // entry-proof, and the constraint sits on its margin
    CHECK(det.pi2_counterfactual <= -s.eps_det);
    CHECK(det.pi2_counterfactual > -s.eps_det - 1e-8);
    CHECK(solve_duopsony(p, det.d0, s).pi2 <= -s.eps_det);
    // incumbent rationality
    CHECK(det.pi1 >= o.accommodation->pi1);
    CHECK(o.pi1_deter.value() == det.pi1);
    CHECK(o.pi1_accommodate.value() == o.accommodation->pi1);
    CHECK(o.d0 == det.d0);
    CHECK_FALSE(o.entered);
    check_backward_induction(p, o);
    check_downstream_kkt(p, o);
  }

  TEST_CASE("blockade with entry still profitable elsewhere") {
    const MarketParams p = responsive_market(testing::kBlockadeF);
    const auto o = solve_spne(p);
    CHECK(o.regime == Regime::Blockade);
    REQUIRE(o.deterrence.has_value());
    CHECK(o.deterrence->blockaded);
    CHECK(o.deterrence->d0 == o.d0_monopsony);
    CHECK(o.deterrence->pi2_counterfactual < -GameSettings().eps_det);
    REQUIRE(o.accommodation.has_value());
    CHECK(o.deterrence->pi1 >= o.accommodation->pi1);
    check_backward_induction(p, o);
  }

  TEST_CASE("accommodation preferred to feasible deterrence") {
    const MarketParams p = responsive_market(testing::kAccommodateF);
    const auto o = solve_spne(p);
    CHECK(o.regime == Regime::Accommodate);
    REQUIRE(o.deterrence.has_value());
    REQUIRE(o.accommodation.has_value());
    CHECK(o.accommodation->pi1 > o.deterrence->pi1);
    CHECK(o.accommodation->pi2 >= 0.0);
    CHECK(o.profits.pi2 >= 0.0);
    CHECK(o.entered);
    CHECK(std::holds_alternative<DuopsonyEquilibrium>(o.downstream));
    check_backward_induction(p, o);
    check_downstream_kkt(p, o);
  }

  TEST_CASE("accommodation optimum is stationary in d0") {
    for (const MarketParams& p :
         {MarketParams(), responsive_market(testing::kAccommodateF)}) {
      const GameSettings s;
      const auto acc = solve_accommodation(p, s);
      REQUIRE(acc.has_value());
      const double h = 1e-4;
      REQUIRE(acc->d0 > h);
      const auto pi1 = [&](double d0) { return solve_duopsony(p, d0, s).pi1; };
      CHECK(std::abs(central(pi1, acc->d0, h)) < 1e-4);
    }
  }

  TEST_CASE("defaults: stage-0 outcome is internally consistent") {
    const MarketParams p;
    const auto o = solve_spne(p);
    CHECK(o.invalid_points == 0);
    CHECK(o.warnings.empty());
    CHECK(o.w0 == inverse_supply(p.c0(), o.d0));
    if (o.regime == Regime::Accommodate) CHECK(o.profits.pi2 >= 0.0);
    check_backward_induction(p, o);
    check_downstream_kkt(p, o);
  }

  TEST_CASE("branch profits follow each branch") {
    const MarketParams p = responsive_market(testing::kDeterF);
    const auto o = solve_spne(p);
    REQUIRE(o.deterrence.has_value());
    REQUIRE(o.accommodation.has_value());
    const auto det = branch_profits(p, o.deterrence->d0, false);
    const auto acc = branch_profits(p, o.accommodation->d0, true);
    CHECK(det.pi2 == 0.0);
    CHECK(std::abs(det.pi1 - o.deterrence->pi1) < 1e-15);
    CHECK(std::abs(acc.pi1 - o.accommodation->pi1) < 1e-15);
    CHECK(std::abs(acc.pi2 - o.accommodation->pi2) < 1e-15);
    CHECK(acc.pi2 >= det.pi2);
  }

  TEST_CASE("stage-0 scan reports every point") {
    GameSettings s;
    s.stage0_grid_n = 20;
    const auto scan = scan_stage0(MarketParams(), s);
    CHECK(scan.points.size() == 21);
    CHECK(scan.invalid_points == 0);
    CHECK(scan.points.front().d0 == 0.0);
  }
}

}  // namespace
}  // namespace dmkt
