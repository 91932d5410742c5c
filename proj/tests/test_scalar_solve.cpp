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

#include "doctest.h"
#include "dmkt/econ.hpp"
#include "dmkt/error.hpp"
#include "dmkt/oracle.hpp"
#include "dmkt/scalar_solve.hpp"
#include "dmkt/spne.hpp"

namespace dmkt {
namespace {

SolveSettings unit_interval() {
  SolveSettings s;
  s.lo = 0.0;
  s.hi = 1.0;
  return s;
}

TEST_SUITE("scalar_solve") {
  TEST_CASE("quadratic peak") {
    const auto r = maximize_scalar(
        [](double x) { return -(x - 0.3) * (x - 0.3); }, unit_interval());
    CHECK(std::abs(r.argmax - 0.3) < 1e-8);
  }

  TEST_CASE("monotone objective lands on the upper boundary") {
    const auto r = maximize_scalar([](double x) { return x; }, unit_interval());
    CHECK(r.argmax == 1.0);
    CHECK(r.value == 1.0);
    const auto d = maximize_scalar([](double x) { return x; },
                                   [](double) { return 1.0; }, unit_interval());
    CHECK(d.argmax == 1.0);
  }

  TEST_CASE("decreasing objective lands on the lower boundary") {
    const auto d = maximize_scalar([](double x) { return -x; },
                                   [](double) { return -1.0; },
                                   unit_interval());
    CHECK(d.argmax == 0.0);
  }

  TEST_CASE("ties break toward the smaller argument") {
    const auto r =
        maximize_scalar([](double) { return 1.0; }, unit_interval());
    CHECK(r.argmax == 0.0);
  }

  TEST_CASE("monopsony-shaped objective against a fine grid") {
    const MarketParams p;
    const ScaleCurve curve(p);
    const auto f = [&](double x) {
      return curve.value(x) - (4.0 / 3.0) * x * x;
    };
    SolveSettings s;
    s.lo = 0.0;
    s.hi = 5.0 * curve.dm();
    const auto r = maximize_scalar(f, s);
    const auto g = oracle::grid_argmax(f, s.lo, s.hi, 1e-5);
    CHECK(std::abs(r.argmax - g.argmax) < 1e-4);
    CHECK(r.value >= g.value - 1e-12);

    const auto df = [&](double x) { return curve.slope(x) - (8.0 / 3.0) * x; };
    const auto rd = maximize_scalar(f, df, s);
    CHECK(std::abs(rd.argmax - g.argmax) < 1e-4);
    CHECK(std::abs(df(rd.argmax)) < 1e-8);
  }

  TEST_CASE("multimodal objective: global maximum and grid floor") {
    const auto f = [](double x) {
      return std::sin(25.0 * x) + 0.5 * x;
    };
    const SolveSettings s = unit_interval();
    const auto r = maximize_scalar(f, s);
    const auto g = oracle::grid_argmax(f, s.lo, s.hi, 1e-6);
    CHECK(std::abs(r.argmax - g.argmax) < 1e-5);
    double best_grid = -1e300;
    for (int i = 0; i <= s.grid_n; ++i) {
      best_grid = std::max(best_grid, f(s.lo + (s.hi - s.lo) * i / s.grid_n));
    }
    CHECK(r.value >= best_grid);
  }

  TEST_CASE("deterministic") {
    const auto f = [](double x) { return std::cos(7.0 * x) * x; };
    const auto a = maximize_scalar(f, unit_interval());
    const auto b = maximize_scalar(f, unit_interval());
    CHECK(a.argmax == b.argmax);
    CHECK(a.value == b.value);
  }

  TEST_CASE("non-finite objective is an error") {
    CHECK_THROWS_AS(
        maximize_scalar([](double) { return std::nan(""); }, unit_interval()),
        SolverError);
  }

  TEST_CASE("golden section on a unimodal function") {
    const auto r = golden_section_max(
        [](double x) { return -std::abs(x - 0.7); }, 0.0, 2.0, 1e-10);
    CHECK(std::abs(r.argmax - 0.7) < 1e-9);
  }

  TEST_CASE("fixed point of constant maps") {
    SolveSettings s = unit_interval();
    const auto fp = best_response_fixed_point([](double) { return 0.0; },
                                              [](double) { return 0.0; }, 0.0,
                                              0.0, s);
    CHECK(fp.x1 == 0.0);
    CHECK(fp.x2 == 0.0);
    CHECK(fp.report.converged);
    CHECK(fp.report.iterations == 1);
  }

  TEST_CASE("fixed point of linear maps") {
    SolveSettings s = unit_interval();
    // x = 0.5 - 0.25 y, y = 0.5 - 0.25 x  =>  x = y = 0.5 / 1.25 = 0.4.
    const auto fp = best_response_fixed_point(
        [](double y) { return 0.5 - 0.25 * y; },
        [](double x) { return 0.5 - 0.25 * x; }, 0.0, 0.0, s);
    CHECK(fp.report.converged);
    CHECK(std::abs(fp.x1 - 0.4) < 1e-9);
    CHECK(std::abs(fp.x2 - 0.4) < 1e-9);
    CHECK(fp.report.residual <= s.tol_fp);
  }

  TEST_CASE("non-convergence is reported, not thrown") {
    SolveSettings s = unit_interval();
    s.max_iter = 3;
    s.damping = 1.0;
    const auto fp = best_response_fixed_point(
        [](double y) { return 1.0 - y; }, [](double x) { return x; }, 0.0, 0.3,
        s);
    CHECK_FALSE(fp.report.converged);
    CHECK(fp.report.iterations == 3);
  }

  TEST_CASE("duopsony at defaults is a grid Nash equilibrium") {
    const MarketParams p;
    const GameSettings s;
    const auto eq = solve_duopsony(p, 0.0, s);
    REQUIRE(eq.report.converged);
    const auto nash = oracle::grid_nash(p, 0.0, quantity_bound(p, s));
    double gap = std::max(std::abs(eq.d1 - nash.d1), std::abs(eq.d2 - nash.d2));
    for (const auto& [a, b] : nash.near_equilibria) {
      gap = std::min(gap, std::max(std::abs(eq.d1 - a), std::abs(eq.d2 - b)));
    }
    CHECK(gap < 5e-3);
  }

  TEST_CASE("converged duopsony is a mutual best response") {
    const MarketParams p;
    const GameSettings s;
    const double d0 = 0.1;
    const auto eq = solve_duopsony(p, d0, s);
    REQUIRE(eq.report.converged);
    const double hi = quantity_bound(p, s);
    const double u1 = d1_duopsony_profit(p, d0, eq.d1, eq.d2);
    const double u2 = d2_duopsony_profit(p, eq.d1, eq.d2);
    for (double step : {-10.0 * s.tol_x, 10.0 * s.tol_x}) {
      const double x1 = eq.d1 + step, x2 = eq.d2 + step;
      if (x1 >= 0.0 && x1 <= hi) {
        CHECK(d1_duopsony_profit(p, d0, x1, eq.d2) <= u1 + 1e-8);
      }
      if (x2 >= 0.0 && x2 <= hi) {
        CHECK(d2_duopsony_profit(p, eq.d1, x2) <= u2 + 1e-8);
      }
    }
  }
}

}  // namespace
}  // namespace dmkt
