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
#include <random>

#include "doctest.h"
#include "dmkt/econ.hpp"
#include "dmkt/error.hpp"
#include "dmkt/oracle.hpp"
#include "dmkt/params.hpp"

namespace dmkt {
namespace {

// ln(19)/3 and logistic values at d = 2 and d = 3, evaluated with 40-digit
// arithmetic.
constexpr double kDmDefault = 0.98147965972214682000300914396;
constexpr double kScaleAt2 = 0.95502200538248404315692823444;
constexpr double kScaleAt3 = 0.99766069888351031766574926987;

MarketParams with_delta(double delta) {
  return MarketParams().with("delta", delta);
}

TEST_SUITE("econ") {
  TEST_CASE("derive_dm closed form against bisection") {
    CHECK(std::abs(derive_dm(1.0, 0.5, 3.0)) < 1e-15);
    const double dm = derive_dm(1.0, 0.05, 3.0);
    CHECK(std::abs(dm - kDmDefault) < 1e-15);
    CHECK(std::abs(dm - oracle::bisect_dm(1.0, 0.05, 3.0)) < 1e-12);
    CHECK(std::abs(derive_dm(1.0, 0.05, 6.0) - dm / 2.0) < 1e-15);
    CHECK(derive_dm(MarketParams()) == dm);
  }

  TEST_CASE("derive_dm rejects invalid constants") {
    CHECK_THROWS_AS(derive_dm(1.0, 1.0, 3.0), DomainError);
    CHECK_THROWS_AS(derive_dm(1.0, 0.0, 3.0), DomainError);
    CHECK_THROWS_AS(derive_dm(1.0, 0.05, 0.0), DomainError);
    CHECK_THROWS_AS(derive_dm(1.0, 1.5, 3.0), DomainError);
  }

  TEST_CASE("scale curve values") {
    const ScaleCurve curve{MarketParams()};
    CHECK(std::abs(curve.value(0.0) - 0.05) < 1e-12);
    CHECK(std::abs(curve.value(curve.dm()) - 0.5) < 1e-15);
    CHECK(std::abs(curve.value(2.0) - kScaleAt2) < 1e-12);
    CHECK(std::abs(scale_value(curve, 3.0) - kScaleAt3) < 1e-12);
    CHECK_THROWS_AS(curve.value(-1e-9), DomainError);
  }

  TEST_CASE("scale curve slope matches central difference") {
    const ScaleCurve curve{MarketParams()};
    for (double d : {0.0, 0.3, 1.0, 2.5}) {
      const double h = 1e-6;
      const double lo = std::max(0.0, d - h);
      const double fd = (curve.value(d + h) - curve.value(lo)) / (d + h - lo);
      CHECK(std::abs(curve.slope(d) - fd) < 1e-6);
    }
  }

  TEST_CASE("scale curve: eta_A(0) = eta_0 and strictly increasing") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      MarketValues v;
      v.eta_max = 0.1 + 10.0 * u(rng);
      v.eta_0 = v.eta_max * (0.001 + 0.998 * u(rng));
      v.k = 0.1 + 20.0 * u(rng);
      const ScaleCurve curve{MarketParams(v)};
      CHECK(std::abs(curve.value(0.0) - v.eta_0) < 1e-12 * v.eta_max);
      double a = 3.0 * u(rng), b = 3.0 * u(rng);
      if (a > b) std::swap(a, b);
      if (b - a < 1e-6) b = a + 1e-3;
      CHECK(curve.value(a) <= curve.value(b));
      if (v.k * (a - curve.dm()) < 30.0) CHECK(curve.value(a) < curve.value(b));
      CHECK(curve.value(b) > 0.0);
      CHECK(curve.value(b) <= v.eta_max);
      if (v.k * (b - curve.dm()) < 30.0) CHECK(curve.value(b) < v.eta_max);
    }
  }

  TEST_CASE("scope values") {
    const MarketParams p;
    CHECK(std::abs(scope_value(p, 1.0, 1.0) - 7.0) < 1e-12);
    CHECK(std::abs(scope_value(p, 0.0, 0.0) - 3.0) < 1e-12);
    const MarketParams flat = with_delta(0.0);
    for (double a : {0.0, 0.25, 1.0, 7.5}) {
      for (double b : {0.0, 0.5, 3.0}) {
        CHECK(std::abs(scope_value(flat, a, b) - (a + b + 1.0)) < 1e-12);
      }
    }
    CHECK_THROWS_AS(scope_value(p, -0.1, 0.0), DomainError);
    CHECK_THROWS_AS(scope_value(p, 0.0, -0.1), DomainError);
  }

  TEST_CASE("scope: symmetry, floor, monotonicity") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> q(0.0, 5.0);
    std::uniform_real_distribution<double> dd(0.0, 4.0);
    for (int i = 0; i < 500; ++i) {
      const double delta = dd(rng);
      const MarketParams p = with_delta(delta);
      const double a = q(rng), b = q(rng);
      CHECK(scope_value(p, a, b) == scope_value(p, b, a));
      CHECK(scope_value(p, a, b) >= a + b + 1.0 - 1e-12);
      if (delta > 1e-3) CHECK(scope_value(p, a, b) > a + b + 1.0 + 1e-12);
      const double more = q(rng);
      CHECK(scope_value(p, a + more, b) >= scope_value(p, a, b));
      CHECK(scope_value(p, a, b + more) >= scope_value(p, a, b));
    }
  }

  TEST_CASE("scope partial matches central difference") {
    for (double delta : {0.0, 1.0, 2.5}) {
      const MarketParams p = with_delta(delta);
      for (double b : {0.1, 0.7, 2.0}) {
        const double h = 1e-6;
        const double fd =
            (scope_value(p, 0.4, b + h) - scope_value(p, 0.4, b - h)) / (2 * h);
        CHECK(std::abs(scope_partial(p, 0.4, b) - fd) < 1e-6);
      }
    }
  }

  TEST_CASE("supply prices and producer profit") {
    CHECK(std::abs(inverse_supply(2.0 / 3.0, 0.3) - 0.4) < 1e-15);
    CHECK(inverse_supply(5.0 / 6.0, 0.0) == 0.0);
    CHECK(inverse_supply(1.0, 0.5) == 1.0);
    CHECK(std::abs(producer_profit(2.0 / 3.0, 0.4, 0.3) - 0.06) < 1e-15);
    CHECK(producer_profit(3.0, 17.0, 0.0) == 0.0);
    const double w0 = inverse_supply(5.0 / 6.0, 0.6);
    CHECK(std::abs(w0 - 1.0) < 1e-15);
    CHECK(std::abs(producer_profit(5.0 / 6.0, w0, 0.6) - 0.3) < 1e-15);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int i = 0; i < 100; ++i) {
      const double c = u(rng) + 0.01, d = u(rng);
      CHECK(std::abs(producer_profit(c, inverse_supply(c, d), d) - c * d * d) <
            1e-12);
    }
  }

  TEST_CASE("aggregator profits") {
    const MarketParams p;
    const ScaleCurve curve(p);
    const AgentProfits none = aggregator_profits(p, 0.0, 0.0, 0.0, false);
    CHECK(std::abs(none.pi1 - curve.value(3.0)) < 1e-15);
    CHECK(none.pi1 == doctest::Approx(0.9977).epsilon(1e-4));
    CHECK(none.pi2 == 0.0);
    CHECK(none.sw == none.pi1);

    const AgentProfits entrant = aggregator_profits(p, 0.0, 0.0, 0.0, true);
    CHECK(std::abs(entrant.pi2 - 0.0495) < 1e-15);

    const AgentProfits out = aggregator_profits(p, 0.2, 0.1, 0.7, false);
    const AgentProfits zero = aggregator_profits(p, 0.2, 0.1, 0.0, false);
    CHECK(out == zero);
    CHECK(out.pi2 == 0.0);
  }

  TEST_CASE("aggregator profits recompose from primitives") {
    const MarketParams p;
    const ScaleCurve curve(p);
    const double d0 = 0.3, d1 = 0.2, d2 = 0.15;
    const double w = 2.0 * p.c() * (d1 + d2);
    const double w0 = 2.0 * p.c0() * d0;
    const AgentProfits a = aggregator_profits(p, d0, d1, d2, true);
    CHECK(std::abs(a.pi1 - (curve.value(scope_value(p, d0, d1)) - w * d1 -
                            w0 * d0)) < 1e-15);
    CHECK(std::abs(a.pi2 - (curve.value(d2) - w * d2 - p.F())) < 1e-15);
    CHECK(std::abs(a.pi_p1 - p.c() * (d1 + d2) * (d1 + d2)) < 1e-15);
    CHECK(std::abs(a.pi_p0 - p.c0() * d0 * d0) < 1e-15);
    CHECK(a.sw == ((a.pi1 + a.pi2) + a.pi_p1) + a.pi_p0);
    CHECK(a.sw == social_welfare(a.pi1, a.pi2, a.pi_p1, a.pi_p0));
  }

  TEST_CASE("market parameter validation names the key") {
    MarketValues v;
    v.eta_0 = 1.5;
    try {
      (void)MarketParams(v);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "eta_0");
    }
    v = MarketValues{};
    v.c = -1.0;
    CHECK_THROWS_AS(MarketParams{v}, ConfigError);
    v = MarketValues{};
    v.delta = std::nan("");
    CHECK_THROWS_AS(MarketParams{v}, ConfigError);
    CHECK_THROWS_AS(MarketParams().with("gamma", 1.0), ConfigError);
  }

  TEST_CASE("game settings validation") {
    GameSettings s;
    CHECK_NOTHROW(s.validate());
    CHECK_THROWS_AS(set_game_setting(s, "grid_n", 2.5), ConfigError);
    set_game_setting(s, "damping", 0.0);
    CHECK_THROWS_AS(s.validate(), ConfigError);
    CHECK_THROWS_AS(game_setting(s, "nope"), ConfigError);
  }
}

}  // namespace
}  // namespace dmkt
