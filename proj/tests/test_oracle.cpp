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
#include "dmkt/oracle.hpp"

namespace dmkt::oracle {
namespace {

TEST_SUITE("oracle") {
  TEST_CASE("bisection threshold") {
    CHECK(std::abs(bisect_dm(1.0, 0.5, 3.0)) < 1e-15);
    CHECK(std::abs(bisect_dm(1.0, 0.05, 3.0) - std::log(19.0) / 3.0) < 1e-14);
    CHECK(std::abs(bisect_dm(2.0, 1.9, 0.5) - derive_dm(2.0, 1.9, 0.5)) <
          1e-12);
  }

  TEST_CASE("grid argmax keeps the first maximum") {
    const auto g = grid_argmax([](double) { return 0.0; }, 0.0, 1.0, 0.1);
    CHECK(g.argmax == 0.0);
    const auto q = grid_argmax([](double x) { return -(x - 0.25) * (x - 0.25); },
                               0.0, 1.0, 0.05);
    CHECK(std::abs(q.argmax - 0.25) < 1e-12);
  }

  TEST_CASE("grid Nash pair admits no profitable grid deviation") {
    const MarketParams p;
    const double d0 = 0.1, hi = 0.2, step = 1e-3;
    const auto nash = grid_nash(p, d0, hi, step);
    auto u1 = [&](double a, double b) {
      return aggregator_profits(p, d0, a, b, true).pi1;
    };
    auto u2 = [&](double a, double b) {
      return aggregator_profits(p, d0, a, b, true).pi2;
    };
    const auto dev1 = grid_argmax([&](double a) { return u1(a, nash.d2); }, 0.0,
                                  hi, step);
    const auto dev2 = grid_argmax([&](double b) { return u2(nash.d1, b); }, 0.0,
                                  hi, step);
    const double gain = std::max(dev1.value - u1(nash.d1, nash.d2),
                                 dev2.value - u2(nash.d1, nash.d2));
    CHECK(gain >= -1e-15);
    CHECK(std::abs(gain - nash.max_gain) < 1e-12);
    CHECK(nash.max_gain < 1e-4);
    CHECK_FALSE(nash.near_equilibria.empty());
    CHECK(nash.near_equilibria.size() <= 64);
  }

  TEST_CASE("random draws are reproducible and in range") {
    const auto a = random_draws(42, 10);
    const auto b = random_draws(42, 10);
    REQUIRE(a.size() == 10);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].first == b[i].first);
      CHECK(a[i].second == b[i].second);
      const MarketValues& v = a[i].first;
      CHECK(v.c >= 0.4);
      CHECK(v.c <= 1.2);
      CHECK(v.c0 >= 0.4);
      CHECK(v.c0 <= 1.2);
      CHECK(v.delta >= 0.0);
      CHECK(v.delta <= 3.0);
      CHECK(v.F >= 1e-5);
      CHECK(v.F <= 1e-3);
      CHECK(a[i].second >= 0.0);
      CHECK(a[i].second <= 1.0);
    }
    CHECK_FALSE(random_draws(43, 1)[0].first == a[0].first);
  }

  TEST_CASE("self-test on a few draws") {
    const auto report = run_selftest(7, 3);
    CHECK(report.draws.size() == 3);
    CHECK(report.tolerance == 5e-3);
    CHECK(report.pass());
  }
}

}  // namespace
}  // namespace dmkt::oracle
