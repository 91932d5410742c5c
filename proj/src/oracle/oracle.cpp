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
#include <limits>

#include "dmkt/econ.hpp"
#include "dmkt/oracle.hpp"

namespace dmkt::oracle {
namespace {

constexpr std::size_t kMaxNearEquilibria = 64;

std::vector<double> make_grid(double lo, double hi, double step) {
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> g(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g[i] = lo + step * static_cast<double>(i);
  return g;
}

}  // namespace

double bisect_dm(double eta_max, double eta_0, double k) {
  // g(x) = eta_max / (1 + exp(k x)) - eta_0 is strictly decreasing in x.
  auto g = [&](double x) { return eta_max / (1.0 + std::exp(k * x)) - eta_0; };
  double lo = -1.0, hi = 1.0;
  while (g(lo) < 0.0) lo *= 2.0;
  while (g(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

GridMax grid_argmax(const std::function<double(double)>& f, double lo,
                    double hi, double step) {
  GridMax best{lo, f(lo)};
  for (double x : make_grid(lo, hi, step)) {
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

GridMax grid_monopsony(const MarketParams& p, double d0, double hi,
                       double step) {
  const ScaleCurve curve(p);
  const double w0 = inverse_supply(p.c0(), d0);
  return grid_argmax(
      [&](double d1) {
        return curve.value(scope_value(p, d0, d1)) -
               inverse_supply(p.c(), d1) * d1 - w0 * d0;
      },
      0.0, hi, step);
}

GridNash grid_nash(const MarketParams& p, double d0, double hi, double step,
                   double slack) {
  const ScaleCurve curve(p);
  const std::vector<double> g = make_grid(0.0, hi, step);
  const std::size_t n = g.size();
  const double two_c = 2.0 * p.c();

  std::vector<double> r1(n), r2(n);
  for (std::size_t i = 0; i < n; ++i) {
    r1[i] = curve.value(scope_value(p, d0, g[i]));
    r2[i] = curve.value(g[i]);
  }
  // Constant terms (-w0 d0, -F) do not move best responses and are dropped.
  auto u1 = [&](std::size_t i, std::size_t j) {
    return r1[i] - two_c * (g[i] + g[j]) * g[i];
  };
  auto u2 = [&](std::size_t i, std::size_t j) {
    return r2[j] - two_c * (g[i] + g[j]) * g[j];
  };

  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<double> best1(n, ninf), best2(n, ninf);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      best1[j] = std::max(best1[j], u1(i, j));
      best2[i] = std::max(best2[i], u2(i, j));
    }
  }

  auto gain = [&](std::size_t i, std::size_t j) {
    return std::max(best1[j] - u1(i, j), best2[i] - u2(i, j));
  };
  double min_gain = std::numeric_limits<double>::infinity();
  std::size_t arg_i = 0, arg_j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double gij = gain(i, j);
      if (gij < min_gain) {
        min_gain = gij;
        arg_i = i;
        arg_j = j;
      }
    }
  }

  GridNash out;
  out.d1 = g[arg_i];
  out.d2 = g[arg_j];
  out.max_gain = min_gain;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (out.near_equilibria.size() >= kMaxNearEquilibria) break;
      if (gain(i, j) <= min_gain + slack) {
        out.near_equilibria.emplace_back(g[i], g[j]);
      }
    }
  }
  return out;
}

}  // namespace dmkt::oracle
