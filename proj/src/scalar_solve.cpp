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

#include "dmkt/scalar_solve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dmkt/error.hpp"

namespace dmkt {
namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2

double checked(const ScalarFunction& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw SolverError("maximize_scalar",
                      "objective is not finite at x = " + std::to_string(x));
  }
  return v;
}

struct GridScan {
  int best = 0;
  double best_x = 0.0;
  double best_value = 0.0;
  double lo_x = 0.0;  // bracket around the best grid point
  double hi_x = 0.0;
};

GridScan scan(const ScalarFunction& f, const SolveSettings& s) {
  s.validate();
  const double step = (s.hi - s.lo) / s.grid_n;
  auto at = [&](int i) { return i == s.grid_n ? s.hi : s.lo + step * i; };

  GridScan g;
  g.best_x = s.lo;
  g.best_value = checked(f, s.lo);
  for (int i = 1; i <= s.grid_n; ++i) {
    const double x = at(i);
    const double v = checked(f, x);
    if (v > g.best_value) {
      g.best = i;
      g.best_x = x;
      g.best_value = v;
    }
  }
  g.lo_x = at(std::max(g.best - 1, 0));
  g.hi_x = at(std::min(g.best + 1, s.grid_n));
  return g;
}

ScalarMax keep_better(const GridScan& g, const ScalarFunction& f, double x) {
  const double v = checked(f, x);
  if (v > g.best_value) return {x, v};
  return {g.best_x, g.best_value};
}

}  // namespace

ScalarMax golden_section_max(const ScalarFunction& f, double a, double b,
                             double tol) {
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = checked(f, x1);
  double f2 = checked(f, x2);
  while (b - a > tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = checked(f, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = checked(f, x2);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, checked(f, x)};
}

ScalarMax maximize_scalar(const ScalarFunction& f, const SolveSettings& s) {
  const GridScan g = scan(f, s);
  const ScalarMax refined = golden_section_max(f, g.lo_x, g.hi_x, s.tol_x);
  return keep_better(g, f, refined.argmax);
}

ScalarMax maximize_scalar(const ScalarFunction& f, const ScalarFunction& df,
                          const SolveSettings& s) {
  const GridScan g = scan(f, s);

  if (g.best == 0 && checked(df, s.lo) <= 0.0) {
    return {s.lo, g.best_value};
  }
  if (g.best == s.grid_n && checked(df, s.hi) >= 0.0) {
    return {s.hi, g.best_value};
  }

  double a = g.lo_x;
  double b = g.hi_x;
  double da = checked(df, a);
  double db = checked(df, b);
  if (!(da > 0.0 && db < 0.0)) {
    const ScalarMax refined = golden_section_max(f, a, b, s.tol_x);
    return keep_better(g, f, refined.argmax);
  }

  while (b - a > s.tol_x) {
    const double m = 0.5 * (a + b);
    const double dm = checked(df, m);
    if (dm > 0.0) {
      a = m;
      da = dm;
    } else {
      b = m;
      db = dm;
    }
  }
  // da > 0 > db, so the secant root lies strictly inside [a, b].
  const double x = std::clamp(a + da * (b - a) / (da - db), a, b);
  return keep_better(g, f, x);
}

FixedPoint best_response_fixed_point(const ScalarFunction& br1,
                                     const ScalarFunction& br2,
                                     double x1_init, double x2_init,
                                     const SolveSettings& s) {
  s.validate();
  FixedPoint fp{x1_init, x2_init, {}};
  const double keep = 1.0 - s.damping;
  for (int it = 1; it <= s.max_iter; ++it) {
    const double b1 = br1(fp.x2);
    const double b2 = br2(fp.x1);
    const double n1 = keep * fp.x1 + s.damping * b1;
    const double n2 = keep * fp.x2 + s.damping * b2;
    fp.report.residual = std::max(std::abs(n1 - fp.x1), std::abs(n2 - fp.x2));
    fp.report.iterations = it;
    fp.x1 = n1;
    fp.x2 = n2;
    if (!std::isfinite(fp.report.residual)) {
      throw SolverError("best_response_fixed_point",
                        "best response is not finite");
    }
    if (fp.report.residual <= s.tol_fp) {
      fp.report.converged = true;
      break;
    }
  }
  return fp;
}

}  // namespace dmkt
