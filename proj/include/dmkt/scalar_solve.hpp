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

#ifndef DMKT_SCALAR_SOLVE_HPP
#define DMKT_SCALAR_SOLVE_HPP

#include <functional>

#include "dmkt/params.hpp"

namespace dmkt {

using ScalarFunction = std::function<double(double)>;

struct ScalarMax {
  double argmax = 0.0;
  double value = 0.0;
};

/// Global maximum of f over [s.lo, s.hi]: a scan of s.grid_n + 1 equispaced
/// points picks the best bracket (ties go to the smaller argument), then
/// golden-section search narrows it to s.tol_x. The result is never worse
/// than the best grid point. Throws SolverError on a non-finite objective.
ScalarMax maximize_scalar(const ScalarFunction& f, const SolveSettings& s);

/// As above, but the bracket is refined on the sign of the supplied
/// derivative (bisection plus a closing secant step). Value comparisons stop
/// resolving the argmax near sqrt(machine epsilon); the derivative does not,
/// which keeps best-response maps smooth enough for tight fixed points.
/// Falls back to golden section when the bracket does not straddle a root.
ScalarMax maximize_scalar(const ScalarFunction& f, const ScalarFunction& df,
                          const SolveSettings& s);

/// Golden-section maximisation of a unimodal f on [a, b] down to tol.
ScalarMax golden_section_max(const ScalarFunction& f, double a, double b,
                             double tol);

struct FixedPointReport {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  // max |change| of either strategy, last iteration
};

struct FixedPoint {
  double x1 = 0.0;
  double x2 = 0.0;
  FixedPointReport report;
};

/// Damped simultaneous best-response iteration
///   x <- (1 - damping) x + damping BR(x)
/// from `x1_init, x2_init` until the residual drops to s.tol_fp or s.max_iter
/// is reached. Non-convergence is reported, not thrown.
FixedPoint best_response_fixed_point(const ScalarFunction& br1,
                                     const ScalarFunction& br2,
                                     double x1_init, double x2_init,
                                     const SolveSettings& s);

}  // namespace dmkt

#endif  // DMKT_SCALAR_SOLVE_HPP
