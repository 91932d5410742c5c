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

#include "dmkt/spne.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "dmkt/error.hpp"

namespace dmkt {
namespace {

constexpr double kInvalid = std::numeric_limits<double>::lowest();

double d1_duopsony_slope(const MarketParams& p, const ScaleCurve& curve,
                         double d0, double d1, double d2) {
  const double eo = scope_value(p, d0, d1);
  return curve.slope(eo) * scope_partial(p, d0, d1) -
         2.0 * p.c() * (2.0 * d1 + d2);
}

double d2_duopsony_slope(const MarketParams& p, const ScaleCurve& curve,
                         double d1, double d2) {
  return curve.slope(d2) - 2.0 * p.c() * (d1 + 2.0 * d2);
}

double p0_payment(const MarketParams& p, double d0) {
  return inverse_supply(p.c0(), d0) * d0;
}

// One candidate of a constrained Stage-0 search. Feasible iff valid and
// slack >= 0.
struct Candidate {
  double d0 = 0.0;
  double value = kInvalid;
  double slack = -1.0;
  bool valid = false;

  bool feasible() const { return valid && slack >= 0.0; }
};

using CandidateEval = std::function<Candidate(double)>;

Candidate bisect_boundary(Candidate inside, Candidate outside,
                          const CandidateEval& eval, double tol) {
  while (std::abs(inside.d0 - outside.d0) > tol) {
    const Candidate mid = eval(0.5 * (inside.d0 + outside.d0));
    if (mid.feasible()) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return inside;
}

// Maximises value over the feasible part of a scanned interval. Every
// contiguous feasible run contributes its refined end points and a golden
// refinement around each local maximum of the run.
std::optional<Candidate> constrained_max(const std::vector<Candidate>& grid,
                                         const CandidateEval& eval,
                                         const ScalarFunction& value,
                                         double tol) {
  std::optional<Candidate> best;
  auto offer = [&](const Candidate& c) {
    if (!c.feasible()) return;
    if (!best || c.value > best->value ||
        (c.value == best->value && c.d0 < best->d0)) {
      best = c;
    }
  };

  const int n = static_cast<int>(grid.size());
  int i = 0;
  while (i < n) {
    if (!grid[i].feasible()) {
      ++i;
      continue;
    }
    const int first = i;
    while (i + 1 < n && grid[i + 1].feasible()) ++i;
    const int last = i;
    ++i;

    Candidate lower = grid[first];
    if (first > 0 && grid[first - 1].valid) {
      lower = bisect_boundary(grid[first], grid[first - 1], eval, tol);
    }
    Candidate upper = grid[last];
    if (last + 1 < n && grid[last + 1].valid) {
      upper = bisect_boundary(grid[last], grid[last + 1], eval, tol);
    }
    offer(lower);
    offer(upper);

    for (int j = first; j <= last; ++j) {
      const bool left_ok = j == first || grid[j].value >= grid[j - 1].value;
      const bool right_ok = j == last || grid[j].value >= grid[j + 1].value;
      if (!left_ok || !right_ok) continue;
      offer(grid[j]);
      const double a = j == first ? lower.d0 : grid[j - 1].d0;
      const double b = j == last ? upper.d0 : grid[j + 1].d0;
      if (b - a <= tol) continue;
      const ScalarMax refined = golden_section_max(value, a, b, tol);
      offer(eval(refined.argmax));
    }
  }
  return best;
}

Candidate deterrence_candidate(const Stage0Point& pt, double eps_det) {
  return {pt.d0, pt.monopsony.pi1, -eps_det - pt.duopsony.pi2, pt.valid()};
}

Candidate accommodation_candidate(const Stage0Point& pt) {
  return {pt.d0, pt.valid() ? pt.duopsony.pi1 : kInvalid, pt.duopsony.pi2,
          pt.valid()};
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Blockade:
      return "Blockade";
    case Regime::Deter:
      return "Deter";
    case Regime::Accommodate:
      return "Accommodate";
  }
  return "?";
}

Regime regime_from_string(std::string_view s) {
  if (s == "Blockade") return Regime::Blockade;
  if (s == "Deter") return Regime::Deter;
  if (s == "Accommodate") return Regime::Accommodate;
  throw std::invalid_argument("unknown regime '" + std::string(s) + "'");
}

double quantity_bound(const MarketParams& params, const GameSettings& s) {
  const double dm = derive_dm(params);
  return s.hi_factor * (dm > 0.0 ? dm : 1.0 / params.k());
}

double d1_duopsony_profit(const MarketParams& p, double d0, double d1,
                          double d2) {
  const ScaleCurve curve(p);
  return curve.value(scope_value(p, d0, d1)) -
         inverse_supply(p.c(), d1 + d2) * d1 - p0_payment(p, d0);
}

double d2_duopsony_profit(const MarketParams& p, double d1, double d2) {
  const ScaleCurve curve(p);
  return curve.value(d2) - inverse_supply(p.c(), d1 + d2) * d2 - p.F();
}

double best_response_d1(const MarketParams& p, double d0, double d2,
                        const GameSettings& s) {
  const ScaleCurve curve(p);
  const double fixed = p0_payment(p, d0);
  auto f = [&](double d1) {
    return curve.value(scope_value(p, d0, d1)) - 2.0 * p.c() * (d1 + d2) * d1 -
           fixed;
  };
  auto df = [&](double d1) {
    return d1_duopsony_slope(p, curve, d0, d1, d2);
  };
  return maximize_scalar(f, df, s.scalar(0.0, quantity_bound(p, s))).argmax;
}

double best_response_d2(const MarketParams& p, double d1,
                        const GameSettings& s) {
  const ScaleCurve curve(p);
  auto f = [&](double d2) {
    return curve.value(d2) - 2.0 * p.c() * (d1 + d2) * d2 - p.F();
  };
  auto df = [&](double d2) { return d2_duopsony_slope(p, curve, d1, d2); };
  return maximize_scalar(f, df, s.scalar(0.0, quantity_bound(p, s))).argmax;
}

MonopsonyOutcome solve_monopsony(const MarketParams& p, double d0,
                                 const GameSettings& s) {
  if (!(d0 >= 0.0)) throw DomainError("d0 must be >= 0");
  s.validate();
  const ScaleCurve curve(p);
  const double fixed = p0_payment(p, d0);
  auto f = [&](double d1) {
    return curve.value(scope_value(p, d0, d1)) - 2.0 * p.c() * d1 * d1 - fixed;
  };
  auto df = [&](double d1) {
    const double eo = scope_value(p, d0, d1);
    return curve.slope(eo) * scope_partial(p, d0, d1) - 4.0 * p.c() * d1;
  };
  const ScalarMax m = maximize_scalar(f, df, s.scalar(0.0, quantity_bound(p, s)));
  return {m.argmax, inverse_supply(p.c(), m.argmax), m.value};
}

DuopsonyEquilibrium solve_duopsony(const MarketParams& p, double d0,
                                   const GameSettings& s) {
  if (!(d0 >= 0.0)) throw DomainError("d0 must be >= 0");
  s.validate();
  const double hi = quantity_bound(p, s);
  auto br1 = [&](double d2) { return best_response_d1(p, d0, d2, s); };
  auto br2 = [&](double d1) { return best_response_d2(p, d1, s); };
  const FixedPoint fp =
      best_response_fixed_point(br1, br2, 0.0, 0.0, s.scalar(0.0, hi));

  DuopsonyEquilibrium eq;
  eq.d1 = fp.x1;
  eq.d2 = fp.x2;
  eq.w = inverse_supply(p.c(), eq.d1 + eq.d2);
  eq.pi1 = d1_duopsony_profit(p, d0, eq.d1, eq.d2);
  eq.pi2 = d2_duopsony_profit(p, eq.d1, eq.d2);
  eq.report = fp.report;
  return eq;
}

bool entry_decision(const DuopsonyEquilibrium& eq) { return eq.pi2 >= 0.0; }

Stage0Point evaluate_stage0(const MarketParams& p, double d0,
                            const GameSettings& s) {
  return {d0, solve_monopsony(p, d0, s), solve_duopsony(p, d0, s)};
}

Stage0Scan scan_stage0(const MarketParams& p, const GameSettings& s) {
  s.validate();
  const double hi = quantity_bound(p, s);
  Stage0Scan scan;
  scan.points.reserve(s.stage0_grid_n + 1);
  for (int i = 0; i <= s.stage0_grid_n; ++i) {
    const double d0 = i == s.stage0_grid_n ? hi : hi * i / s.stage0_grid_n;
    scan.points.push_back(evaluate_stage0(p, d0, s));
    if (!scan.points.back().valid()) ++scan.invalid_points;
  }
  return scan;
}

ScalarMax solve_unconstrained_d0(const MarketParams& p, const GameSettings& s) {
  s.validate();
  const ScaleCurve curve(p);
  auto f = [&](double d0) { return solve_monopsony(p, d0, s).pi1; };
  // Envelope theorem: d1m's own first-order condition removes its response.
  auto df = [&](double d0) {
    const double d1 = solve_monopsony(p, d0, s).d1m;
    return curve.slope(scope_value(p, d0, d1)) * scope_partial(p, d1, d0) -
           4.0 * p.c0() * d0;
  };
  SolveSettings outer = s.scalar(0.0, quantity_bound(p, s));
  outer.grid_n = s.stage0_grid_n;
  return maximize_scalar(f, df, outer);
}

std::optional<DeterrenceResult> solve_deterrence(const MarketParams& p,
                                                 const GameSettings& s) {
  return solve_deterrence(p, scan_stage0(p, s), s);
}

std::optional<DeterrenceResult> solve_deterrence(const MarketParams& p,
                                                 const Stage0Scan& scan,
                                                 const GameSettings& s) {
  const ScalarMax unconstrained = solve_unconstrained_d0(p, s);
  const Stage0Point at_mon = evaluate_stage0(p, unconstrained.argmax, s);
  const Candidate mon = deterrence_candidate(at_mon, s.eps_det);

  DeterrenceResult r;
  r.d0_monopsony = unconstrained.argmax;
  r.pi1_monopsony = unconstrained.value;
  if (mon.feasible()) {
    r.d0 = unconstrained.argmax;
    r.pi1 = unconstrained.value;
    r.blockaded = true;
    r.pi2_counterfactual = at_mon.duopsony.pi2;
    return r;
  }

  std::vector<Candidate> grid;
  grid.reserve(scan.points.size());
  for (const auto& pt : scan.points) {
    grid.push_back(deterrence_candidate(pt, s.eps_det));
  }
  auto eval = [&](double d0) {
    return deterrence_candidate(evaluate_stage0(p, d0, s), s.eps_det);
  };
  auto value = [&](double d0) { return solve_monopsony(p, d0, s).pi1; };
  const auto best = constrained_max(grid, eval, value, s.tol_x);
  if (!best) return std::nullopt;

  r.d0 = best->d0;
  r.pi1 = best->value;
  r.blockaded = near(best->d0, unconstrained.argmax, 10.0 * s.tol_x);
  r.pi2_counterfactual = -s.eps_det - best->slack;
  return r;
}

std::optional<AccommodationResult> solve_accommodation(const MarketParams& p,
                                                       const GameSettings& s) {
  return solve_accommodation(p, scan_stage0(p, s), s);
}

std::optional<AccommodationResult> solve_accommodation(const MarketParams& p,
                                                       const Stage0Scan& scan,
                                                       const GameSettings& s) {
  std::vector<Candidate> grid;
  grid.reserve(scan.points.size());
  for (const auto& pt : scan.points) grid.push_back(accommodation_candidate(pt));
  auto eval = [&](double d0) {
    return accommodation_candidate(evaluate_stage0(p, d0, s));
  };
  auto value = [&](double d0) {
    const DuopsonyEquilibrium eq = solve_duopsony(p, d0, s);
    return eq.report.converged ? eq.pi1 : kInvalid;
  };
  const auto best = constrained_max(grid, eval, value, s.tol_x);
  if (!best) return std::nullopt;
  return AccommodationResult{best->d0, best->value, best->slack};
}

Regime choose_regime(const std::optional<DeterrenceResult>& det,
                     const std::optional<AccommodationResult>& acc) {
  if (!det && !acc) {
    throw SolverError("stage 0",
                      "neither deterrence nor accommodation is feasible "
                      "within the search bounds");
  }
  if (det && (!acc || det->pi1 >= acc->pi1)) {
    return det->blockaded ? Regime::Blockade : Regime::Deter;
  }
  return Regime::Accommodate;
}

double StageZeroOutcome::d1() const {
  if (const auto* m = std::get_if<MonopsonyOutcome>(&downstream)) return m->d1m;
  return std::get<DuopsonyEquilibrium>(downstream).d1;
}

double StageZeroOutcome::d2() const {
  if (std::holds_alternative<MonopsonyOutcome>(downstream)) return 0.0;
  return std::get<DuopsonyEquilibrium>(downstream).d2;
}

double StageZeroOutcome::w() const {
  if (const auto* m = std::get_if<MonopsonyOutcome>(&downstream)) return m->w;
  return std::get<DuopsonyEquilibrium>(downstream).w;
}

AgentProfits branch_profits(const MarketParams& p, double d0, bool entered,
                            const GameSettings& s) {
  if (entered) {
    const DuopsonyEquilibrium eq = solve_duopsony(p, d0, s);
    return aggregator_profits(p, d0, eq.d1, eq.d2, true);
  }
  const MonopsonyOutcome m = solve_monopsony(p, d0, s);
  return aggregator_profits(p, d0, m.d1m, 0.0, false);
}

StageZeroOutcome solve_spne(const MarketParams& p, const GameSettings& s) {
  s.validate();
  const Stage0Scan scan = scan_stage0(p, s);

  StageZeroOutcome out;
  out.deterrence = solve_deterrence(p, scan, s);
  out.accommodation = solve_accommodation(p, scan, s);
  out.invalid_points = scan.invalid_points;
  out.d0_monopsony = solve_unconstrained_d0(p, s).argmax;
  if (out.deterrence) out.pi1_deter = out.deterrence->pi1;
  if (out.accommodation) out.pi1_accommodate = out.accommodation->pi1;

  out.regime = choose_regime(out.deterrence, out.accommodation);
  out.entered = out.regime == Regime::Accommodate;
  out.d0 = out.entered ? out.accommodation->d0 : out.deterrence->d0;
  out.w0 = inverse_supply(p.c0(), out.d0);

  if (out.entered) {
    const DuopsonyEquilibrium eq = solve_duopsony(p, out.d0, s);
    out.downstream = eq;
    out.profits = aggregator_profits(p, out.d0, eq.d1, eq.d2, true);
    if (!eq.report.converged) {
      out.warnings.push_back("duopsony fixed point did not converge at d0*");
    }
  } else {
    const MonopsonyOutcome m = solve_monopsony(p, out.d0, s);
    out.downstream = m;
    out.profits = aggregator_profits(p, out.d0, m.d1m, 0.0, false);
  }

  const double hi = quantity_bound(p, s);
  const double edge = 10.0 * s.tol_x;
  if (near(out.d0, hi, edge)) {
    out.warnings.push_back("d0 at the upper search bound");
  }
  if (near(out.d1(), hi, edge) || near(out.d2(), hi, edge)) {
    out.warnings.push_back("downstream quantity at the upper search bound");
  }
  if (scan.invalid_points > 0) {
    out.warnings.push_back(std::to_string(scan.invalid_points) +
                           " stage-0 candidates skipped (no inner convergence)");
  }
  return out;
}

}  // namespace dmkt
