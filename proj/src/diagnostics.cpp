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

#include "dmkt/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dmkt/econ.hpp"
#include "dmkt/error.hpp"
#include "dmkt/spne.hpp"

namespace dmkt {
namespace {

// First derivative of f at x >= 0; switches to a second-order forward
// stencil when x - h would leave the nonnegative domain.
template <class F>
double derivative(const F& f, double x, double h) {
  if (x - h >= 0.0) return (f(x + h) - f(x - h)) / (2.0 * h);
  return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
}

DuopsonyEquilibrium converged_duopsony(const MarketParams& p, double d0,
                                       const GameSettings& s) {
  DuopsonyEquilibrium eq = solve_duopsony(p, d0, s);
  if (!eq.report.converged) {
    throw SolverError("diagnostics", "duopsony did not converge at d0 = " +
                                         std::to_string(d0));
  }
  return eq;
}

struct Effects {
  double sed = 0.0;
  double sea = 0.0;
  double dd1_dd0 = 0.0;
  double dd2_dd0 = 0.0;
  double pi1_total = 0.0;
};

// Equilibrium-selection derivatives at step h.
Effects selection_effects(const MarketParams& p, double d0, double h,
                          double dpi2_dd1, double dpi1_dd2,
                          const GameSettings& s) {
  Effects e;
  auto d1_of = [&](double x) { return converged_duopsony(p, x, s).d1; };
  auto d2_of = [&](double x) { return converged_duopsony(p, x, s).d2; };
  auto pi1_of = [&](double x) { return converged_duopsony(p, x, s).pi1; };
  e.dd1_dd0 = derivative(d1_of, d0, h);
  e.dd2_dd0 = derivative(d2_of, d0, h);
  e.pi1_total = derivative(pi1_of, d0, h);
  e.sed = dpi2_dd1 * e.dd1_dd0;
  e.sea = dpi1_dd2 * e.dd2_dd0;
  return e;
}

bool disagree(double a, double b, double dead_band, double rel) {
  if (std::abs(a) < dead_band && std::abs(b) < dead_band) return false;
  return std::abs(a - b) > rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

std::string_view to_string(Taxonomy t) {
  switch (t) {
    case Taxonomy::TopDog:
      return "TopDog";
    case Taxonomy::PuppyDog:
      return "PuppyDog";
    case Taxonomy::LeanAndHungry:
      return "LeanAndHungry";
    case Taxonomy::FatCat:
      return "FatCat";
  }
  return "?";
}

std::string_view to_string(StrategyMode m) {
  return m == StrategyMode::Deterrence ? "deter" : "accommodate";
}

int banded_sign(double x, double dead_band) {
  if (x == 0.0 || std::abs(x) < dead_band) return 0;
  return x > 0.0 ? 1 : -1;
}

StrategicDiagnostics strategic_effects(const MarketParams& p, double d0,
                                       double h, const GameSettings& s,
                                       StrategyMode mode) {
  if (!(d0 >= 0.0)) throw DomainError("d0 must be >= 0");
  s.validate();
  if (h <= 0.0) h = s.fd_step;

  const DuopsonyEquilibrium eq = converged_duopsony(p, d0, s);
  StrategicDiagnostics out;
  out.d0 = d0;
  out.d1 = eq.d1;
  out.d2 = eq.d2;
  out.mode = mode;

  // Partials with the equilibrium quantities held fixed.
  out.dpi2_dd1 = derivative(
      [&](double d1) { return d2_duopsony_profit(p, d1, eq.d2); }, eq.d1, h);
  out.dpi1_dd2 = derivative(
      [&](double d2) { return d1_duopsony_profit(p, d0, eq.d1, d2); }, eq.d2,
      h);
  out.direct_effect = derivative(
      [&](double x) { return aggregator_profits(p, x, eq.d1, eq.d2, true).pi2; },
      d0, h);
  out.pi1_direct_effect = derivative(
      [&](double x) { return aggregator_profits(p, x, eq.d1, eq.d2, true).pi1; },
      d0, h);

  out.slope_br2 = derivative(
      [&](double d1) { return best_response_d2(p, d1, s); }, eq.d1, h);
  out.slope_br1 = derivative(
      [&](double d2) { return best_response_d1(p, d0, d2, s); }, eq.d2, h);

  const Effects full =
      selection_effects(p, d0, h, out.dpi2_dd1, out.dpi1_dd2, s);
  const Effects half =
      selection_effects(p, d0, 0.5 * h, out.dpi2_dd1, out.dpi1_dd2, s);
  out.sed = full.sed;
  out.sea = full.sea;
  out.dd1_dd0 = full.dd1_dd0;
  out.dd2_dd0 = full.dd2_dd0;
  out.pi1_total_derivative = full.pi1_total;
  out.ill_conditioned = disagree(full.sed, half.sed, s.dead_band, 0.1) ||
                        disagree(full.sea, half.sea, s.dead_band, 0.1);

  out.substitutes = out.slope_br2 < 0.0 && out.slope_br1 < 0.0;
  out.consistency_ok =
      banded_sign(out.sea, s.dead_band) ==
      banded_sign(out.sed, s.dead_band) * banded_sign(out.slope_br2, s.dead_band);
  try {
    out.taxonomy = classify_strategy(out, mode, s.dead_band);
  } catch (const IndeterminateError&) {
    out.taxonomy.reset();
  }
  return out;
}

Taxonomy classify_strategy(const StrategicDiagnostics& diag, StrategyMode mode,
                           double dead_band) {
  if (mode == StrategyMode::Deterrence) {
    switch (banded_sign(diag.sed, dead_band)) {
      case -1:
        return Taxonomy::TopDog;
      case 1:
        return Taxonomy::LeanAndHungry;
      default:
        throw IndeterminateError("sed inside the dead-band");
    }
  }

  const int sea = banded_sign(diag.sea, dead_band);
  if (sea == 0) throw IndeterminateError("sea inside the dead-band");
  const int s2 = banded_sign(diag.slope_br2, dead_band);
  const int s1 = banded_sign(diag.slope_br1, dead_band);
  if (s1 < 0 && s2 < 0) {
    return sea > 0 ? Taxonomy::TopDog : Taxonomy::LeanAndHungry;
  }
  if (s1 > 0 && s2 > 0) {
    return sea > 0 ? Taxonomy::FatCat : Taxonomy::PuppyDog;
  }
  throw IndeterminateError(
      "best-response slopes are neither strategic substitutes nor complements");
}

}  // namespace dmkt
