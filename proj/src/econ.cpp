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

#include "dmkt/econ.hpp"

#include <cmath>
#include <string>

#include "dmkt/error.hpp"

namespace dmkt {
namespace {

void require_nonneg(double d, const char* what) {
  if (!(d >= 0.0)) {
    throw DomainError(std::string(what) + " must be >= 0, got " +
                      std::to_string(d));
  }
}

}  // namespace

double derive_dm(double eta_max, double eta_0, double k) {
  if (!(eta_0 > 0.0) || !(eta_0 < eta_max)) {
    throw DomainError("derive_dm requires 0 < eta_0 < eta_max");
  }
  if (!(k > 0.0)) throw DomainError("derive_dm requires k > 0");
  return std::log(eta_max / eta_0 - 1.0) / k;
}

double derive_dm(const MarketParams& params) {
  return derive_dm(params.eta_max(), params.eta_0(), params.k());
}

ScaleCurve::ScaleCurve(const MarketParams& params)
    : eta_max_(params.eta_max()), k_(params.k()), dm_(derive_dm(params)) {}

double ScaleCurve::value(double d) const {
  require_nonneg(d, "scale argument");
  return eta_max_ / (1.0 + std::exp(-k_ * (d - dm_)));
}

double ScaleCurve::slope(double d) const {
  const double v = value(d);
  return k_ * v * (1.0 - v / eta_max_);
}

double scale_value(const ScaleCurve& curve, double d) { return curve.value(d); }

double scope_value(const MarketParams& params, double d1, double d2) {
  require_nonneg(d1, "scope argument d1");
  require_nonneg(d2, "scope argument d2");
  const double q = 1.0 + params.delta();
  const double p = 1.0 / q;
  return std::pow(std::pow(d1 + 1.0, p) + std::pow(d2 + 1.0, p), q) - 1.0;
}

double scope_partial(const MarketParams& params, double d1, double d2) {
  require_nonneg(d1, "scope argument d1");
  require_nonneg(d2, "scope argument d2");
  const double q = 1.0 + params.delta();
  const double p = 1.0 / q;
  const double inner = std::pow(d1 + 1.0, p) + std::pow(d2 + 1.0, p);
  // q * inner^(q-1) * p * (d2+1)^(p-1), with q p = 1
  return std::pow(inner, params.delta()) * std::pow(d2 + 1.0, p - 1.0);
}

double inverse_supply(double cost_coeff, double d) {
  require_nonneg(d, "supplied quantity");
  return 2.0 * cost_coeff * d;
}

double producer_profit(double cost_coeff, double w, double d) {
  require_nonneg(d, "supplied quantity");
  if (!(w >= 0.0)) throw DomainError("unit price must be >= 0");
  return w * d - cost_coeff * d * d;
}

double social_welfare(double pi1, double pi2, double pi_p1, double pi_p0) {
  double sw = pi1;
  sw += pi2;
  sw += pi_p1;
  sw += pi_p0;
  return sw;
}

AgentProfits aggregator_profits(const MarketParams& params, double d0,
                                double d1, double d2, bool entered) {
  require_nonneg(d0, "d0");
  require_nonneg(d1, "d1");
  require_nonneg(d2, "d2");
  if (!entered) d2 = 0.0;

  const ScaleCurve curve(params);
  const double supplied = d1 + d2;
  const double w = inverse_supply(params.c(), supplied);
  const double w0 = inverse_supply(params.c0(), d0);

  AgentProfits out;
  out.pi1 = curve.value(scope_value(params, d0, d1)) - w * d1 - w0 * d0;
  out.pi2 = entered ? curve.value(d2) - w * d2 - params.F() : 0.0;
  out.pi_p1 = producer_profit(params.c(), w, supplied);
  out.pi_p0 = producer_profit(params.c0(), w0, d0);
  out.sw = social_welfare(out.pi1, out.pi2, out.pi_p1, out.pi_p0);
  return out;
}

}  // namespace dmkt
