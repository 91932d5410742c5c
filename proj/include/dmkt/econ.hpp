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

// Closed-form primitives of the data market: value of aggregated data
// (scale and scope effects), producer supply, and profit accounting.

#ifndef DMKT_ECON_HPP
#define DMKT_ECON_HPP

#include "dmkt/params.hpp"

namespace dmkt {

/// Diminishing-return threshold d_m, the unique solution of
/// eta_max / (1 + exp(k d_m)) = eta_0, i.e. ln(eta_max/eta_0 - 1) / k.
/// Throws DomainError unless 0 < eta_0 < eta_max and k > 0.
double derive_dm(double eta_max, double eta_0, double k);
double derive_dm(const MarketParams& params);

/// Logistic scale effect eta_A(d) = eta_max / (1 + exp(-k (d - d_m))).
class ScaleCurve {
 public:
  explicit ScaleCurve(const MarketParams& params);

  double dm() const noexcept { return dm_; }
  double eta_max() const noexcept { return eta_max_; }

  /// Throws DomainError on d < 0.
  double value(double d) const;
  /// d eta_A / d d = k eta_A (1 - eta_A / eta_max).
  double slope(double d) const;

 private:
  double eta_max_;
  double k_;
  double dm_;
};

double scale_value(const ScaleCurve& curve, double d);

/// Superadditive scope effect
///   eta_O(d1, d2) = ((d1+1)^(1/(1+delta)) + (d2+1)^(1/(1+delta)))^(1+delta) - 1.
/// Note eta_O(0, 0) = 2^(1+delta) - 1. Throws DomainError on negative input.
double scope_value(const MarketParams& params, double d1, double d2);

/// Partial derivative of eta_O with respect to its second argument.
double scope_partial(const MarketParams& params, double d1, double d2);

/// Price at which a price-taking producer with cost coeff*d^2 supplies d.
double inverse_supply(double cost_coeff, double d);

/// w d - coeff d^2.
double producer_profit(double cost_coeff, double w, double d);

struct AgentProfits {
  double pi1 = 0.0;    // incumbent D1
  double pi2 = 0.0;    // challenger D2
  double pi_p1 = 0.0;  // shared producer P1
  double pi_p0 = 0.0;  // exclusive producer P0
  double sw = 0.0;     // social welfare

  friend bool operator==(const AgentProfits&, const AgentProfits&) = default;
};

/// Profits of all four agents for a given data allocation. When `entered`
/// is false the challenger's quantity is treated as zero and it earns its
/// outside option (zero). Prices are read off the producers' supply curves.
AgentProfits aggregator_profits(const MarketParams& params, double d0,
                                double d1, double d2, bool entered);

/// sw in the fixed order pi1 + pi2 + pi_p1 + pi_p0.
double social_welfare(double pi1, double pi2, double pi_p1, double pi_p0);

}  // namespace dmkt

#endif  // DMKT_ECON_HPP
