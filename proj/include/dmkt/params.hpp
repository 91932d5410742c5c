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

#ifndef DMKT_PARAMS_HPP
#define DMKT_PARAMS_HPP

#include <array>
#include <string_view>

namespace dmkt {

/// Raw exogenous constants of the data market. Defaults are the baseline
/// scenario (medium entry cost).
struct MarketValues {
  double eta_max = 1.0;     // value ceiling
  double eta_0 = 0.05;      // value with no data
  double k = 3.0;           // logistic slope
  double delta = 1.0;       // scope parameter
  double c = 2.0 / 3.0;     // P1 cost coefficient
  double c0 = 5.0 / 6.0;    // P0 cost coefficient
  double F = 0.0005;        // challenger entry cost

  friend bool operator==(const MarketValues&, const MarketValues&) = default;
};

/// Names accepted by MarketParams::with and the configuration layer.
inline constexpr std::array<std::string_view, 7> kMarketKeys = {
    "eta_max", "eta_0", "k", "delta", "c", "c0", "F"};

/// Validated market constants. Every instance satisfies
/// eta_max > 0, 0 < eta_0 < eta_max, k > 0, delta >= 0, c > 0, c0 > 0, F >= 0.
class MarketParams {
 public:
  MarketParams() : MarketParams(MarketValues{}) {}
  /// Throws ConfigError naming the first offending field.
  explicit MarketParams(const MarketValues& v);

  double eta_max() const noexcept { return v_.eta_max; }
  double eta_0() const noexcept { return v_.eta_0; }
  double k() const noexcept { return v_.k; }
  double delta() const noexcept { return v_.delta; }
  double c() const noexcept { return v_.c; }
  double c0() const noexcept { return v_.c0; }
  double F() const noexcept { return v_.F; }
  const MarketValues& values() const noexcept { return v_; }

  /// Copy with one named field replaced (and re-validated).
  MarketParams with(std::string_view key, double value) const;

  friend bool operator==(const MarketParams&, const MarketParams&) = default;

 private:
  MarketValues v_;
};

/// Reads or writes a field of MarketValues by name; throws ConfigError on an
/// unknown key.
double& market_field(MarketValues& v, std::string_view key);
double market_field(const MarketValues& v, std::string_view key);

/// Settings for one bounded scalar maximisation or best-response iteration.
struct SolveSettings {
  double lo = 0.0;
  double hi = 1.0;
  int grid_n = 400;
  double tol_x = 1e-9;
  double tol_fp = 1e-10;
  int max_iter = 500;
  double damping = 0.5;

  /// Throws ConfigError on lo >= hi, grid_n < 2, non-positive tolerances or
  /// damping outside (0, 1].
  void validate() const;
};

/// Solver knobs shared by every stage of the game.
struct GameSettings {
  int grid_n = 400;          // inner (Stage 2) coarse scan
  int stage0_grid_n = 400;   // outer scan over d0
  double tol_x = 1e-9;
  double tol_fp = 1e-10;
  int max_iter = 500;
  double damping = 0.5;
  double hi_factor = 5.0;    // quantity upper bound = hi_factor * d_m
  double eps_det = 1e-9;     // entry-proofness margin: pi2 <= -eps_det
  double fd_step = 1e-4;     // finite-difference step for diagnostics
  double dead_band = 1e-8;   // sign dead-band for diagnostics

  void validate() const;

  /// Scalar settings for a search over [lo, hi] at the inner resolution.
  SolveSettings scalar(double lo, double hi) const;

  friend bool operator==(const GameSettings&, const GameSettings&) = default;
};

inline constexpr std::array<std::string_view, 10> kSettingKeys = {
    "grid_n",  "stage0_grid_n", "tol_x",  "tol_fp",  "max_iter",
    "damping", "hi_factor",     "eps_det", "fd_step", "dead_band"};

double game_setting(const GameSettings& s, std::string_view key);
/// Integer-valued keys must carry an integral value.
void set_game_setting(GameSettings& s, std::string_view key, double value);

}  // namespace dmkt

#endif  // DMKT_PARAMS_HPP
