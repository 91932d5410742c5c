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

#include "dmkt/params.hpp"

#include <cmath>
#include <string>

#include "dmkt/error.hpp"

namespace dmkt {
namespace {

void require(bool ok, std::string_view key, const char* what) {
  if (!ok) throw ConfigError(std::string(key), what);
}

void require_finite(double x, std::string_view key) {
  require(std::isfinite(x), key, "must be finite");
}

}  // namespace

MarketParams::MarketParams(const MarketValues& v) : v_(v) {
  for (auto key : kMarketKeys) require_finite(market_field(v, key), key);
  require(v.eta_max > 0.0, "eta_max", "must be > 0");
  require(v.eta_0 > 0.0, "eta_0", "must be > 0");
  require(v.eta_0 < v.eta_max, "eta_0", "must be < eta_max");
  require(v.k > 0.0, "k", "must be > 0");
  require(v.delta >= 0.0, "delta", "must be >= 0");
  require(v.c > 0.0, "c", "must be > 0");
  require(v.c0 > 0.0, "c0", "must be > 0");
  require(v.F >= 0.0, "F", "must be >= 0");
}

MarketParams MarketParams::with(std::string_view key, double value) const {
  MarketValues v = v_;
  market_field(v, key) = value;
  return MarketParams(v);
}

double& market_field(MarketValues& v, std::string_view key) {
  if (key == "eta_max") return v.eta_max;
  if (key == "eta_0") return v.eta_0;
  if (key == "k") return v.k;
  if (key == "delta") return v.delta;
  if (key == "c") return v.c;
  if (key == "c0") return v.c0;
  if (key == "F") return v.F;
  throw ConfigError(std::string(key), "unknown market parameter");
}

double market_field(const MarketValues& v, std::string_view key) {
  return market_field(const_cast<MarketValues&>(v), key);
}

void SolveSettings::validate() const {
  require(std::isfinite(lo) && std::isfinite(hi), "bounds", "must be finite");
  require(lo < hi, "bounds", "lo must be < hi");
  require(grid_n >= 2, "grid_n", "must be >= 2");
  require(tol_x > 0.0, "tol_x", "must be > 0");
  require(tol_fp > 0.0, "tol_fp", "must be > 0");
  require(max_iter >= 1, "max_iter", "must be >= 1");
  require(damping > 0.0 && damping <= 1.0, "damping", "must be in (0, 1]");
}

void GameSettings::validate() const {
  require(grid_n >= 2, "grid_n", "must be >= 2");
  require(stage0_grid_n >= 2, "stage0_grid_n", "must be >= 2");
  require(tol_x > 0.0, "tol_x", "must be > 0");
  require(tol_fp > 0.0, "tol_fp", "must be > 0");
  require(max_iter >= 1, "max_iter", "must be >= 1");
  require(damping > 0.0 && damping <= 1.0, "damping", "must be in (0, 1]");
  require(hi_factor > 0.0 && std::isfinite(hi_factor), "hi_factor",
          "must be > 0");
  require(eps_det >= 0.0, "eps_det", "must be >= 0");
  require(fd_step > 0.0, "fd_step", "must be > 0");
  require(dead_band >= 0.0, "dead_band", "must be >= 0");
}

SolveSettings GameSettings::scalar(double lo, double hi) const {
  SolveSettings s;
  s.lo = lo;
  s.hi = hi;
  s.grid_n = grid_n;
  s.tol_x = tol_x;
  s.tol_fp = tol_fp;
  s.max_iter = max_iter;
  s.damping = damping;
  return s;
}

double game_setting(const GameSettings& s, std::string_view key) {
  if (key == "grid_n") return s.grid_n;
  if (key == "stage0_grid_n") return s.stage0_grid_n;
  if (key == "tol_x") return s.tol_x;
  if (key == "tol_fp") return s.tol_fp;
  if (key == "max_iter") return s.max_iter;
  if (key == "damping") return s.damping;
  if (key == "hi_factor") return s.hi_factor;
  if (key == "eps_det") return s.eps_det;
  if (key == "fd_step") return s.fd_step;
  if (key == "dead_band") return s.dead_band;
  throw ConfigError(std::string(key), "unknown solver setting");
}

void set_game_setting(GameSettings& s, std::string_view key, double value) {
  auto as_int = [&](int& slot) {
    require(std::isfinite(value) && value == std::floor(value) &&
                std::abs(value) < 1e9,
            key, "must be an integer");
    slot = static_cast<int>(value);
  };
  if (key == "grid_n") return as_int(s.grid_n);
  if (key == "stage0_grid_n") return as_int(s.stage0_grid_n);
  if (key == "max_iter") return as_int(s.max_iter);
  require_finite(value, key);
  if (key == "tol_x") { s.tol_x = value; return; }
  if (key == "tol_fp") { s.tol_fp = value; return; }
  if (key == "damping") { s.damping = value; return; }
  if (key == "hi_factor") { s.hi_factor = value; return; }
  if (key == "eps_det") { s.eps_det = value; return; }
  if (key == "fd_step") { s.fd_step = value; return; }
  if (key == "dead_band") { s.dead_band = value; return; }
  throw ConfigError(std::string(key), "unknown solver setting");
}

}  // namespace dmkt
