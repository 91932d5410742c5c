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

#include "dmkt.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "dmkt/diagnostics.hpp"
#include "dmkt/econ.hpp"
#include "dmkt/error.hpp"
#include "dmkt/oracle.hpp"
#include "dmkt/params.hpp"
#include "dmkt/spne.hpp"
#include "dmkt/statics.hpp"

struct dmkt_params {
  dmkt::MarketValues values;
  dmkt::GameSettings settings;
};

struct dmkt_outcome {
  dmkt::StageZeroOutcome outcome;
};

struct dmkt_sweep {
  dmkt::SweepParameter parameter;
  std::vector<dmkt::SweepRow> rows;
  std::vector<dmkt::WelfareFinding> welfare;
  std::vector<std::string> file_names;
  std::vector<std::string> file_contents;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_error_key;

dmkt_status fail(dmkt_status status, std::string message,
                 std::string key = {}) {
  g_error = std::move(message);
  g_error_key = std::move(key);
  return status;
}

// Runs body and maps exceptions to status codes.
template <class Body>
dmkt_status guarded(Body&& body) noexcept {
  try {
    return body();
  } catch (const dmkt::ConfigError& e) {
    return fail(DMKT_ERR_CONFIG, e.what(), e.key());
  } catch (const dmkt::DomainError& e) {
    return fail(DMKT_ERR_DOMAIN, e.what());
  } catch (const dmkt::SolverError& e) {
    return fail(DMKT_ERR_SOLVER, e.what());
  } catch (const dmkt::IndeterminateError& e) {
    return fail(DMKT_ERR_INDETERMINATE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DMKT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DMKT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DMKT_ERR_INTERNAL, "unknown error");
  }
}

#define DMKT_REQUIRE(ptr)                                               \
  do {                                                                  \
    if ((ptr) == nullptr) {                                             \
      return fail(DMKT_ERR_ARGUMENT, #ptr " must not be null");         \
    }                                                                   \
  } while (0)

dmkt::MarketParams market(const dmkt_params* p) {
  return dmkt::MarketParams(p->values);
}

const dmkt::GameSettings& settings(const dmkt_params* p) {
  p->settings.validate();
  return p->settings;
}

bool is_market_key(std::string_view key) {
  return std::find(dmkt::kMarketKeys.begin(), dmkt::kMarketKeys.end(), key) !=
         dmkt::kMarketKeys.end();
}

dmkt_profits to_c(const dmkt::AgentProfits& a) {
  return {a.pi1, a.pi2, a.pi_p1, a.pi_p0, a.sw};
}

dmkt_fixed_point_report to_c(const dmkt::FixedPointReport& r) {
  return {r.converged ? 1 : 0, r.iterations, r.residual};
}

int to_c(dmkt::Regime r) {
  switch (r) {
    case dmkt::Regime::Blockade:
      return DMKT_REGIME_BLOCKADE;
    case dmkt::Regime::Deter:
      return DMKT_REGIME_DETER;
    case dmkt::Regime::Accommodate:
      return DMKT_REGIME_ACCOMMODATE;
  }
  return DMKT_REGIME_NONE;
}

int to_c(dmkt::Taxonomy t) {
  switch (t) {
    case dmkt::Taxonomy::TopDog:
      return DMKT_TAXONOMY_TOP_DOG;
    case dmkt::Taxonomy::PuppyDog:
      return DMKT_TAXONOMY_PUPPY_DOG;
    case dmkt::Taxonomy::LeanAndHungry:
      return DMKT_TAXONOMY_LEAN_AND_HUNGRY;
    case dmkt::Taxonomy::FatCat:
      return DMKT_TAXONOMY_FAT_CAT;
  }
  return DMKT_TAXONOMY_INDETERMINATE;
}

dmkt::StrategyMode mode_from_c(int mode) {
  if (mode == DMKT_MODE_DETER) return dmkt::StrategyMode::Deterrence;
  if (mode == DMKT_MODE_ACCOMMODATE) return dmkt::StrategyMode::Accommodation;
  throw dmkt::ConfigError("mode", "must be DMKT_MODE_DETER or "
                                  "DMKT_MODE_ACCOMMODATE");
}

dmkt::StrategicDiagnostics from_c(const dmkt_diagnostics& d) {
  dmkt::StrategicDiagnostics out;
  out.d0 = d.d0;
  out.d1 = d.d1;
  out.d2 = d.d2;
  out.sed = d.sed;
  out.sea = d.sea;
  out.direct_effect = d.direct_effect;
  out.slope_br2 = d.slope_br2;
  out.slope_br1 = d.slope_br1;
  out.substitutes = d.substitutes != 0;
  return out;
}

dmkt_status copy_string(const std::string& s, char* buf, size_t capacity,
                        size_t* needed) {
  if (needed != nullptr) *needed = s.size() + 1;
  if (buf == nullptr || capacity < s.size() + 1) {
    return fail(DMKT_ERR_ARGUMENT, "buffer too small");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return DMKT_OK;
}

dmkt_status copy_doubles(const std::vector<double>& v, double* buf,
                         size_t capacity, size_t* count) {
  if (count != nullptr) *count = v.size();
  if (buf == nullptr || capacity < v.size()) {
    return fail(DMKT_ERR_ARGUMENT, "buffer too small");
  }
  std::copy(v.begin(), v.end(), buf);
  return DMKT_OK;
}

}  // namespace

extern "C" {

const char* dmkt_version(void) { return "0.1.0"; }

const char* dmkt_status_string(dmkt_status status) {
  switch (status) {
    case DMKT_OK:
      return "ok";
    case DMKT_ERR_ARGUMENT:
      return "invalid argument";
    case DMKT_ERR_DOMAIN:
      return "domain error";
    case DMKT_ERR_CONFIG:
      return "configuration error";
    case DMKT_ERR_SOLVER:
      return "solver error";
    case DMKT_ERR_INDETERMINATE:
      return "indeterminate";
    case DMKT_ERR_IO:
      return "i/o error";
    case DMKT_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* dmkt_last_error(void) { return g_error.c_str(); }
const char* dmkt_last_error_key(void) { return g_error_key.c_str(); }

const char* dmkt_regime_name(int regime) {
  switch (regime) {
    case DMKT_REGIME_BLOCKADE:
      return "Blockade";
    case DMKT_REGIME_DETER:
      return "Deter";
    case DMKT_REGIME_ACCOMMODATE:
      return "Accommodate";
    default:
      return "";
  }
}

const char* dmkt_taxonomy_name(int taxonomy) {
  switch (taxonomy) {
    case DMKT_TAXONOMY_TOP_DOG:
      return "TopDog";
    case DMKT_TAXONOMY_PUPPY_DOG:
      return "PuppyDog";
    case DMKT_TAXONOMY_LEAN_AND_HUNGRY:
      return "LeanAndHungry";
    case DMKT_TAXONOMY_FAT_CAT:
      return "FatCat";
    default:
      return "indeterminate";
  }
}

dmkt_status dmkt_params_create(dmkt_params** out) {
  DMKT_REQUIRE(out);
  return guarded([&] {
    *out = new dmkt_params{};
    return DMKT_OK;
  });
}

dmkt_status dmkt_params_clone(const dmkt_params* p, dmkt_params** out) {
  DMKT_REQUIRE(p);
  DMKT_REQUIRE(out);
  return guarded([&] {
    *out = new dmkt_params(*p);
    return DMKT_OK;
  });
}

void dmkt_params_destroy(dmkt_params* p) { delete p; }

dmkt_status dmkt_params_set(dmkt_params* p, const char* key, double value) {
  DMKT_REQUIRE(p);
  DMKT_REQUIRE(key);
  return guarded([&] {
    if (is_market_key(key)) {
      dmkt::market_field(p->values, key) = value;
    } else {
      dmkt::set_game_setting(p->settings, key, value);
    }
    return DMKT_OK;
  });
}

dmkt_status dmkt_params_get(const dmkt_params* p, const char* key,
                            double* out) {
  DMKT_REQUIRE(p);
  DMKT_REQUIRE(key);
  DMKT_REQUIRE(out);
  return guarded([&] {
    *out = is_market_key(key) ? dmkt::market_field(p->values, key)
                              : dmkt::game_setting(p->settings, key);
    return DMKT_OK;
  });
}

dmkt_status dmkt_params_validate(const dmkt_params* p) {
  DMKT_REQUIRE(p);
  return guarded([&] {
    (void)market(p);
    (void)settings(p);
    return DMKT_OK;
  });
}

size_t dmkt_params_key_count(void) {
  return dmkt::kMarketKeys.size() + dmkt::kSettingKeys.size();
}

const char* dmkt_params_key(size_t index) {
  // The key arrays hold string literals, so data() is NUL-terminated.
  if (index < dmkt::kMarketKeys.size()) return dmkt::kMarketKeys[index].data();
  index -= dmkt::kMarketKeys.size();
  if (index < dmkt::kSettingKeys.size()) return dmkt::kSettingKeys[index].data();
  return nullptr;
}

dmkt_status dmkt_derive_dm(const dmkt_params* p, double* out) {
  DMKT_REQUIRE(p);
  DMKT_REQUIRE(out);
  return guarded([&] {
    *out = dmkt::derive_dm(market(p));
    return DMKT_OK;
  });
}

dmkt_status dmkt_scale_value(const dmkt_params* p, double d, double* out) {
  DMKT_REQUIRE(p);
  DMKT_REQUIRE(out);
  return guarded([&] {
    *out = dmkt::ScaleCurve(market(p)).value(d);
    return DMKT_OK;
  });
}

dmkt_status dmkt_scope_value(const dmkt_params* p, double d1, double d2,
                             double* out) {
  DMKT_REQUIRE(p);
  DMKT_REQUIRE(out);
  return guarded([&] {
    *out = dmkt::scope_value(market(p), d1, d2);
    return DMKT_OK;
  });
}

dmkt_status dmkt_aggregator_profits(const dmkt_params* p, double d0, double d1,
                                    double d2, int entered, dmkt_profits* out) {
  DMKT_REQUIRE(p);
  DMKT_REQUIRE(out);
  return guarded([&] {
    *out = to_c(dmkt::aggregator_profits(market(p), d0, d1, d2, entered != 0));
    return DMKT_OK;
  });
}

dmkt_status dmkt_solve_monopsony(const dmkt_params* p, double d0,
                                 dmkt_monopsony* out) {
  DMKT_REQUIRE(p);
  DMKT_REQUIRE(out);
  return guarded([&] {
    const auto m = dmkt::solve_monopsony(market(p), d0, settings(p));
    *out = {m.d1m, m.w, m.pi1};
    return DMKT_OK;
  });
}

dmkt_status dmkt_solve_duopsony(const dmkt_params* p, double d0,
                                dmkt_duopsony* out) {
  DMKT_REQUIRE(p);
  DMKT_REQUIRE(out);
  return guarded([&] {
    const auto e = dmkt::solve_duopsony(market(p), d0, settings(p));
    *out = {e.d1, e.d2, e.w, e.pi1, e.pi2, to_c(e.report)};
    return DMKT_OK;
  });
}

int dmkt_entry_decision(const dmkt_duopsony* eq) {
  if (eq == nullptr) return 0;
  dmkt::DuopsonyEquilibrium e;
  e.pi2 = eq->pi2;
  return dmkt::entry_decision(e) ? 1 : 0;
}

dmkt_status dmkt_solve_spne(const dmkt_params* p, dmkt_outcome** out) {
  DMKT_REQUIRE(p);
  DMKT_REQUIRE(out);
  return guarded([&] {
    *out = new dmkt_outcome{dmkt::solve_spne(market(p), settings(p))};
    return DMKT_OK;
  });
}

void dmkt_outcome_destroy(dmkt_outcome* o) { delete o; }

dmkt_status dmkt_outcome_summary(const dmkt_outcome* o,
                                 dmkt_spne_summary* out) {
  DMKT_REQUIRE(o);
  DMKT_REQUIRE(out);
  const dmkt::StageZeroOutcome& s = o->outcome;
  dmkt_spne_summary r{};
  r.regime = to_c(s.regime);
  r.d0 = s.d0;
  r.w0 = s.w0;
  r.entered = s.entered ? 1 : 0;
  r.d1 = s.d1();
  r.d2 = s.d2();
  r.w = s.w();
  r.profits = to_c(s.profits);
  if (const auto* eq = std::get_if<dmkt::DuopsonyEquilibrium>(&s.downstream)) {
    r.downstream_report = to_c(eq->report);
  } else {
    r.downstream_report = {1, 0, 0.0};
  }
  if (s.deterrence) {
    r.deter_feasible = 1;
    r.d0_det = s.deterrence->d0;
    r.pi1_det = s.deterrence->pi1;
    r.blockaded = s.deterrence->blockaded ? 1 : 0;
    r.pi2_counterfactual = s.deterrence->pi2_counterfactual;
  }
  if (s.accommodation) {
    r.accommodate_feasible = 1;
    r.d0_acc = s.accommodation->d0;
    r.pi1_acc = s.accommodation->pi1;
    r.pi2_acc = s.accommodation->pi2;
  }
  r.d0_monopsony = s.d0_monopsony;
  r.invalid_points = s.invalid_points;
  r.warning_count = s.warnings.size();
  *out = r;
  return DMKT_OK;
}

const char* dmkt_outcome_warning(const dmkt_outcome* o, size_t index) {
  if (o == nullptr || index >= o->outcome.warnings.size()) return nullptr;
  return o->outcome.warnings[index].c_str();
}

dmkt_status dmkt_strategic_effects(const dmkt_params* p, double d0, double h,
                                   int mode, dmkt_diagnostics* out) {
  DMKT_REQUIRE(p);
  DMKT_REQUIRE(out);
  return guarded([&] {
    const auto d = dmkt::strategic_effects(market(p), d0, h, settings(p),
                                           mode_from_c(mode));
    dmkt_diagnostics r{};
    r.d0 = d.d0;
    r.d1 = d.d1;
    r.d2 = d.d2;
    r.sed = d.sed;
    r.sea = d.sea;
    r.direct_effect = d.direct_effect;
    r.slope_br2 = d.slope_br2;
    r.slope_br1 = d.slope_br1;
    r.dpi2_dd1 = d.dpi2_dd1;
    r.dpi1_dd2 = d.dpi1_dd2;
    r.dd1_dd0 = d.dd1_dd0;
    r.dd2_dd0 = d.dd2_dd0;
    r.pi1_direct_effect = d.pi1_direct_effect;
    r.pi1_total_derivative = d.pi1_total_derivative;
    r.substitutes = d.substitutes ? 1 : 0;
    r.consistency_ok = d.consistency_ok ? 1 : 0;
    r.ill_conditioned = d.ill_conditioned ? 1 : 0;
    r.taxonomy = d.taxonomy ? to_c(*d.taxonomy) : DMKT_TAXONOMY_INDETERMINATE;
    r.mode = mode;
    *out = r;
    return DMKT_OK;
  });
}

dmkt_status dmkt_classify_strategy(const dmkt_diagnostics* d, int mode,
                                   double dead_band, int* taxonomy) {
  DMKT_REQUIRE(d);
  DMKT_REQUIRE(taxonomy);
  *taxonomy = DMKT_TAXONOMY_INDETERMINATE;
  return guarded([&] {
    *taxonomy =
        to_c(dmkt::classify_strategy(from_c(*d), mode_from_c(mode), dead_band));
    return DMKT_OK;
  });
}

dmkt_status dmkt_sweep_run(const dmkt_params* base, const char* parameter,
                           const double* grid, size_t grid_size,
                           const double* f_levels, size_t f_level_count,
                           int threads, dmkt_sweep** out) {
  DMKT_REQUIRE(base);
  DMKT_REQUIRE(parameter);
  DMKT_REQUIRE(out);
  if (grid_size > 0) DMKT_REQUIRE(grid);
  if (f_level_count > 0) DMKT_REQUIRE(f_levels);
  return guarded([&] {
    dmkt::SweepSpec spec;
    spec.parameter = dmkt::sweep_parameter_from_string(parameter);
    spec.grid.assign(grid, grid + grid_size);
    spec.f_levels.assign(f_levels, f_levels + f_level_count);
    spec.base = market(base);
    spec.settings = settings(base);
    spec.threads = threads;

    auto sweep = std::make_unique<dmkt_sweep>();
    sweep->parameter = spec.parameter;
    sweep->rows = dmkt::run_sweep(spec);
    sweep->welfare = dmkt::welfare_comparison(sweep->rows);

    if (spec.parameter == dmkt::SweepParameter::F) {
      std::ostringstream os;
      dmkt::write_sweep_csv(os, sweep->rows);
      sweep->file_names.push_back(dmkt::sweep_csv_name(spec.parameter, 0.0));
      sweep->file_contents.push_back(os.str());
    } else {
      for (double f : dmkt::sweep_f_levels(sweep->rows)) {
        std::ostringstream os;
        dmkt::write_sweep_csv(os, dmkt::rows_for_f(sweep->rows, f));
        sweep->file_names.push_back(dmkt::sweep_csv_name(spec.parameter, f));
        sweep->file_contents.push_back(os.str());
      }
    }
    *out = sweep.release();
    return DMKT_OK;
  });
}

void dmkt_sweep_destroy(dmkt_sweep* s) { delete s; }

size_t dmkt_sweep_row_count(const dmkt_sweep* s) {
  return s == nullptr ? 0 : s->rows.size();
}

dmkt_status dmkt_sweep_row_get(const dmkt_sweep* s, size_t index,
                               dmkt_sweep_row* out) {
  DMKT_REQUIRE(s);
  DMKT_REQUIRE(out);
  if (index >= s->rows.size()) {
    return fail(DMKT_ERR_ARGUMENT, "row index out of range");
  }
  const dmkt::SweepRow& row = s->rows[index];
  dmkt_sweep_row r{};
  r.param_value = row.param_value;
  r.F = row.F;
  r.regime = row.regime ? to_c(*row.regime) : DMKT_REGIME_NONE;
  if (row.deterrence) {
    r.deter_feasible = 1;
    r.d0_det = row.deterrence->d0;
    r.pi1_det = row.deterrence->pi1;
    r.blockaded = row.deterrence->blockaded ? 1 : 0;
  }
  if (row.accommodation) {
    r.accommodate_feasible = 1;
    r.d0_acc = row.accommodation->d0;
    r.pi1_acc = row.accommodation->pi1;
  }
  r.d0_mon = row.d0_mon;
  r.d0 = row.d0;
  r.d1 = row.d1;
  r.d2 = row.d2;
  r.w = row.w;
  r.w0 = row.w0;
  r.profits = to_c(row.profits);
  if (row.profits_det) {
    r.has_profits_det = 1;
    r.profits_det = to_c(*row.profits_det);
  }
  if (row.profits_acc) {
    r.has_profits_acc = 1;
    r.profits_acc = to_c(*row.profits_acc);
  }
  if (row.sed && row.sea) {
    r.has_diagnostics = 1;
    r.sed = *row.sed;
    r.sea = *row.sea;
    r.slope_br1 = row.slope_br1.value_or(0.0);
    r.slope_br2 = row.slope_br2.value_or(0.0);
    r.direct_effect = row.direct_effect.value_or(0.0);
  }
  r.invalid_points = row.invalid_points;
  *out = r;
  return DMKT_OK;
}

const char* dmkt_sweep_row_error(const dmkt_sweep* s, size_t index) {
  if (s == nullptr || index >= s->rows.size()) return nullptr;
  return s->rows[index].error.c_str();
}

dmkt_status dmkt_sweep_welfare(const dmkt_sweep* s, size_t index,
                               dmkt_welfare_finding* out) {
  DMKT_REQUIRE(s);
  DMKT_REQUIRE(out);
  if (index >= s->welfare.size()) {
    return fail(DMKT_ERR_ARGUMENT, "row index out of range");
  }
  const dmkt::WelfareFinding& f = s->welfare[index];
  *out = {f.applicable ? 1 : 0,
          f.sw_deter,
          f.sw_accommodate,
          f.sw_difference,
          f.d2_prefers_accommodation ? 1 : 0,
          f.p1_prefers_accommodation ? 1 : 0,
          f.p0_prefers_deterrence ? 1 : 0,
          f.d1_prefers_deterrence ? 1 : 0};
  return DMKT_OK;
}

size_t dmkt_sweep_file_count(const dmkt_sweep* s) {
  return s == nullptr ? 0 : s->file_names.size();
}

dmkt_status dmkt_sweep_file_name(const dmkt_sweep* s, size_t index, char* buf,
                                 size_t capacity, size_t* needed) {
  DMKT_REQUIRE(s);
  if (index >= s->file_names.size()) {
    return fail(DMKT_ERR_ARGUMENT, "file index out of range");
  }
  return copy_string(s->file_names[index], buf, capacity, needed);
}

dmkt_status dmkt_sweep_file_contents(const dmkt_sweep* s, size_t index,
                                     char* buf, size_t capacity,
                                     size_t* needed) {
  DMKT_REQUIRE(s);
  if (index >= s->file_contents.size()) {
    return fail(DMKT_ERR_ARGUMENT, "file index out of range");
  }
  return copy_string(s->file_contents[index], buf, capacity, needed);
}

dmkt_status dmkt_sweep_write_csv(const dmkt_sweep* s, const char* directory) {
  DMKT_REQUIRE(s);
  DMKT_REQUIRE(directory);
  return guarded([&] {
    const std::filesystem::path dir(directory);
    if (!std::filesystem::is_directory(dir)) {
      return fail(DMKT_ERR_IO,
                  std::string("not a directory: ") + directory);
    }
    for (size_t i = 0; i < s->file_names.size(); ++i) {
      const auto path = dir / s->file_names[i];
      std::ofstream f(path, std::ios::binary);
      f << s->file_contents[i];
      if (!f) return fail(DMKT_ERR_IO, "cannot write " + path.string());
    }
    return DMKT_OK;
  });
}

dmkt_status dmkt_default_grid(const char* parameter, int dense, double* buf,
                              size_t capacity, size_t* count) {
  DMKT_REQUIRE(parameter);
  return guarded([&] {
    return copy_doubles(
        dmkt::default_grid(dmkt::sweep_parameter_from_string(parameter), dense),
        buf, capacity, count);
  });
}

dmkt_status dmkt_default_f_levels(double* buf, size_t capacity,
                                  size_t* count) {
  return guarded([&] {
    return copy_doubles(dmkt::default_f_levels(), buf, capacity, count);
  });
}

dmkt_status dmkt_selftest(const dmkt_params* p, uint64_t seed, int draws,
                          dmkt_selftest_report* out) {
  DMKT_REQUIRE(p);
  DMKT_REQUIRE(out);
  if (draws <= 0) return fail(DMKT_ERR_ARGUMENT, "draws must be positive");
  return guarded([&] {
    const auto report = dmkt::oracle::run_selftest(seed, draws, settings(p));
    dmkt_selftest_report r{};
    r.draws = report.draws.size();
    r.tolerance = report.tolerance;
    for (const auto& d : report.draws) {
      if (d.pass) ++r.passed;
      r.max_monopsony_gap = std::max(r.max_monopsony_gap, d.monopsony_gap);
      r.max_duopsony_gap = std::max(r.max_duopsony_gap, d.duopsony_gap);
    }
    r.pass = report.pass() ? 1 : 0;
    *out = r;
    return DMKT_OK;
  });
}

}  // extern "C"
