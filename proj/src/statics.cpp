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

#include "dmkt/statics.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <ostream>
#include <thread>

#include "dmkt/diagnostics.hpp"
#include "dmkt/error.hpp"

namespace dmkt {
namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = i == n - 1 ? b : a + (b - a) * i / (n - 1);
  return v;
}

std::string_view market_key(SweepParameter p) {
  switch (p) {
    case SweepParameter::C0:
      return "c0";
    case SweepParameter::Delta:
      return "delta";
    case SweepParameter::F:
      return "F";
  }
  return "?";
}

void put(std::ostream& os, const std::optional<double>& x) {
  if (x) os << format_double(*x);
}

}  // namespace

std::string_view to_string(SweepParameter p) { return market_key(p); }

SweepParameter sweep_parameter_from_string(std::string_view s) {
  if (s == "c0") return SweepParameter::C0;
  if (s == "delta") return SweepParameter::Delta;
  if (s == "F") return SweepParameter::F;
  throw ConfigError("param", "must be one of c0, delta, F (got '" +
                                 std::string(s) + "')");
}

std::vector<double> default_grid(SweepParameter p, int dense_points) {
  const bool dense = dense_points >= 2;
  switch (p) {
    case SweepParameter::C0:
      return dense ? linspace(3.0 / 6.0, 1.0, dense_points)
                   : std::vector<double>{3.0 / 6.0, 4.0 / 6.0, 5.0 / 6.0, 1.0};
    case SweepParameter::Delta:
      return dense ? linspace(0.0, 4.0, dense_points)
                   : std::vector<double>{0.0, 1.0, 2.0, 3.0, 4.0};
    case SweepParameter::F:
      return dense ? linspace(0.00005, 0.0007, dense_points) : default_f_levels();
  }
  return {};
}

std::vector<double> default_f_levels() { return {0.00005, 0.0005, 0.0007}; }

void SweepSpec::validate() const {
  if (grid.empty()) throw ConfigError("grid", "must not be empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ConfigError("grid", "must be strictly increasing");
    }
  }
  if (parameter != SweepParameter::F && f_levels.empty()) {
    throw ConfigError("f_levels", "must not be empty");
  }
  for (double x : grid) (void)base.with(market_key(parameter), x);
  if (parameter != SweepParameter::F) {
    for (double f : f_levels) (void)base.with("F", f);
  }
  settings.validate();
}

SweepRow solve_row(const MarketParams& params, double param_value,
                   const GameSettings& settings) {
  SweepRow row;
  row.param_value = param_value;
  row.F = params.F();
  try {
    const StageZeroOutcome o = solve_spne(params, settings);
    row.regime = o.regime;
    row.deterrence = o.deterrence;
    row.accommodation = o.accommodation;
    row.d0_mon = o.d0_monopsony;
    row.d0 = o.d0;
    row.d1 = o.d1();
    row.d2 = o.d2();
    row.w = o.w();
    row.w0 = o.w0;
    row.profits = o.profits;
    row.invalid_points = o.invalid_points;
  } catch (const std::exception& e) {
    row.error = e.what();
    row.d0_mon = solve_unconstrained_d0(params, settings).argmax;
    return row;
  }

  if (row.deterrence) {
    row.profits_det = branch_profits(params, row.deterrence->d0, false, settings);
  }
  if (row.accommodation) {
    row.profits_acc =
        branch_profits(params, row.accommodation->d0, true, settings);
  }

  const bool at_acc = row.accommodation.has_value();
  const double d0 = at_acc ? row.accommodation->d0 : row.deterrence->d0;
  try {
    const StrategicDiagnostics d = strategic_effects(
        params, d0, settings.fd_step, settings,
        at_acc ? StrategyMode::Accommodation : StrategyMode::Deterrence);
    row.sed = d.sed;
    row.sea = d.sea;
    row.slope_br1 = d.slope_br1;
    row.slope_br2 = d.slope_br2;
    row.direct_effect = d.direct_effect;
  } catch (const std::exception& e) {
    row.diagnostics_error = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();

  struct Job {
    MarketParams params;
    double value;
  };
  std::vector<Job> jobs;
  const auto key = market_key(spec.parameter);
  if (spec.parameter == SweepParameter::F) {
    for (double x : spec.grid) jobs.push_back({spec.base.with(key, x), x});
  } else {
    for (double f : spec.f_levels) {
      const MarketParams at_f = spec.base.with("F", f);
      for (double x : spec.grid) jobs.push_back({at_f.with(key, x), x});
    }
  }

  std::vector<SweepRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      rows[i] = solve_row(jobs[i].params, jobs[i].value, spec.settings);
    }
  };

  unsigned n = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                : std::thread::hardware_concurrency();
  n = std::clamp<unsigned>(n, 1u, static_cast<unsigned>(jobs.size()));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  return rows;
}

std::vector<WelfareFinding> welfare_comparison(const std::vector<SweepRow>& rows) {
  std::vector<WelfareFinding> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    WelfareFinding f;
    f.row = i;
    f.applicable = r.profits_det.has_value() && r.profits_acc.has_value();
    if (f.applicable) {
      const AgentProfits& det = *r.profits_det;
      const AgentProfits& acc = *r.profits_acc;
      f.sw_deter = det.sw;
      f.sw_accommodate = acc.sw;
      f.sw_difference = det.sw - acc.sw;
      f.d2_prefers_accommodation = acc.pi2 >= det.pi2;
      f.p1_prefers_accommodation = acc.pi_p1 > det.pi_p1;
      f.p0_prefers_deterrence = det.pi_p0 > acc.pi_p0;
      f.d1_prefers_deterrence = det.pi1 >= acc.pi1;
    }
    out.push_back(f);
  }
  return out;
}

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    os << format_double(r.param_value) << ',' << format_double(r.F) << ',';
    if (r.regime) os << to_string(*r.regime);
    os << ',';
    put(os, r.deterrence ? std::optional(r.deterrence->d0) : std::nullopt);
    os << ',';
    put(os, r.accommodation ? std::optional(r.accommodation->d0) : std::nullopt);
    os << ',' << format_double(r.d0_mon) << ',';
    put(os, r.deterrence ? std::optional(r.deterrence->pi1) : std::nullopt);
    os << ',';
    put(os, r.accommodation ? std::optional(r.accommodation->pi1) : std::nullopt);
    os << ',';
    if (r.regime) {
      os << format_double(r.profits.pi2) << ',' << format_double(r.profits.pi_p1)
         << ',' << format_double(r.profits.pi_p0);
    } else {
      os << ",,";
    }
    os << ',';
    put(os, r.profits_det ? std::optional(r.profits_det->sw) : std::nullopt);
    os << ',';
    put(os, r.profits_acc ? std::optional(r.profits_acc->sw) : std::nullopt);
    os << ',';
    put(os, r.sed);
    os << ',';
    put(os, r.sea);
    os << ',';
    put(os, r.slope_br2);
    os << '\n';
  }
}

std::vector<double> sweep_f_levels(const std::vector<SweepRow>& rows) {
  std::vector<double> fs;
  for (const SweepRow& r : rows) {
    if (std::find(fs.begin(), fs.end(), r.F) == fs.end()) fs.push_back(r.F);
  }
  return fs;
}

std::vector<SweepRow> rows_for_f(const std::vector<SweepRow>& rows, double f) {
  std::vector<SweepRow> out;
  for (const SweepRow& r : rows) {
    if (r.F == f) out.push_back(r);
  }
  return out;
}

std::string sweep_csv_name(SweepParameter p, double f) {
  if (p == SweepParameter::F) return "sweep_F.csv";
  return "sweep_" + std::string(market_key(p)) + "_F" + format_double(f) + ".csv";
}

}  // namespace dmkt
