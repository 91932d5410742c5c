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

#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace dmkt::cli {
namespace {

using Json = nlohmann::ordered_json;

class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(dmkt_status status) {
  if (status == DMKT_OK) return;
  const std::string key = dmkt_last_error_key();
  if (status == DMKT_ERR_CONFIG && !key.empty()) {
    std::string what = dmkt_last_error();
    const std::string prefix = key + ": ";
    if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
    throw ConfigError(key, what);
  }
  if (status == DMKT_ERR_IO) throw IoFailure(dmkt_last_error());
  throw SolverFailure(std::string(dmkt_status_string(status)) + ": " +
                      dmkt_last_error());
}

struct OutcomeDeleter {
  void operator()(dmkt_outcome* o) const { dmkt_outcome_destroy(o); }
};
struct SweepDeleter {
  void operator()(dmkt_sweep* s) const { dmkt_sweep_destroy(s); }
};
using OutcomeHandle = std::unique_ptr<dmkt_outcome, OutcomeDeleter>;
using SweepHandle = std::unique_ptr<dmkt_sweep, SweepDeleter>;

template <class Body>
int run_guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SolverFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

Json profits_json(const dmkt_profits& p) {
  return {{"pi1", p.pi1}, {"pi2", p.pi2}, {"pi_p1", p.pi_p1},
          {"pi_p0", p.pi_p0}, {"sw", p.sw}};
}

Json params_json(const RunConfig& config) {
  Json j = Json::object();
  for (const auto& [key, value] : config.params) j[key] = value;
  return j;
}

// Flattens nested objects into dotted keys for table and CSV output.
void flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else if (j.is_number_float()) {
    out.emplace_back(prefix, format_number(j.get<double>()));
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else if (j.is_null()) {
    out.emplace_back(prefix, "");
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

void emit_document(const Json& doc, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Json) {
    out << doc.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> fields;
  flatten(doc, "", fields);
  if (format == OutputFormat::Csv) {
    out << "field,value\n";
    for (const auto& [k, v] : fields) out << k << ',' << csv_field(v) << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& f : fields) width = std::max(width, f.first.size());
  for (const auto& [k, v] : fields) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << k << v
        << '\n';
  }
}

std::string short_number(double x) {
  std::ostringstream os;
  os << std::setprecision(8) << x;
  return os.str();
}

// Prints rows as aligned columns, CSV or a JSON array of objects.
void emit_table(const std::vector<std::string>& header,
                const std::vector<std::vector<Json>>& rows,
                OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Json) {
    Json arr = Json::array();
    for (const auto& row : rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
      arr.push_back(obj);
    }
    out << arr.dump(2) << '\n';
    return;
  }
  auto cell = [&](const Json& v) -> std::string {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
      return format == OutputFormat::Csv ? format_number(v.get<double>())
                                         : short_number(v.get<double>());
    }
    return v.dump();
  };
  if (format == OutputFormat::Csv) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      out << (i ? "," : "") << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "") << csv_field(cell(row[i]));
      }
      out << '\n';
    }
    return;
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  std::vector<std::vector<std::string>> text;
  for (const auto& row : rows) {
    auto& line = text.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(cell(row[i]));
      width[i] = std::max(width[i], line.back().size());
    }
  }
  auto print = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << std::left << std::setw(static_cast<int>(width[i]) + 2) << line[i];
    }
    out << '\n';
  };
  print(header);
  for (const auto& line : text) print(line);
}

OutcomeHandle solve(const dmkt_params* p) {
  dmkt_outcome* raw = nullptr;
  check(dmkt_solve_spne(p, &raw));
  return OutcomeHandle(raw);
}

dmkt_spne_summary summarize(const dmkt_outcome* o) {
  dmkt_spne_summary s{};
  check(dmkt_outcome_summary(o, &s));
  return s;
}

std::vector<double> default_list(dmkt_status (*fill)(double*, size_t,
                                                      size_t*)) {
  size_t n = 0;
  fill(nullptr, 0, &n);
  std::vector<double> v(n);
  check(fill(v.data(), v.size(), &n));
  return v;
}

std::vector<double> sweep_grid(const RunConfig& config) {
  if (config.grid) return *config.grid;
  size_t n = 0;
  dmkt_default_grid(config.param.c_str(), config.dense, nullptr, 0, &n);
  std::vector<double> v(n);
  check(dmkt_default_grid(config.param.c_str(), config.dense, v.data(),
                          v.size(), &n));
  return v;
}

std::string copy_out(dmkt_status (*get)(const dmkt_sweep*, size_t, char*,
                                        size_t, size_t*),
                     const dmkt_sweep* s, size_t index) {
  size_t needed = 0;
  get(s, index, nullptr, 0, &needed);
  std::string buf(needed, '\0');
  check(get(s, index, buf.data(), buf.size(), &needed));
  buf.resize(needed > 0 ? needed - 1 : 0);
  return buf;
}

Json optional_number(int present, double value) {
  return present ? Json(value) : Json(nullptr);
}

}  // namespace

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const ParamsHandle p = make_params(config);
    const OutcomeHandle o = solve(p.get());
    const dmkt_spne_summary s = summarize(o.get());

    Json doc;
    doc["regime"] = dmkt_regime_name(s.regime);
    doc["d0"] = s.d0;
    doc["w0"] = s.w0;
    doc["entered"] = s.entered != 0;
    Json down;
    down["kind"] = s.entered ? "duopsony" : "monopsony";
    down["d1"] = s.d1;
    down["d2"] = s.d2;
    down["w"] = s.w;
    down["converged"] = s.downstream_report.converged != 0;
    down["iterations"] = s.downstream_report.iterations;
    down["residual"] = s.downstream_report.residual;
    doc["downstream"] = down;
    doc["profits"] = profits_json(s.profits);

    Json det;
    det["feasible"] = s.deter_feasible != 0;
    det["d0"] = optional_number(s.deter_feasible, s.d0_det);
    det["pi1"] = optional_number(s.deter_feasible, s.pi1_det);
    det["blockaded"] = s.deter_feasible ? Json(s.blockaded != 0) : Json();
    det["pi2_counterfactual"] =
        optional_number(s.deter_feasible, s.pi2_counterfactual);
    doc["deterrence"] = det;

    Json acc;
    acc["feasible"] = s.accommodate_feasible != 0;
    acc["d0"] = optional_number(s.accommodate_feasible, s.d0_acc);
    acc["pi1"] = optional_number(s.accommodate_feasible, s.pi1_acc);
    acc["pi2"] = optional_number(s.accommodate_feasible, s.pi2_acc);
    doc["accommodation"] = acc;

    doc["d0_monopsony"] = s.d0_monopsony;
    doc["invalid_points"] = s.invalid_points;
    Json warnings = Json::array();
    for (size_t i = 0; i < s.warning_count; ++i) {
      const char* w = dmkt_outcome_warning(o.get(), i);
      warnings.push_back(w);
      err << "warning: " << w << '\n';
    }
    doc["warnings"] = warnings;
    doc["params"] = params_json(config);

    emit_document(doc, config.format, out);
    return static_cast<int>(kExitOk);
  });
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const ParamsHandle p = make_params(config);
    const std::vector<double> grid = sweep_grid(config);
    const std::vector<double> f_levels =
        config.f_levels ? *config.f_levels : default_list(dmkt_default_f_levels);

    dmkt_sweep* raw = nullptr;
    check(dmkt_sweep_run(p.get(), config.param.c_str(), grid.data(),
                         grid.size(), f_levels.data(), f_levels.size(),
                         config.threads, &raw));
    const SweepHandle sweep(raw);

    const std::filesystem::path dir(config.out);
    std::filesystem::create_directories(dir);
    check(dmkt_sweep_write_csv(sweep.get(), dir.string().c_str()));

    const std::vector<std::string> header = {
        config.param, "F", "regime", "d0", "pi1", "pi2", "sw",
        "deter", "accommodate", "sw_det-sw_acc"};
    std::vector<std::vector<Json>> rows;
    int failed = 0;
    for (size_t i = 0; i < dmkt_sweep_row_count(sweep.get()); ++i) {
      dmkt_sweep_row r{};
      check(dmkt_sweep_row_get(sweep.get(), i, &r));
      dmkt_welfare_finding wf{};
      check(dmkt_sweep_welfare(sweep.get(), i, &wf));
      const std::string row_error = dmkt_sweep_row_error(sweep.get(), i);
      if (!row_error.empty()) {
        ++failed;
        err << "warning: " << config.param << '=' << format_number(r.param_value)
            << " F=" << format_number(r.F) << ": " << row_error << '\n';
      }
      const bool ok = r.regime != DMKT_REGIME_NONE;
      rows.push_back({r.param_value, r.F,
                      ok ? Json(dmkt_regime_name(r.regime)) : Json("error"),
                      ok ? Json(r.d0) : Json(), ok ? Json(r.profits.pi1) : Json(),
                      ok ? Json(r.profits.pi2) : Json(),
                      ok ? Json(r.profits.sw) : Json(),
                      r.deter_feasible ? "feasible" : "infeasible",
                      r.accommodate_feasible ? "feasible" : "infeasible",
                      wf.applicable ? Json(wf.sw_difference) : Json()});
    }
    emit_table(header, rows, config.format, out);

    for (size_t i = 0; i < dmkt_sweep_file_count(sweep.get()); ++i) {
      err << "wrote "
          << (dir / copy_out(dmkt_sweep_file_name, sweep.get(), i)).string()
          << '\n';
    }
    if (failed > 0) {
      err << "warning: " << failed << " row(s) failed; their columns are "
                                      "left empty\n";
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_diagnose(const RunConfig& config, std::ostream& out,
                 std::ostream& err) {
  return run_guarded(err, [&] {
    const ParamsHandle p = make_params(config);

    std::vector<double> points;
    int mode = config.mode == DiagnoseMode::Deter ? DMKT_MODE_DETER
                                                  : DMKT_MODE_ACCOMMODATE;
    if (!config.d0 || config.mode == DiagnoseMode::Auto) {
      const OutcomeHandle o = solve(p.get());
      const dmkt_spne_summary s = summarize(o.get());
      if (config.mode == DiagnoseMode::Auto) {
        mode = s.regime == DMKT_REGIME_ACCOMMODATE ? DMKT_MODE_ACCOMMODATE
                                                   : DMKT_MODE_DETER;
      }
      if (!config.d0) points.push_back(s.d0);
    }
    if (config.d0) points = *config.d0;
    if (points.empty()) throw ConfigError("d0", "must not be empty");

    const std::vector<std::string> header = {
        "d0", "d1", "d2", "sed", "sea", "direct_effect", "slope_br1",
        "slope_br2", "substitutes", "consistency_ok", "ill_conditioned",
        "taxonomy", "mode"};
    std::vector<std::vector<Json>> rows;
    int failed = 0;
    for (double d0 : points) {
      dmkt_diagnostics d{};
      const dmkt_status status =
          dmkt_strategic_effects(p.get(), d0, 0.0, mode, &d);
      if (status != DMKT_OK) {
        ++failed;
        err << "error: d0=" << format_number(d0) << ": "
            << dmkt_status_string(status) << ": " << dmkt_last_error() << '\n';
        continue;
      }
      if (!d.consistency_ok) {
        err << "WARNING: sign identity sign(sea) = sign(sed) * sign(slope_br2)"
               " fails at d0="
            << format_number(d0) << " (sed=" << format_number(d.sed)
            << ", sea=" << format_number(d.sea)
            << ", slope_br2=" << format_number(d.slope_br2) << ")\n";
      }
      if (d.ill_conditioned) {
        err << "warning: finite differences are ill-conditioned at d0="
            << format_number(d0) << '\n';
      }
      rows.push_back({d.d0, d.d1, d.d2, d.sed, d.sea, d.direct_effect,
                      d.slope_br1, d.slope_br2, d.substitutes != 0,
                      d.consistency_ok != 0, d.ill_conditioned != 0,
                      dmkt_taxonomy_name(d.taxonomy),
                      mode == DMKT_MODE_DETER ? "deter" : "accommodate"});
    }
    emit_table(header, rows, config.format, out);
    return static_cast<int>(failed > 0 ? kExitSolver : kExitOk);
  });
}

int cmd_selftest(const RunConfig& config, std::ostream& out,
                 std::ostream& err) {
  return run_guarded(err, [&] {
    const ParamsHandle p = make_params(config);
    dmkt_selftest_report r{};
    check(dmkt_selftest(p.get(), config.seed, config.draws, &r));
    Json doc;
    doc["seed"] = config.seed;
    doc["draws"] = r.draws;
    doc["passed"] = r.passed;
    doc["max_monopsony_gap"] = r.max_monopsony_gap;
    doc["max_duopsony_gap"] = r.max_duopsony_gap;
    doc["tolerance"] = r.tolerance;
    doc["pass"] = r.pass != 0;
    emit_document(doc, config.format, out);
    if (!r.pass) err << "selftest: solver and oracle disagree\n";
    return static_cast<int>(r.pass ? kExitOk : kExitFailure);
  });
}

}  // namespace dmkt::cli
