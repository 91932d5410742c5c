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

#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace dmkt::cli {
namespace {

constexpr std::string_view kDefault = "default";

constexpr std::string_view kRunKeys[] = {
    "param", "grid", "f_levels", "dense", "threads", "out",
    "format", "d0", "mode", "seed", "draws"};

std::string_view trim(std::string_view s) {
  const auto not_space = [](char ch) {
    return ch != ' ' && ch != '\t' && ch != '\r' && ch != '\n';
  };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

double parse_decimal(std::string_view text, std::string_view key) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), x);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key),
                      "not a number: '" + std::string(text) + "'");
  }
  return x;
}

long long parse_integer(std::string_view text, std::string_view key) {
  const double x = parse_number(text, key);
  if (!std::isfinite(x) || x != std::floor(x) || std::abs(x) > 9e15) {
    throw ConfigError(std::string(key), "must be an integer");
  }
  return static_cast<long long>(x);
}

std::optional<std::vector<double>> parse_optional_list(std::string_view text,
                                                       std::string_view key) {
  if (trim(text) == kDefault) return std::nullopt;
  return parse_list(text, key);
}

std::string format_optional_list(const std::optional<std::vector<double>>& v) {
  return v ? format_list(*v) : std::string(kDefault);
}

void check(dmkt_status status) {
  if (status == DMKT_OK) return;
  const std::string key = dmkt_last_error_key();
  if (!key.empty()) {
    // The library message already starts with "key: ".
    std::string what = dmkt_last_error();
    const std::string prefix = key + ": ";
    if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
    throw ConfigError(key, what);
  }
  throw ConfigError("params", dmkt_last_error());
}

}  // namespace

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Table:
      return "table";
    case OutputFormat::Csv:
      return "csv";
    case OutputFormat::Json:
      return "json";
  }
  return "table";
}

std::string_view to_string(DiagnoseMode m) {
  switch (m) {
    case DiagnoseMode::Auto:
      return "auto";
    case DiagnoseMode::Deter:
      return "deter";
    case DiagnoseMode::Accommodate:
      return "accommodate";
  }
  return "auto";
}

OutputFormat output_format_from_string(std::string_view s) {
  s = trim(s);
  if (s == "table") return OutputFormat::Table;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw ConfigError("format", "expected table, csv or json, got '" +
                                  std::string(s) + "'");
}

DiagnoseMode diagnose_mode_from_string(std::string_view s) {
  s = trim(s);
  if (s == "auto") return DiagnoseMode::Auto;
  if (s == "deter") return DiagnoseMode::Deter;
  if (s == "accommodate") return DiagnoseMode::Accommodate;
  throw ConfigError("mode", "expected auto, deter or accommodate, got '" +
                                std::string(s) + "'");
}

RunConfig::RunConfig() {
  dmkt_params* raw = nullptr;
  check(dmkt_params_create(&raw));
  const ParamsHandle defaults(raw);
  const size_t n = dmkt_params_key_count();
  params.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const char* key = dmkt_params_key(i);
    double value = 0.0;
    check(dmkt_params_get(defaults.get(), key, &value));
    params.emplace_back(key, value);
  }
}

double RunConfig::get(std::string_view key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  throw ConfigError(std::string(key), "unknown parameter");
}

void RunConfig::set(std::string_view key, std::string_view value) {
  for (auto& [k, v] : params) {
    if (k == key) {
      v = parse_number(value, key);
      return;
    }
  }
  if (key == "param") {
    const std::string_view p = trim(value);
    if (p != "c0" && p != "delta" && p != "F") {
      throw ConfigError("param", "expected c0, delta or F, got '" +
                                     std::string(p) + "'");
    }
    param = p;
  } else if (key == "grid") {
    grid = parse_optional_list(value, key);
  } else if (key == "f_levels") {
    f_levels = parse_optional_list(value, key);
  } else if (key == "dense") {
    const long long n = parse_integer(value, key);
    if (n != 0 && (n < 2 || n > 100000)) {
      throw ConfigError("dense", "must be 0 or between 2 and 100000");
    }
    dense = static_cast<int>(n);
  } else if (key == "threads") {
    const long long n = parse_integer(value, key);
    if (n < 0 || n > 4096) throw ConfigError("threads", "must be in [0, 4096]");
    threads = static_cast<int>(n);
  } else if (key == "out") {
    const std::string_view o = trim(value);
    if (o.empty()) throw ConfigError("out", "must not be empty");
    out = o;
  } else if (key == "format") {
    format = output_format_from_string(value);
  } else if (key == "d0") {
    d0 = parse_optional_list(value, key);
  } else if (key == "mode") {
    mode = diagnose_mode_from_string(value);
  } else if (key == "seed") {
    const std::string_view t = trim(value);
    std::uint64_t n = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), n);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
      throw ConfigError("seed", "must be a non-negative integer");
    }
    seed = n;
  } else if (key == "draws") {
    const long long n = parse_integer(value, key);
    if (n < 1 || n > 100000) throw ConfigError("draws", "must be in [1, 100000]");
    draws = static_cast<int>(n);
  } else {
    throw ConfigError(std::string(key), "unknown key");
  }
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (size_t i = 0; i < dmkt_params_key_count(); ++i) {
    keys.emplace_back(dmkt_params_key(i));
  }
  for (auto k : kRunKeys) keys.emplace_back(k);
  return keys;
}

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

double parse_number(std::string_view text, std::string_view key) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text, key);
  const double num = parse_decimal(text.substr(0, slash), key);
  const double den = parse_decimal(text.substr(slash + 1), key);
  if (den == 0.0) throw ConfigError(std::string(key), "division by zero");
  return num / den;
}

std::vector<double> parse_list(std::string_view text, std::string_view key) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number(text.substr(0, comma), key));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ',';
    out += format_number(xs[i]);
  }
  return out;
}

void read_config(std::istream& in, RunConfig& config) {
  std::set<std::string, std::less<>> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no),
                        "expected key = value");
    }
    const std::string key(trim(view.substr(0, eq)));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no), "missing key");
    }
    if (!seen.insert(key).second) throw ConfigError(key, "repeated key");
    config.set(key, view.substr(eq + 1));
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  RunConfig config;
  read_config(in, config);
  return config;
}

void write_config(std::ostream& out, const RunConfig& config) {
  for (const auto& [key, value] : config.params) {
    out << key << " = " << format_number(value) << '\n';
  }
  out << "param = " << config.param << '\n'
      << "grid = " << format_optional_list(config.grid) << '\n'
      << "f_levels = " << format_optional_list(config.f_levels) << '\n'
      << "dense = " << config.dense << '\n'
      << "threads = " << config.threads << '\n'
      << "out = " << config.out << '\n'
      << "format = " << to_string(config.format) << '\n'
      << "d0 = " << format_optional_list(config.d0) << '\n'
      << "mode = " << to_string(config.mode) << '\n'
      << "seed = " << config.seed << '\n'
      << "draws = " << config.draws << '\n';
}

void save_config(const std::string& path, const RunConfig& config) {
  std::ofstream out(path);
  write_config(out, config);
  if (!out) throw ConfigError("save_config", "cannot write '" + path + "'");
}

ParamsHandle make_params(const RunConfig& config) {
  dmkt_params* raw = nullptr;
  check(dmkt_params_create(&raw));
  ParamsHandle p(raw);
  for (const auto& [key, value] : config.params) {
    check(dmkt_params_set(p.get(), key.c_str(), value));
  }
  check(dmkt_params_validate(p.get()));
  return p;
}

}  // namespace dmkt::cli
