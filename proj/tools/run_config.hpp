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

// Run configuration for the command-line tool: a flat `key = value` text
// file, overridable from flags, that serializes back to an identical run.

#ifndef DMKT_TOOLS_RUN_CONFIG_HPP
#define DMKT_TOOLS_RUN_CONFIG_HPP

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dmkt.h"

namespace dmkt::cli {

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

enum class OutputFormat { Table, Csv, Json };
enum class DiagnoseMode { Auto, Deter, Accommodate };

std::string_view to_string(OutputFormat f);
std::string_view to_string(DiagnoseMode m);
OutputFormat output_format_from_string(std::string_view s);
DiagnoseMode diagnose_mode_from_string(std::string_view s);

struct RunConfig {
  // Market constants and solver settings, in dmkt_params_key order.
  std::vector<std::pair<std::string, double>> params;

  std::string param = "c0";
  std::optional<std::vector<double>> grid;      // nullopt: default grid
  std::optional<std::vector<double>> f_levels;  // nullopt: default levels
  int dense = 0;
  int threads = 0;

  std::string out = ".";
  OutputFormat format = OutputFormat::Table;

  std::optional<std::vector<double>> d0;  // nullopt: equilibrium d0
  DiagnoseMode mode = DiagnoseMode::Auto;

  std::uint64_t seed = 1;
  int draws = 10;

  RunConfig();

  double get(std::string_view key) const;
  void set(std::string_view key, std::string_view value);

  bool operator==(const RunConfig&) const = default;
};

/// Every key accepted by RunConfig::set, in serialization order.
std::vector<std::string> config_keys();

/// Shortest decimal text that parses back to exactly x.
std::string format_number(double x);

/// Parses a decimal number or a ratio "a/b". Throws ConfigError(key).
double parse_number(std::string_view text, std::string_view key);

/// Comma-separated numbers; blank text is the empty list.
std::vector<double> parse_list(std::string_view text, std::string_view key);
std::string format_list(const std::vector<double>& xs);

/// Reads `key = value` lines; '#' starts a comment. Unknown keys, repeated
/// keys and malformed lines throw ConfigError.
void read_config(std::istream& in, RunConfig& config);
RunConfig load_config(const std::string& path);

void write_config(std::ostream& out, const RunConfig& config);
void save_config(const std::string& path, const RunConfig& config);

struct ParamsDeleter {
  void operator()(dmkt_params* p) const { dmkt_params_destroy(p); }
};
using ParamsHandle = std::unique_ptr<dmkt_params, ParamsDeleter>;

/// Builds and validates library parameters. Throws ConfigError naming the
/// offending key.
ParamsHandle make_params(const RunConfig& config);

}  // namespace dmkt::cli

#endif  // DMKT_TOOLS_RUN_CONFIG_HPP
