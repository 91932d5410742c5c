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

#include <sstream>
#include <string>

#include "doctest.h"
#include "run_config.hpp"

namespace dmkt::cli {
namespace {

RunConfig reparse(const RunConfig& c) {
  std::stringstream ss;
  write_config(ss, c);
  RunConfig back;
  read_config(ss, back);
  return back;
}

std::string error_key(const std::string& text) {
  std::istringstream in(text);
  RunConfig c;
  try {
    read_config(in, c);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

TEST_SUITE("run_config") {
  TEST_CASE("defaults come from the library") {
    const RunConfig c;
    CHECK(c.get("c0") == 5.0 / 6.0);
    CHECK(c.get("F") == 5e-4);
    CHECK(c.get("grid_n") == 400.0);
    CHECK(c.params.size() == dmkt_params_key_count());
    CHECK(c.format == OutputFormat::Table);
    CHECK_FALSE(c.grid.has_value());
    CHECK(config_keys().size() == c.params.size() + 11);
  }

  TEST_CASE("round trip of defaults and edited values") {
    RunConfig c;
    CHECK(reparse(c) == c);
    c.set("c0", "5/6");
    c.set("delta", "0.1");
    c.set("F", "7e-4");
    c.set("grid", "3/6, 4/6,5/6 ,1");
    c.set("f_levels", "");
    c.set("param", "delta");
    c.set("d0", "0,0.004");
    c.set("mode", "deter");
    c.set("format", "json");
    c.set("out", "results dir");
    c.set("seed", "18446744073709551615");
    c.set("draws", "25");
    c.set("dense", "25");
    c.set("threads", "3");
    const RunConfig back = reparse(c);
    CHECK(back == c);
    CHECK(back.grid->at(0) == 0.5);
    CHECK(back.f_levels.has_value());
    CHECK(back.f_levels->empty());
    CHECK(back.seed == 18446744073709551615ull);
    CHECK(back.out == "results dir");
  }

  TEST_CASE("comments and blank lines") {
    std::istringstream in("# header\n\n  c0 = 0.5   # inline\nF=1e-3\n");
    RunConfig c;
    read_config(in, c);
    CHECK(c.get("c0") == 0.5);
    CHECK(c.get("F") == 1e-3);
  }

  TEST_CASE("errors name the key") {
    CHECK(error_key("gamma = 1\n") == "gamma");
    CHECK(error_key("c0 = abc\n") == "c0");
    CHECK(error_key("c0 = 1\nc0 = 2\n") == "c0");
    CHECK(error_key("c0 1\n") == "line 1");
    CHECK(error_key("format = xml\n") == "format");
    CHECK(error_key("mode = maybe\n") == "mode");
    CHECK(error_key("param = k\n") == "param");
    CHECK(error_key("draws = 0\n") == "draws");
    CHECK(error_key("seed = -1\n") == "seed");
    CHECK(error_key("dense = 1\n") == "dense");
    CHECK(error_key("grid = 1,,2\n") == "grid");
    CHECK(error_key("c0 = 1/0\n") == "c0");
  }

  TEST_CASE("semantic validation happens in make_params") {
    RunConfig c;
    c.set("eta_0", "1.5");
    try {
      (void)make_params(c);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "eta_0");
      CHECK(std::string(e.what()).find("eta_max") != std::string::npos);
    }
    RunConfig ok;
    CHECK(make_params(ok) != nullptr);
  }

  TEST_CASE("number formatting is shortest round trip") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(5.0 / 6.0) == "0.8333333333333334");
    CHECK(parse_number(format_number(1.0 / 3.0), "x") == 1.0 / 3.0);
    CHECK(parse_number("+2", "x") == 2.0);
    CHECK(parse_list("  ", "x").empty());
    CHECK(format_list({0.5, 1.0}) == "0.5,1");
  }
}

}  // namespace
}  // namespace dmkt::cli
