// Copyright 2026 The qcrb Authors
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

#include <gtest/gtest.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <nlohmann/json.hpp>

#include "golden_cases.h"
#include "qcrb/error.h"

namespace qcrb {
namespace {

using nlohmann::json;
using testing::CliResult;
using testing::data_path;
using testing::run_cli;

json parse(const CliResult& r) { return json::parse(r.out); }

std::string temp_file(const std::string& name, const std::string& contents) {
  std::filesystem::path p = std::filesystem::temp_directory_path() / ("qcrb_cli_test_" + name);
  std::ofstream(p) << contents;
  return p.string();
}

TEST(Cli, QfimOfGhz) {
  CliResult r = run_cli({"qfim", "--probe", data_path("ghz.json")});
  ASSERT_EQ(r.status, cli::kExitOk) << r.err;
  json m = parse(r)["information_matrix"]["matrix"];
  EXPECT_EQ(m, json::parse("[[1,-2],[-2,4]]"));
}

TEST(Cli, AnalyzeGhzDistributed) {
  CliResult r = run_cli({"analyze", "--probe", data_path("ghz.json"), "--scenario", "dqs", "--weight",
                         "0.3333333333,-0.6666666667", "--format", "json"});
  ASSERT_EQ(r.status, cli::kExitOk) << r.err;
  json j = parse(r);
  EXPECT_EQ(j["strategy"]["branch"], "DQS/non-invertible/w-in-support");
  EXPECT_NEAR(j["strategy"]["bounds"]["exact_bound"].get<double>(), 1.0 / 9, 1e-9);
}

TEST(Cli, AnalyzeCyclicFour) {
  CliResult r = run_cli({"analyze", "--probe", data_path("cyclic4.json"), "--scenario", "se",
                         "--provenance", "closed"});
  ASSERT_EQ(r.status, cli::kExitOk) << r.err;
  json s = parse(r)["strategy"];
  EXPECT_EQ(s["rank"], 3);
  // The generic engine gives a different matrix with the same kernel.
  CliResult g = run_cli({"analyze", "--probe", data_path("cyclic4.json"), "--scenario", "se"});
  EXPECT_NEAR(parse(g)["strategy"]["bounds"]["exact_bound"].get<double>(), 3, 1e-12);
  EXPECT_NEAR(s["bounds"]["exact_bound"].get<double>(), 5, 1e-12);
  json k = s["decomposition"]["kernel_basis"][0];
  const double expected[] = {0.5, -0.5, 0.5, -0.5};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(k[i].get<double>(), expected[i], 1e-12);
}

TEST(Cli, ReduceAndBoundsAndFamilies) {
  CliResult red = run_cli({"reduce", "--probe", data_path("ghz.json"), "--weight", "1,0"});
  ASSERT_EQ(red.status, cli::kExitOk) << red.err;
  json j = parse(red);
  EXPECT_EQ(j["reduced"]["rank"], 1);
  EXPECT_NEAR(j["trace_consistency"]["trace_pinv"].get<double>(), 0.2, 1e-15);
  EXPECT_NEAR(j["reduced"]["projected_weight"][1].get<double>(), -0.4, 1e-15);

  CliResult b = run_cli({"bounds", "--probe", data_path("noon.json"), "--weight", "1,0"});
  ASSERT_EQ(b.status, cli::kExitOk) << b.err;
  EXPECT_NEAR(parse(b)["bounds"]["gap"].get<double>(), 0.375, 1e-14);

  CliResult f = run_cli({"families"});
  ASSERT_EQ(f.status, cli::kExitOk);
  EXPECT_NE(f.out.find("cyclic_paired"), std::string::npos);
}

TEST(Cli, Simulate) {
  CliResult r = run_cli({"simulate", "--probe", data_path("ghz1.json"), "--povm",
                         data_path("plus_minus.json"), "--x", "1.0471975511965976", "--shots",
                         "2000", "--reps", "50", "--seed", "3"});
  ASSERT_EQ(r.status, cli::kExitOk) << r.err;
  json run = parse(r)["run"];
  EXPECT_EQ(run["estimates"].size(), 50u);
  EXPECT_NEAR(run["classical_fim"][0][0].get<double>(), 1.0, 1e-12);
  CliResult again = run_cli({"simulate", "--probe", data_path("ghz1.json"), "--povm",
                             data_path("plus_minus.json"), "--x", "1.0471975511965976", "--shots",
                             "2000", "--reps", "50", "--seed", "3"});
  EXPECT_EQ(r.out, again.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"qfim", "--probe", data_path("ghz.json"), "--bogus"}).status, cli::kExitInput);
  EXPECT_EQ(run_cli({"frobnicate"}).status, cli::kExitInput);
  EXPECT_EQ(run_cli({"qfim"}).status, cli::kExitInput);
  EXPECT_EQ(run_cli({"qfim", "--probe", "/nonexistent/probe.json"}).status, cli::kExitInput);
  EXPECT_EQ(run_cli({"analyze", "--probe", data_path("ghz.json"), "--scenario", "dqs"}).status,
            cli::kExitInput);
  EXPECT_EQ(run_cli({"qfim", "--probe", data_path("ghz.json"), "--tol", "abc"}).status,
            cli::kExitInput);
  // The XY model at lambda = h = 0 is a numerical rejection.
  std::string critical =
      temp_file("critical.json", R"({"family":"xy_three_site","lambda":0,"gamma":1,"h":0})");
  EXPECT_EQ(run_cli({"qfim", "--probe", critical}).status, cli::kExitNumerical);
  EXPECT_EQ(run_cli({"--help"}).status, cli::kExitOk);
  EXPECT_EQ(run_cli({"--version"}).status, cli::kExitOk);
}

TEST(Cli, MalformedDocumentsGiveFieldPaths) {
  struct Case {
    const char* name;
    const char* doc;
    const char* path;
  };
  const Case cases[] = {
      {"syntax", "{\"family\": ", "parse"},
      {"nufield", R"({"family":"ghz_like","nu":[1,"x"]})", "nu[1]"},
      {"family", R"({"family":"bogus","nu":[1]})", "family"},
      {"both", R"({"family":"ghz_like","nu":[1],"m":3})", ""},
      {"unknown", R"({"family":"ghz_like","nu":[1],"colour":3})", "colour"},
      {"m", R"({"family":"cyclic_paired","m":1})", "m"},
      {"kets", R"({"family":"custom","kets":[{"label":"a","re":1,"im":0,"encoding":[0]},{"re":1}]})",
       "kets[1]"},
      {"array", "[1,2,3]", ""},
  };
  for (const Case& c : cases) {
    std::string file = temp_file(std::string("bad_") + c.name + ".json", c.doc);
    CliResult r = run_cli({"qfim", "--probe", file});
    EXPECT_EQ(r.status, cli::kExitInput) << c.name << ": " << r.err;
    EXPECT_NE(r.err.find(c.path), std::string::npos) << c.name << ": " << r.err;
    EXPECT_TRUE(r.out.empty()) << c.name;
  }
}

TEST(Cli, ToleranceFlagBeatsEnvironmentBeatsDefault) {
  auto tol_of = [](const CliResult& r) { return parse(r)["tolerance"]; };
  std::vector<std::string> base = {"qfim", "--probe", data_path("ghz.json")};

  json d = tol_of(run_cli(base));
  EXPECT_EQ(d["explicit"], false);
  EXPECT_EQ(d["mode"], "relative");

  json e = tol_of(run_cli(base, "abs:1e-6"));
  EXPECT_EQ(e["mode"], "absolute");
  EXPECT_DOUBLE_EQ(e["value"].get<double>(), 1e-6);

  std::vector<std::string> flagged = base;
  flagged.insert(flagged.end(), {"--tol", "rel:1e-9"});
  json f = tol_of(run_cli(flagged, "abs:1e-6"));
  EXPECT_EQ(f["mode"], "relative");
  EXPECT_DOUBLE_EQ(f["value"].get<double>(), 1e-9);

  EXPECT_EQ(run_cli(base, "nonsense").status, cli::kExitInput);
}

TEST(Cli, FileWeightWinsWithWarning) {
  std::string probe =
      temp_file("weighted.json", R"({"family":"ghz_like","nu":[1,-2],"weight":[1,-2]})");
  CliResult r = run_cli({"bounds", "--probe", probe, "--weight", "2,1"});
  ASSERT_EQ(r.status, cli::kExitOk) << r.err;
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_TRUE(parse(r)["bounds"]["estimable"].get<bool>());
}

TEST(Cli, ParseTolerance) {
  EXPECT_EQ(cli::parse_tolerance("1e-9").mode, TolerancePolicy::Mode::kRelative);
  EXPECT_EQ(cli::parse_tolerance("abs:0.5").mode, TolerancePolicy::Mode::kAbsolute);
  EXPECT_DOUBLE_EQ(*cli::parse_tolerance("abs:0.5").value, 0.5);
  EXPECT_THROW(cli::parse_tolerance("abs:"), InputError);
  EXPECT_THROW(cli::parse_tolerance("-1"), InputError);
}

// Splits text output into tokens and keeps those that parse fully as numbers.
std::vector<std::string> numeric_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    double v;
    auto [p, ec] = std::from_chars(cur.data(), cur.data() + cur.size(), v);
    if (!cur.empty() && ec == std::errc() && p == cur.data() + cur.size()) out.push_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '[' || c == ']' || c == ',' ||
        c == '|' || c == '=' || c == '(' || c == ')') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

TEST(Cli, EveryTextNumberAppearsInJson) {
  const std::vector<std::vector<std::string>> commands = {
      {"qfim", "--probe", data_path("ghz.json")},
      {"analyze", "--probe", data_path("cyclic4.json"), "--provenance", "both"},
      {"bounds", "--probe", data_path("noon.json"), "--weight", "1,0"},
      {"reduce", "--probe", data_path("ghz.json"), "--weight", "1,0"},
      {"analyze", "--probe", data_path("ghz.json"), "--scenario", "dqs", "--weight", "2,1"},
  };
  for (const auto& cmd : commands) {
    CliResult j = run_cli(cmd);
    std::vector<std::string> text_cmd = cmd;
    text_cmd.insert(text_cmd.end(), {"--format", "text"});
    CliResult t = run_cli(text_cmd);
    ASSERT_EQ(j.status, 0) << j.err;
    ASSERT_EQ(t.status, 0) << t.err;
    std::vector<std::string> tokens = numeric_tokens(t.out);
    EXPECT_FALSE(tokens.empty());
    for (const std::string& tok : tokens) {
      EXPECT_NE(j.out.find(tok), std::string::npos) << cmd[0] << ": text number " << tok;
    }
  }
}

TEST(Cli, GoldenReportsAreByteIdentical) {
  const bool update = std::getenv("QCRB_UPDATE_GOLDEN") != nullptr;
  for (const testing::GoldenCase& g : testing::golden_cases()) {
    CliResult first = run_cli(g.args);
    CliResult second = run_cli(g.args);
    ASSERT_EQ(first.status, 0) << g.name << ": " << first.err;
    EXPECT_EQ(first.out, second.out) << g.name;
    if (!g.branch.empty()) EXPECT_EQ(parse(first)["strategy"]["branch"], g.branch) << g.name;
    if (update) {
      std::ofstream(testing::golden_path(g.name), std::ios::binary) << first.out;
      continue;
    }
    std::optional<std::string> stored = testing::read_file(testing::golden_path(g.name));
    ASSERT_TRUE(stored.has_value()) << "missing golden " << g.name;
    EXPECT_EQ(first.out, *stored) << g.name;
  }
}

}  // namespace
}  // namespace qcrb
