// Copyright 2026 The eprw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "eprw/cli/commands.hpp"
#include "eprw/errors.hpp"

using namespace eprw;
using namespace eprw::cli;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "eprw");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

std::filesystem::path scratch(const std::string &name) {
  const auto dir = std::filesystem::temp_directory_path() / "eprw_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("ranges") {
  const Range r = parse_range("0,1,5");
  CHECK(r.values() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(parse_range("2,2,1").values() == std::vector<double>{2.0});
  CHECK(Range{0.0, 3.0, 100}.values().back() == 3.0);
  CHECK_THROWS_AS(parse_range("1,0,3"), DomainError);
  CHECK_THROWS_AS(parse_range("0,1,0"), DomainError);
  CHECK_THROWS_AS(parse_range("0,1"), DomainError);
  CHECK_THROWS_AS(parse_range("0,x,3"), DomainError);
}

TEST_CASE("classify reports the closed forms") {
  const Result r = invoke({"classify", "--nbar", "0.5", "--m", "0.8", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const json doc = json::parse(r.out);
  const json &d = doc["data"];
  CHECK(d["region"] == "Entangled");
  CHECK(d["witness"].get<double>() == doctest::Approx(-(0.64 - 0.25) / (2.0 * (0.75 + 0.64))));
  CHECK(d["nu_minus"].get<double>() == doctest::Approx(0.2));
  CHECK(d["squeezed"] == true);
  CHECK(doc["manifest"]["command"] == "classify");
  CHECK(doc["manifest"]["params"]["nbar"] == 0.5);
  CHECK(doc["manifest"].contains("version"));
  CHECK(doc["manifest"].contains("timestamp"));

  CHECK(json::parse(invoke({"classify", "--nbar", "2", "--m", "1", "--format", "json"}).out)["data"]["region"] ==
        "Separable");

  const Result text = invoke({"classify", "--nbar", "0.5", "--m", "0.8"});
  CHECK(text.out.find("region=Entangled\n") != std::string::npos);
}

TEST_CASE("classify flags unphysical input but succeeds") {
  const Result r = invoke({"classify", "--nbar", "0.1", "--m", "1", "--format", "json"});
  CHECK(r.code == kExitOk);
  const json d = json::parse(r.out)["data"];
  CHECK(d["region"] == "Unphysical");
  CHECK(d["warning"].is_string());
  CHECK(d["witness"].is_null());
}

TEST_CASE("classify rejects invalid numerics") {
  CHECK(invoke({"classify", "--nbar", "nan", "--m", "1"}).code == kExitInvalidInput);
  CHECK(invoke({"classify", "--nbar", "-1", "--m", "0"}).code == kExitInvalidInput);
  CHECK(invoke({"classify", "--nbar", "abc", "--m", "0"}).code == kExitInvalidInput);
  CHECK(invoke({"classify", "--m", "0"}).code == kExitInvalidInput);
  CHECK(invoke({"classify", "--nbar", "1", "--m", "0", "--format", "xml"}).code == kExitInvalidInput);
  CHECK(invoke({"frobnicate"}).code == kExitInvalidInput);
  CHECK(invoke({}).code == kExitInvalidInput);
  CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("vacuum classify notes the degenerate witness") {
  const json d = json::parse(invoke({"classify", "--nbar", "0", "--m", "0", "--format", "json"}).out)["data"];
  CHECK(d["region"] == "PureBoundary");
  CHECK(d["witness"].is_null());
  CHECK(d["warning"].is_string());
}

TEST_CASE("single-point sweep equals classify") {
  const Result s = invoke({"sweep", "--nbar-range", "0.5,0.5,1", "--m-range", "0.8,0.8,1", "--format", "json"});
  REQUIRE(s.code == kExitOk);
  const json rows = json::parse(s.out)["data"];
  REQUIRE(rows.size() == 1);
  const json c = json::parse(invoke({"classify", "--nbar", "0.5", "--m", "0.8", "--format", "json"}).out)["data"];
  CHECK(rows[0]["region"] == c["region"]);
  CHECK(rows[0]["witness"] == c["witness"]);
  CHECK(rows[0]["visibility"] == c["visibility"]);
  CHECK(rows[0]["ppt_nu_minus"] == c["nu_minus"]);
}

TEST_CASE("sweep row order and diagonal sign flip") {
  const Result s = invoke({"sweep", "--nbar-range", "0.1,2.1,21", "--m-range", "0.1,2.1,21", "--format", "json",
                           "--outputs", "witness"});
  REQUIRE(s.code == kExitOk);
  const json rows = json::parse(s.out)["data"];
  REQUIRE(rows.size() == 21 * 21);
  CHECK(rows[0]["nbar"] == 0.1);
  CHECK(rows[1]["m"] == rows[0]["m"]);
  CHECK(rows[21]["m"].get<double>() > rows[0]["m"].get<double>());
  CHECK_FALSE(rows[0].contains("region"));
  for (const auto &row : rows) {
    if (row["witness"].is_null()) continue;
    const double n = row["nbar"], m = row["m"], w = row["witness"];
    if (std::abs(m - n) < 1e-9) continue;
    CHECK((w < 0.0) == (m > n));
  }
}

TEST_CASE("sweep CSV with manifest sidecar") {
  const auto out = scratch("sweep.csv");
  std::filesystem::remove(out.string() + ".manifest.json");
  const Result s = invoke({"sweep", "--nbar-range", "0,3,4", "--m-range", "0,3,4", "--out", out.string()});
  REQUIRE(s.code == kExitOk);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("nbar,m,region,witness,visibility,ppt_nu_minus\r\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
  const json man = json::parse(slurp(out.string() + ".manifest.json"));
  CHECK(man["command"] == "sweep");
  CHECK(man["params"]["nbar_range"] == json::array({0.0, 3.0, 4}));
}

TEST_CASE("sweep configuration file") {
  const auto cfg = scratch("sweep.json");
  std::ofstream(cfg) << R"({"nbar_range": {"min": 1, "max": 2, "steps": 2}, "m_range": [0, 0, 1],
                          "outputs": ["region"], "format": "json"})";
  const Result s = invoke({"sweep", "--config", cfg.string()});
  REQUIRE(s.code == kExitOk);
  const json rows = json::parse(s.out)["data"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[1]["nbar"] == 2.0);
  CHECK(rows[1]["region"] == "Separable");

  std::istringstream bad(R"({"outputs": ["colour"]})");
  CHECK_THROWS_AS(load_sweep_config(bad), DomainError);
  std::istringstream broken("{");
  CHECK_THROWS_AS(load_sweep_config(broken), DomainError);
  CHECK(invoke({"sweep", "--config", scratch("missing.json").string()}).code == kExitInvalidInput);
}

TEST_CASE("sweep rejects an unwritable output path") {
  const Result s = invoke({"sweep", "--nbar-range", "0,1,2", "--m-range", "0,1,2", "--out",
                           "/nonexistent-dir/x.csv"});
  CHECK(s.code == kExitInvalidInput);
  CHECK(s.err.find("cannot open") != std::string::npos);
}

TEST_CASE("hom curve") {
  const Result r = invoke({"hom", "--nbar", "1", "--m", "0", "--tau-c", "2", "--tau-range", "0,10,3",
                           "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const json d = json::parse(r.out)["data"];
  CHECK(d["points"][0]["p"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(d["points"][2]["p"].get<double>() > 0.999999);
  const json ent = json::parse(invoke({"hom", "--nbar", "0.5", "--m", "0.8", "--tau-c", "1", "--format",
                                       "json"}).out)["data"];
  CHECK(ent["points"].size() == 201);
  CHECK(ent["points"][100]["tau"] == 0.0);
  CHECK(ent["points"][100]["p"].get<double>() < 0.5);

  CHECK(invoke({"hom", "--nbar", "1", "--m", "0"}).code == kExitInvalidInput);
  CHECK(invoke({"hom", "--nbar", "1", "--m", "0", "--tau-c", "0"}).code == kExitInvalidInput);
  CHECK(invoke({"hom", "--nbar", "0", "--m", "0", "--tau-c", "1"}).code == kExitInvalidInput);
  CHECK(invoke({"hom", "--nbar", "0.1", "--m", "1", "--tau-c", "1"}).code == kExitInvalidInput);
}

TEST_CASE("homodyne simulation") {
  const auto records = scratch("records.csv");
  const Result r = invoke({"homodyne-sim", "--nbar", "0.5", "--m", "0.8", "--phi", "1.5707963267948966",
                           "--alpha2", "4", "--samples", "20000", "--seed", "7", "--records",
                           records.string()});
  REQUIRE(r.code == kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc["manifest"]["seeds"] == json::array({7}));
  CHECK(doc["data"]["strong_lo"].get<double>() == doctest::Approx(0.8));
  CHECK(doc["data"]["exact"].get<double>() == doctest::Approx(0.855));
  CHECK(doc["data"]["n_samples"] == 20000);
  std::ifstream is(records);
  CHECK(read_records_csv(is).size() == 20000);

  const Result again = invoke({"homodyne-sim", "--nbar", "0.5", "--m", "0.8", "--phi", "1.5707963267948966",
                               "--alpha2", "4", "--samples", "20000", "--seed", "7"});
  CHECK(json::parse(again.out)["data"].dump() == doc["data"].dump());

  CHECK(invoke({"homodyne-sim", "--nbar", "0.5", "--m", "0.8", "--alpha2", "4", "--samples", "1"}).code ==
        kExitInvalidInput);
  CHECK(invoke({"homodyne-sim", "--nbar", "0.1", "--m", "1", "--alpha2", "4"}).code == kExitInvalidInput);
}

TEST_CASE("verify passes on a small grid including the pure boundary") {
  std::ostringstream out, err;
  VerifyOptions opts;
  opts.nbar_range = {0.25, 1.0, 2};
  opts.fraction_range = {0.0, 1.0, 3};
  const int code = cmd_verify(opts, RunContext{&out, &err, "", "t"});
  CHECK(code == kExitOk);
  const json d = json::parse(out.str())["data"];
  CHECK(d["status"] == "pass");
  CHECK(d["points"].size() == 6);
  CHECK(d["max_deviation"].get<double>() < 1e-6);
}

TEST_CASE("verify catches a corrupted closed form") {
  std::ostringstream out, err;
  VerifyOptions opts;
  opts.nbar_range = {0.5, 0.5, 1};
  opts.fraction_range = {0.0, 0.5, 2};
  ClosedForms forms = default_closed_forms();
  forms.witness = [](double n, double m) { return (n * n - m * m) / (3.0 * n * n + m * m); };
  const int code = cmd_verify(opts, RunContext{&out, &err, "", "t"}, forms);
  CHECK(code == kExitVerifyFailure);
  CHECK(err.str().find("witness at nbar=0.5") != std::string::npos);
  CHECK(json::parse(out.str())["data"]["points"][0]["status"] == "fail");
}

TEST_CASE("verify reports convergence failure") {
  std::ostringstream out, err;
  VerifyOptions opts;
  opts.nbar_range = {2.0, 2.0, 1};
  opts.fraction_range = {0.0, 0.0, 1};
  opts.cutoff = 8;
  CHECK(cmd_verify(opts, RunContext{&out, &err, "", "t"}) == kExitVerifyFailure);
  CHECK(json::parse(out.str())["data"]["points"][0]["status"] == "no-convergence");
}

TEST_CASE("default cutoff from the environment") {
  ::setenv("EPRW_DEFAULT_CUTOFF", "8", 1);
  const Result r = invoke({"verify", "--nbar-range", "2,2,1", "--fraction-range", "0,0,1"});
  CHECK(r.code == kExitVerifyFailure);
  CHECK(json::parse(r.out)["manifest"]["params"]["cutoff"] == 8);
  ::setenv("EPRW_DEFAULT_CUTOFF", "many", 1);
  CHECK(invoke({"verify"}).code == kExitInvalidInput);
  ::unsetenv("EPRW_DEFAULT_CUTOFF");
}
