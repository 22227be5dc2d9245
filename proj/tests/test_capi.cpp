/*
 * Copyright 2026 the finslerfoot authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "finslerfoot/finslerfoot.h"

namespace {

const char* kHalfPlane = R"({
  "metric": {"kind": "randers", "b": [0.5, 0]},
  "boundary": {"kind": "line", "point": [0, 0], "normal": [0, 1]},
  "box": [-1.5, 1.5, 0.0, 1.5],
  "fan_count": 96
})";

std::string fresh_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("ffcapi_" + tag);
    std::filesystem::remove_all(dir);
    return dir.string();
}

}  // namespace

TEST_CASE("session lifecycle and version") {
    CHECK(std::string(ff_version()).rfind("finslerfoot", 0) == 0);

    ff_session* s = nullptr;
    char err[256] = {0};
    CHECK(ff_session_open(kHalfPlane, &s, err, sizeof err) == FF_OK);
    REQUIRE(s != nullptr);
    CHECK(ff_session_dimension(s) == 2);
    CHECK(std::string(ff_session_error(s)).empty());
    ff_session_close(s);
}

TEST_CASE("invalid config is reported through the error buffer") {
    ff_session* s = nullptr;
    char err[256] = {0};
    CHECK(ff_session_open("{\"metric\": 3}", &s, err, sizeof err) == FF_CONFIG_ERROR);
    CHECK(s == nullptr);
    CHECK(err[0] != '\0');
    CHECK(ff_session_open(nullptr, &s, err, sizeof err) == FF_INVALID_ARGUMENT);
}

TEST_CASE("metric evaluation through the C surface") {
    ff_session* s = nullptr;
    REQUIRE(ff_session_open(kHalfPlane, &s, nullptr, 0) == FF_OK);
    double xi[2] = {0.3, 0.7};
    double v[2] = {1.0, 0.0};
    double phi = 0.0;
    CHECK(ff_metric_eval(s, xi, v, &phi) == FF_OK);
    CHECK(phi == doctest::Approx(1.5));
    double zero[2] = {0.0, 0.0};
    CHECK(ff_metric_eval(s, xi, zero, &phi) == FF_DOMAIN_ERROR);
    CHECK(std::string(ff_session_error(s)).find("v = 0") != std::string::npos);
    ff_session_close(s);
}

TEST_CASE("distance query matches the closed form") {
    ff_session* s = nullptr;
    REQUIRE(ff_session_open(kHalfPlane, &s, nullptr, 0) == FF_OK);
    double X[2] = {0.0, 1.0};
    double d = 0.0, foot[2] = {0, 0}, grad[2] = {0, 0};
    CHECK(ff_distance(s, X, &d, foot, grad) == FF_OK);
    CHECK(d == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-8));
    CHECK(foot[0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-5));
    CHECK(std::abs(foot[1]) < 1e-8);
    CHECK(std::abs(grad[0]) < 1e-8);
    CHECK(grad[1] == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-8));

    double outside[2] = {0.0, -0.5};
    CHECK(ff_distance(s, outside, &d, nullptr, nullptr) == FF_DOMAIN_ERROR);
    ff_session_close(s);
}

TEST_CASE("conjugate distance through the C surface") {
    const char* disk = R"({
      "metric": {"kind": "euclidean"},
      "boundary": {"kind": "circle", "radius": 1.0},
      "box": [-1, 1, -1, 1]
    })";
    ff_session* s = nullptr;
    REQUIRE(ff_session_open(disk, &s, nullptr, 0) == FF_OK);
    double st = 0.0;
    CHECK(ff_conjugate_distance(s, 0.37, &st) == FF_OK);
    CHECK(st == doctest::Approx(1.0).epsilon(1e-5));
    ff_session_close(s);

    ff_session* line = nullptr;
    REQUIRE(ff_session_open(kHalfPlane, &line, nullptr, 0) == FF_OK);
    CHECK(ff_conjugate_distance(line, 0.0, &st) == FF_OK);
    CHECK(std::isinf(st));
    ff_session_close(line);
}

TEST_CASE("ff_run dispatches and rejects unknown commands") {
    ff_session* s = nullptr;
    const char* tiny = R"({
      "metric": {"kind": "euclidean"},
      "boundary": {"kind": "circle", "radius": 1.0},
      "box": [-1, 1, -1, 1],
      "h_grid": 0.1,
      "fan_count": 32,
      "s_max": 1.5
    })";
    REQUIRE(ff_session_open(tiny, &s, nullptr, 0) == FF_OK);
    std::string out = fresh_dir("run");
    CHECK(ff_run(s, "conjugate", out.c_str()) == FF_OK);
    CHECK(std::filesystem::exists(std::filesystem::path(out) / "conjugate.csv"));
    CHECK(ff_run(s, "bogus", out.c_str()) == FF_CONFIG_ERROR);
    CHECK(ff_run(s, nullptr, out.c_str()) == FF_INVALID_ARGUMENT);
    ff_session_close(s);
}

TEST_CASE("cli end to end: usage, config errors, version") {
    std::string cli = FF_CLI_PATH;
    REQUIRE(std::filesystem::exists(cli));
    auto run = [&](const std::string& args) {
        int rc = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(rc);
    };
    CHECK(run("") == 2);
    CHECK(run("version") == 0);
    CHECK(run("field") == 2);                          // missing --config
    CHECK(run("field --config /nonexistent.json") == 2);
    CHECK(run("wrongcmd --config /nonexistent.json") == 2);

    // a real tiny run through the binary
    auto dir = std::filesystem::temp_directory_path() / "ffcli_run";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto cfg_path = dir / "cfg.json";
    {
        FILE* f = std::fopen(cfg_path.c_str(), "w");
        REQUIRE(f);
        std::fputs(R"({
          "metric": {"kind": "euclidean"},
          "boundary": {"kind": "circle", "radius": 1.0},
          "box": [-1, 1, -1, 1],
          "h_grid": 0.1,
          "fan_count": 32,
          "s_max": 1.5
        })",
                   f);
        std::fclose(f);
    }
    CHECK(run("field --config " + cfg_path.string() + " --out " + (dir / "out").string() +
              " --threads 2") == 0);
    CHECK(std::filesystem::exists(dir / "out" / "class.ppm"));
}
