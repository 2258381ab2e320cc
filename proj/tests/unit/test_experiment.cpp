// SPDX-License-Identifier: Apache-2.0
//
// nfbeam - near-field beamforming simulator for obstructed links
// Copyright (C) 2026 nfbeam contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "nfbeam/experiment.hpp"
#include "nfbeam/io.hpp"
#include "../support/fixtures.hpp"

using namespace nfbeam;
using nfbeam_tests::tiny_scenario;
using nlohmann::json;

namespace
{

std::filesystem::path work_dir(const std::string &name)
{
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "nfbeam_exp_tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json tiny_scenario_json()
{
    return json::parse(scenario_to_json(tiny_scenario()));
}

} // namespace

TEST_CASE("seeded uniforms are pinned to the 64-bit twister stream")
{
    Rng a(42);
    CHECK(a.uniform() == 0.75515553295453897);
    CHECK(a.uniform() == 0.63903139385469743);
    CHECK(a.uniform() == 0.7521452007480266);
    CHECK(a.uniform() == 0.13627268363243705);

    Rng b(7);
    CHECK(b.uniform() == 0.75438530415285798);
    const double lo = -2.0, hi = 6.0;
    CHECK(b.uniform(lo, hi) == lo + (hi - lo) * 0.94930120289264419);

    // identical seeds replay identical streams
    Rng c(42), d(42);
    for (int i = 0; i < 5; ++i)
        CHECK(c.uniform() == d.uniform());
}

TEST_CASE("experiment kind names roundtrip")
{
    for (ExperimentKind k :
         {ExperimentKind::beam_pattern, ExperimentKind::power_map, ExperimentKind::se_vs_power,
          ExperimentKind::blockage_sweep, ExperimentKind::frequency_sweep, ExperimentKind::codebook_sweep,
          ExperimentKind::obstacle_sweep, ExperimentKind::hybrid_gap, ExperimentKind::correlation_curves})
        CHECK(experiment_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS((void)experiment_kind_from_string("teleport"), SpecError);
}

TEST_CASE("config parsing and validation")
{
    json doc;
    doc["kind"] = "power_map";
    doc["scenario"] = tiny_scenario_json();
    doc["seed"] = 9;
    doc["threads"] = 2;
    doc["quick"] = true;
    doc["out_dir"] = "some/dir";
    doc["codebook"] = {{"angle", {{"count", 12}}}, {"decay", {{"count", 4}}}};
    doc["params"] = {{"x_stride", 3}};

    const ExperimentConfig cfg = experiment_from_json(doc);
    CHECK(cfg.kind == ExperimentKind::power_map);
    CHECK(cfg.scenario.num_elements == tiny_scenario().num_elements);
    CHECK(cfg.seed == 9);
    CHECK(cfg.threads == 2);
    CHECK(cfg.quick);
    CHECK(cfg.out_dir == "some/dir");
    CHECK(cfg.codebook.angle.count == 12);
    CHECK(cfg.codebook.decay.count == 4);
    CHECK(cfg.codebook.distance.count == 20); // untouched axes keep their defaults
    CHECK(cfg.params.at("x_stride") == 3);

    CHECK_THROWS_AS((void)experiment_from_json(json::array()), SpecError);
    CHECK_THROWS_AS((void)experiment_from_json(json{{"scenario", tiny_scenario_json()}}), SpecError);
    CHECK_THROWS_AS((void)experiment_from_json(json{{"kind", "power_map"}}), SpecError); // no scenario source
    json bad = doc;
    bad["threads"] = "many";
    CHECK_THROWS_AS((void)experiment_from_json(bad), SpecError);
    CHECK_THROWS_AS((void)load_experiment("/nonexistent/config.json"), IOError);
}

TEST_CASE("config hash is canonical and input-sensitive")
{
    CHECK(config_hash(json{{"a", 1}}) == 3667370098608730867ULL);

    json a, b;
    a["x"] = 1;
    a["y"] = "s";
    b["y"] = "s";
    b["x"] = 1; // insertion order must not matter
    CHECK(config_hash(a) == config_hash(b));

    json c = a;
    c["x"] = 2;
    CHECK(config_hash(c) != config_hash(a));
}

TEST_CASE("beam pattern run emits weights, field and heatmap per beam")
{
    const auto dir = work_dir("pattern");
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::beam_pattern;
    cfg.scenario = tiny_scenario();
    cfg.out_dir = dir.string();
    cfg.params["x_stride"] = 8;
    cfg.params["beams"] = json::array({{{"kind", "focused"}, {"theta", 0.1}, {"range", 0.4}},
                                       {{"kind", "classic_airy"}, {"scale", 0.004}, {"decay", -0.3}}});

    CHECK(run_experiment(cfg) == 0);

    for (const char *name : {"beam0_weights.csv", "beam0_field.csv", "beam0_intensity.pgm", "beam1_weights.csv",
                             "beam1_field.csv", "beam1_intensity.pgm", "run_manifest.json"})
        CHECK(std::filesystem::exists(dir / name));

    const json manifest = json::parse(slurp(dir / "run_manifest.json"));
    CHECK(manifest.at("format") == "nfbeam-manifest-v1");
    CHECK(manifest.at("kind") == "beam_pattern");
    CHECK(manifest.at("metrics").at("beams") == 2);
    CHECK(manifest.contains("config_hash"));
    REQUIRE(manifest.at("outputs").size() == 6);
    CHECK(std::is_sorted(manifest.at("outputs").begin(), manifest.at("outputs").end()));

    // loaded weights reproduce the requested beam
    BeamParams p;
    p.kind = BeamKind::focused;
    p.theta = 0.1;
    p.range = 0.4;
    const Eigen::VectorXcd w = load_weights_csv((dir / "beam0_weights.csv").string());
    CHECK((w - beam_weights(cfg.scenario, p)).norm() == 0.0);
}

TEST_CASE("reruns reproduce every output byte for byte")
{
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::power_map;
    cfg.scenario = tiny_scenario();
    cfg.scenario.obstacles.push_back({0.4, 0.5, 0.005, 0.2});
    cfg.seed = 12345;
    cfg.quick = true;
    cfg.params["x_stride"] = 16;

    const auto dir_a = work_dir("rerun_a");
    const auto dir_b = work_dir("rerun_b");
    cfg.out_dir = dir_a.string();
    CHECK(run_experiment(cfg) == 0);
    cfg.out_dir = dir_b.string();
    CHECK(run_experiment(cfg) == 0);

    int compared = 0;
    for (const auto &entry : std::filesystem::directory_iterator(dir_a))
    {
        const auto name = entry.path().filename();
        CAPTURE(name.string());
        CHECK(slurp(entry.path()) == slurp(dir_b / name));
        ++compared;
    }
    CHECK(compared >= 4); // field, heatmap, training table, manifest
}

TEST_CASE("quick mode shrinks every codebook axis to a quarter")
{
    const auto dir = work_dir("quick");
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::correlation_curves;
    cfg.scenario = tiny_scenario();
    cfg.quick = true;
    cfg.out_dir = dir.string();
    CHECK(run_experiment(cfg) == 0);

    const json manifest = json::parse(slurp(dir / "run_manifest.json"));
    const json &book = manifest.at("codebook");
    CHECK(book.at("angle").at("count") == 22);    // 90 / 4
    CHECK(book.at("distance").at("count") == 5);  // 20 / 4
    CHECK(book.at("scale").at("count") == 2);     // clamped at the floor of 2
    CHECK(book.at("decay").at("count") == 2);
    CHECK(book.at("curvature").at("count") == 5); // 21 / 4

    CHECK(std::filesystem::exists(dir / "correlation_decay.csv"));
    CHECK(std::filesystem::exists(dir / "correlation_scale.csv"));
    const json &m = manifest.at("metrics");
    REQUIRE(m.contains("decay_adjacent"));
    REQUIRE(m.contains("scale_separation"));
    for (const json &v : m.at("decay_adjacent"))
    {
        CHECK(v.get<double>() <= 1.0 + 1e-12);
        CHECK(v.get<double>() >= 0.0);
    }
}

TEST_CASE("random user placement respects the obstacles or gives up loudly")
{
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::power_map;
    cfg.scenario = tiny_scenario();
    // cover the entire default placement box so rejection sampling must fail
    cfg.scenario.obstacles.push_back({0.2, 1.0, -0.16, 0.16});
    cfg.quick = true;
    cfg.out_dir = work_dir("reject").string();
    CHECK_THROWS_AS((void)run_experiment(cfg), GeometryError);
}
