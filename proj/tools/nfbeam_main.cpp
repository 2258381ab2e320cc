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

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nfbeam/experiment.hpp"
#include "nfbeam/version.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"near-field beamforming simulator"};
    app.set_version_flag("--version", nfbeam::version_string);
    app.require_subcommand(1);

    CLI::App *sim = app.add_subcommand("simulate", "run an experiment described by a JSON config");
    std::string config_path, out_dir;
    long long seed = -1;
    int threads = 0;
    bool quick = false;
    sim->add_option("config", config_path, "experiment config JSON")->required();
    sim->add_option("--out", out_dir, "output directory (overrides config and NFBEAM_OUT)");
    sim->add_option("--seed", seed, "random seed (overrides config)");
    sim->add_option("--threads", threads, "worker threads for channel passes (overrides config)");
    sim->add_flag("--quick", quick, "shrink codebook axes 4x for a fast smoke run");

    CLI11_PARSE(app, argc, argv);

    try
    {
        nfbeam::ExperimentConfig cfg = nfbeam::load_experiment(config_path);
        if (!out_dir.empty())
            cfg.out_dir = out_dir;
        if (seed >= 0)
            cfg.seed = (std::uint64_t)seed;
        if (threads > 0)
            cfg.threads = threads;
        if (quick)
            cfg.quick = true;

        const int failures = nfbeam::run_experiment(cfg);
        std::cout << "experiment '" << nfbeam::to_string(cfg.kind) << "' finished, outputs in '"
                  << (cfg.out_dir.empty() ? "out" : cfg.out_dir) << "'\n";
        return failures == 0 ? 0 : 1;
    }
    catch (const nfbeam::Error &e)
    {
        nlohmann::json err = {{"error", {{"type", e.kind()}, {"message", e.what()}}}};
        std::cerr << err.dump() << std::endl;
        return 2;
    }
    catch (const std::exception &e)
    {
        nlohmann::json err = {{"error", {{"type", "unexpected"}, {"message", e.what()}}}};
        std::cerr << err.dump() << std::endl;
        return 3;
    }
}
