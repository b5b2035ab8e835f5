// SPDX-License-Identifier: Apache-2.0
//
// irs-forge  Numerical toolkit for intelligent reflecting surfaces
// Copyright (C) 2026 the irs-forge authors
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
//
// Command-line experiment runner:
//   irs-forge <scenario> [--config FILE] [--seed N] [--realizations N]
//             [--out DIR] [--override key=value]...

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irsforge/common.hpp"
#include "irsforge/io.hpp"
#include "irsforge/scenarios.hpp"

int main(int argc, char **argv)
{
    using namespace irsforge;

    std::string joined_names;
    for (const std::string &n : scenario_names())
        joined_names += (joined_names.empty() ? "" : ", ") + n;

    CLI::App app{std::string("irs-forge ") + toolkit_version +
                 "  reflecting-surface simulation scenarios"};
    app.footer("scenarios: " + joined_names);

    ScenarioRequest req;
    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("scenario", req.name, "scenario to run (" + joined_names + ")")->required();
    app.add_option("--config", config_path, "key-value config file")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", req.seed, "master seed (default 1)");
    app.add_option("--realizations", req.realizations,
                   "channel realization count (default per scenario)");
    app.add_option("--out", req.out_dir, "output directory (default ./out)");
    app.add_option("--override", overrides, "config override key=value (repeatable)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (!config_path.empty())
            req.config = Config::from_file(config_path);
        for (const std::string &assignment : overrides)
            req.config.apply_override(assignment);

        RunManifest manifest = run_scenario(req);
        std::printf("%s: %d realization(s), %zu output file(s) in %s\n",
                    manifest.scenario.c_str(), manifest.realizations,
                    manifest.outputs.size(), req.out_dir.c_str());
        for (const std::string &f : manifest.outputs)
            std::printf("  %s/%s\n", req.out_dir.c_str(), f.c_str());
        for (const std::string &n : manifest.notes)
            std::printf("  note: %s\n", n.c_str());
        for (const auto &[label, seconds] : manifest.timings_s)
            std::printf("  %s %.2f s\n", label.c_str(), seconds);
    }
    catch (const std::exception &err)
    {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
