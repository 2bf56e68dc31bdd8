// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The uwbjio Authors
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

#include "uwbjio/analysis.hpp"
#include "uwbjio/config.hpp"
#include "uwbjio/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace uwbjio;

namespace
{
std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

int certify(double e1, double v)
{
    const double q = e1 * v * v;
    std::cout << "E1*v^2 = " << format_double(q) << '\n';
    if (q > 1.0)
        std::cout << "E1*v^2 > 1: the CM cost is convex in eps_tilde (Hessian >= "
                  << format_double(q - 1.0) << " I)\n";
    else
        std::cout << "E1*v^2 <= 1: non-convex regime, min Hessian eigenvalue at eps_tilde = 0 is "
                  << format_double(hessian_min_eigenvalue(CVector::Zero(1), e1, v)) << '\n';
    return 0;
}
} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"DS-UWB blind JIO reduced-rank receiver simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "results";
    std::string algos;
    std::uint64_t seed = 0;
    int trials = 0;

    const std::vector<std::string> experiments{"convergence", "sweep-snr", "sweep-users",
                                               "sweep-rank", "sweep-sir", "channel-mse"};
    for (const auto& name : experiments)
    {
        auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", config_path, "experiment config (key=value)")->required();
        sub->add_option("--seed", seed, "master seed (overrides the config)");
        sub->add_option("--trials", trials, "number of trials (overrides the config)")->check(CLI::PositiveNumber);
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--algo", algos, "comma-separated algorithm names from the config");
    }

    double e1 = 1.0;
    double v = 1.0;
    auto* cert = app.add_subcommand("certify-convexity", "check the E1 v^2 > 1 convexity condition");
    cert->add_option("--e1", e1, "desired-user energy")->required();
    cert->add_option("--v", v, "constraint constant")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try
    {
        if (cert->parsed())
            return certify(e1, v);

        for (const auto& name : experiments)
        {
            if (!app.got_subcommand(name))
                continue;
            auto* sub = app.get_subcommand(name);
            ExperimentConfig cfg = load_config(config_path);
            if (sub->count("--seed"))
                cfg.seed = seed;
            if (sub->count("--trials"))
                cfg.trials = trials;
            if (!algos.empty())
                select_algorithms(cfg, split_list(algos));
            const ExperimentKind kind = parse_experiment_kind(name);
            const ExperimentResult result = run_experiment(cfg, kind);
            for (const auto& w : result.warnings)
                std::cerr << "warning: " << w << '\n';
            std::cout << write_experiment(out_dir, cfg, kind, result) << '\n';
        }
        return 0;
    }
    catch (const ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
