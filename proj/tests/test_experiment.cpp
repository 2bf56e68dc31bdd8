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

#include "doctest.h"

#include "uwbjio/experiment.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace uwbjio;

namespace
{
ExperimentConfig small(const std::string& algorithms)
{
    std::istringstream is("[system]\nusers = 3\nsnr_db = 15\n[experiment]\nname = t\ntrials = 3\n"
                          "symbols = 200\neval_start = 100\nbin = 50\nseed = 5\n" +
                          algorithms);
    return parse_config(is);
}

std::string bytes(const ExperimentResult& r)
{
    std::ostringstream os;
    write_aggregated_csv(os, r.rows);
    write_raw_csv(os, r.raw);
    return os.str();
}

int run_cli(const std::string& args)
{
    const int status = std::system((std::string(UWBJIO_CLI) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
} // namespace

TEST_CASE("trial seeds are fixed and distinct")
{
    CHECK(trial_seed(7, 3) == trial_seed(7, 3));
    CHECK(trial_seed(7, 3) != trial_seed(7, 4));
    CHECK(trial_seed(7, 3) != trial_seed(8, 3));
}

TEST_CASE("a trial is a function of its seed")
{
    const auto cfg = small("[algorithm rake]\n[algorithm jio-nsg]\n[algorithm jio-rls]\n");
    const TrialResult a = run_trial(cfg, 1);
    const TrialResult b = run_trial(cfg, 1);
    CHECK(a.stream_hash == b.stream_hash);
    for (std::size_t k = 0; k < a.algorithms.size(); ++k)
    {
        CHECK(a.algorithms[k].errors == b.algorithms[k].errors);
        // every receiver saw the same received samples
        CHECK(a.algorithms[k].stream_hash == a.stream_hash);
    }
    CHECK(run_trial(cfg, 2).stream_hash != a.stream_hash);
}

TEST_CASE("worker count does not change the output")
{
    auto cfg = small("[algorithm rake]\n[algorithm fr-rls]\n");
    cfg.raw = true;
    const std::string one = bytes(run_experiment(cfg, ExperimentKind::convergence, 1));
    CHECK(one == bytes(run_experiment(cfg, ExperimentKind::convergence, 2)));
    CHECK(one == bytes(run_experiment(cfg, ExperimentKind::convergence, 1)));
}

TEST_CASE("noise-free single user RAKE makes no errors")
{
    auto cfg = small("[algorithm rake]\nestimator = known\n");
    cfg.system.users = 1;
    cfg.system.snr_db = 300.0;
    for (const auto& t : run_trials(cfg, {}, 1))
        CHECK(t.algorithms[0].ber(0) == 0.0);
}

TEST_CASE("poisoned output flags the trial")
{
    auto cfg = small("[algorithm rake]\n[algorithm jio-nsg]\n");
    cfg.fault = FaultInjection{1, 120, 1};
    const auto trials = run_trials(cfg, {}, 1);
    CHECK(trials[1].algorithms[1].diverged);
    CHECK_FALSE(trials[1].algorithms[0].diverged);
    CHECK_FALSE(trials[0].algorithms[1].diverged);

    const auto res = run_experiment(cfg, ExperimentKind::convergence, 1);
    REQUIRE_FALSE(res.warnings.empty());
    for (const auto& row : res.rows)
        CHECK(row.trials == (row.algorithm == "jio-nsg" ? 2 : 3));
}

TEST_CASE("sweep row counts")
{
    auto cfg = small("[algorithm rake]\n[algorithm jio-nsg]\n");
    cfg.trials = 5;
    cfg.symbols = 120;
    cfg.raw = true;
    cfg.points = {0, 10, 20};
    const auto res = run_experiment(cfg, ExperimentKind::sweep_snr, 1);
    CHECK(res.rows.size() == 6);
    CHECK(res.raw.size() == 30);

    // aggregated BER is the mean of the per-trial BERs
    for (const auto& row : res.rows)
    {
        double sum = 0.0;
        int n = 0;
        for (const auto& raw : res.raw)
            if (raw.algorithm == row.algorithm &&
                raw.experiment == "t[snr_db=" + format_double(row.axis_value) + "]")
            {
                sum += raw.value;
                ++n;
            }
        REQUIRE(n == 5);
        CHECK(std::abs(sum / n - row.value) <= 1e-12);
        CHECK(row.value >= 0.0);
        CHECK(row.value <= 1.0);
    }
}

TEST_CASE("sweeps need points and algorithms")
{
    auto cfg = small("[algorithm rake]\n");
    CHECK_THROWS_AS(run_experiment(cfg, ExperimentKind::sweep_users, 1), ConfigError);
    cfg.algorithms.clear();
    CHECK_THROWS_AS(run_experiment(cfg, ExperimentKind::convergence, 1), ConfigError);
    CHECK_THROWS_AS(apply_point(small("[algorithm rake]\n"), ExperimentKind::sweep_rank, 2.5), ConfigError);
}

TEST_CASE("coded stream decodes cleanly without noise")
{
    auto cfg = small("[algorithm rake]\nestimator = known\n[coding]\nenabled = on\n");
    cfg.system.users = 1;
    cfg.system.snr_db = 300.0;
    cfg.eval_start = 0;
    const auto t = run_trial(cfg, 0);
    CHECK(t.algorithms[0].coded_bits > 0);
    CHECK(t.algorithms[0].coded_errors == 0);
}

TEST_CASE("channel MSE rows")
{
    auto cfg = small("[algorithm jio-rls]\n");
    const auto res = run_experiment(cfg, ExperimentKind::channel_mse, 1);
    CHECK(res.rows.size() == 5); // symbols 0, 50, ..., 200
    CHECK(res.rows.front().axis_value == 0.0);
    for (const auto& row : res.rows)
    {
        CHECK(row.value >= 0.0);
        CHECK(row.value <= 4.0);
    }
}

TEST_CASE("command line")
{
    const auto dir = std::filesystem::temp_directory_path() / "uwbjio_cli_test";
    std::filesystem::create_directories(dir);
    const auto cfg = dir / "c.cfg";
    std::ofstream(cfg) << "[system]\nusers = 2\n[experiment]\nname = cli\ntrials = 2\nsymbols = 60\n"
                          "eval_start = 30\nbin = 30\n[algorithm rake]\n";
    CHECK(run_cli("convergence --config " + cfg.string() + " --trials 2 --seed 3 --out " + dir.string()) == 0);
    CHECK(std::filesystem::exists(dir / "cli_convergence.csv"));
    CHECK(run_cli("convergence --config " + (dir / "missing.cfg").string()) == 2);
    CHECK(run_cli("convergence --config " + cfg.string() + " --bogus") == 2);
    CHECK(run_cli("convergence --config " + cfg.string() + " --algo nothere") == 2);
    CHECK(run_cli("certify-convexity --e1 1 --v 0.5") == 0);
    std::filesystem::remove_all(dir);
}
