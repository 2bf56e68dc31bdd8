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

#include "uwbjio/config.hpp"

#include <sstream>

using namespace uwbjio;

namespace
{
ExperimentConfig parse(const std::string& text)
{
    std::istringstream is(text);
    return parse_config(is);
}

std::string error_of(const std::string& text)
{
    try
    {
        parse(text);
    }
    catch (const ConfigError& e)
    {
        return e.what();
    }
    return "";
}
} // namespace

TEST_CASE("full configuration")
{
    const auto cfg = parse(R"(# comment
[system]
users = 3
snr_db = 12.5   # trailing comment
energies = 1, 2, 4
snr_ref = sample
nbi_sir_db = -10

[channel]
time_scale = 0.2
clusters = 4

[experiment]
name = demo
trials = 4
symbols = 300
eval_start = 100
points = 1, 2, 3
seed = 18446744073709551615

[coding]
enabled = on
generators = 7, 5
puncture = 11;10
message_bits = 32

[algorithm rake]

[algorithm my-filter]
type = jio-rls
rank = 5
v = 1.5
dbar_form = conventional
estimator = known

[algorithm rank-adaptive]
d_min = 2
d_max = 6
)");
    CHECK(cfg.system.users == 3);
    CHECK(cfg.system.snr_db == 12.5);
    CHECK(cfg.system.energies == std::vector<double>{1, 2, 4});
    CHECK(cfg.system.snr_ref == SnrReference::sample);
    REQUIRE(cfg.system.nbi.has_value());
    CHECK(cfg.system.nbi->sir_db == -10);
    CHECK(cfg.channel.clusters == 4);
    CHECK(cfg.channel.ray_decay == doctest::Approx(12.5 * 0.2));
    CHECK(cfg.name == "demo");
    CHECK(cfg.points == std::vector<double>{1, 2, 3});
    CHECK(cfg.seed == 18446744073709551615ull);
    CHECK(cfg.coding);
    CHECK(cfg.code.generators == std::vector<unsigned>{07, 05});
    CHECK(cfg.code.puncture == std::vector<std::vector<int>>{{1, 1}, {1, 0}});
    CHECK(cfg.message_bits == 32);
    REQUIRE(cfg.algorithms.size() == 3);
    CHECK(cfg.algorithms[0].type == AlgorithmType::rake);
    CHECK(cfg.algorithms[1].type == AlgorithmType::jio_rls);
    CHECK(cfg.algorithms[1].rls.rank == 5);
    CHECK(cfg.algorithms[1].rls.v == 1.5);
    CHECK(cfg.algorithms[1].rls.dbar_form == DbarForm::conventional);
    CHECK(cfg.algorithms[1].estimator == EstimatorKind::known);
    CHECK(cfg.algorithms[2].type == AlgorithmType::rank_adaptive);
    CHECK(cfg.algorithms[2].adapt.d_max == 6);
}

TEST_CASE("defaults and estimator pairing")
{
    CHECK(default_algorithm(AlgorithmType::full_rank_nsg, "x").nsg.mu_w0 == 0.025);
    CHECK(default_algorithm(AlgorithmType::jio_rls, "x").rls.v == 0.5);
    CHECK(resolve_estimator(default_algorithm(AlgorithmType::rake, "x")) == EstimatorKind::power);
    CHECK(resolve_estimator(default_algorithm(AlgorithmType::jio_nsg, "x")) == EstimatorKind::leakage);
    CHECK(resolve_estimator(default_algorithm(AlgorithmType::rank_adaptive, "x")) == EstimatorKind::ry);
}

TEST_CASE("errors name the line")
{
    CHECK(error_of("[system]\nusers = 2\ncolour = red\n").find("line 3") != std::string::npos);
    CHECK(error_of("[system]\nusers = two\n").find("line 2") != std::string::npos);
    CHECK(error_of("[algorithm x]\ntype = jio-nsg\n").empty());
    CHECK(error_of("[algorithm a]\nrank = 3\ntype = jio-rls\n").find("line 3") != std::string::npos);
    CHECK(error_of("[nowhere]\n").find("line 1") != std::string::npos);
    CHECK(error_of("[coding]\npuncture = 1x;10\n").find("line 2") != std::string::npos);
}

TEST_CASE("validation")
{
    auto cfg = parse("[algorithm rake]\n");
    cfg.eval_start = cfg.symbols;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = parse("[algorithm rake]\n");
    cfg.algorithms.push_back(cfg.algorithms[0]);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_THROWS_AS(parse("[algorithm jio-nsg]\nestimator = ry\n").validate(), ConfigError);
    CHECK_THROWS_AS(parse("[system]\nusers = 1\n").validate(), ConfigError); // no algorithms
}

TEST_CASE("algorithm selection keeps the requested order")
{
    auto cfg = parse("[algorithm rake]\n[algorithm jio-nsg]\n[algorithm jio-rls]\n");
    select_algorithms(cfg, {"jio-rls", "rake"});
    REQUIRE(cfg.algorithms.size() == 2);
    CHECK(cfg.algorithms[0].name == "jio-rls");
    CHECK(cfg.algorithms[1].name == "rake");
    CHECK_THROWS_AS(select_algorithms(cfg, {"missing"}), ConfigError);
}
