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

#pragma once

#include "uwbjio/blind_channel.hpp"
#include "uwbjio/channel.hpp"
#include "uwbjio/coding.hpp"
#include "uwbjio/jio_nsg.hpp"
#include "uwbjio/jio_rls.hpp"
#include "uwbjio/rank_adaptation.hpp"
#include "uwbjio/signal_model.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace uwbjio
{

enum class AlgorithmType
{
    rake,
    full_rank_nsg,
    jio_nsg,
    full_rank_rls,
    jio_rls,
    rank_adaptive,
};

/// Source of p_hat for a detector. `automatic` picks the estimator paired with the receiver.
enum class EstimatorKind
{
    automatic,
    power,   ///< R^-m power method
    leakage, ///< leakage SG tracking of R^-m P_r S_e
    ry,      ///< R_y^-1 of an RLS receiver
    known,   ///< true channel
};

struct AlgorithmConfig
{
    std::string name;
    AlgorithmType type = AlgorithmType::rake;
    EstimatorKind estimator = EstimatorKind::automatic;
    JioNsgParams nsg;
    JioRlsParams rls;
    RankAdaptParams adapt;
};

/// Defaults for each receiver type (full-rank NSG uses mu_w0 = 0.025, the RLS family v = 0.5).
AlgorithmConfig default_algorithm(AlgorithmType type, const std::string& name);

AlgorithmType parse_algorithm_type(const std::string& s);
std::string to_string(AlgorithmType t);
EstimatorKind parse_estimator(const std::string& s);
/// Estimator actually used for `automatic`.
EstimatorKind resolve_estimator(const AlgorithmConfig& a);

struct FaultInjection
{
    int trial = 0;
    long symbol = 0;
    std::size_t algorithm = 0;
};

struct ExperimentConfig
{
    std::string name = "experiment";
    SystemConfig system;
    SvParams channel = SvParams::residential();
    std::vector<AlgorithmConfig> algorithms;

    std::vector<double> points; ///< sweep values
    int trials = 50;
    int symbols = 1500;
    int eval_start = 1000; ///< first symbol of the converged window
    int bin = 50;          ///< symbols per point of convergence / channel-MSE curves
    bool raw = false;

    bool coding = false;
    CodeConfig code;
    int message_bits = 64;

    BceConfig bce;
    int bce_dense_symbols = 500; ///< channel estimate refreshed every symbol up to here
    int bce_every = 10;          ///< then every this many symbols

    std::uint64_t seed = 1;
    std::optional<FaultInjection> fault; ///< test hook: poisons one detector's output

    void validate() const;
};

/// Parses the key=value format with [system], [channel], [experiment], [coding] and
/// [algorithm <name>] sections. '#' starts a comment. Throws ConfigError with the line number.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config(const std::string& path);

/// Keeps only the named algorithms, in the given order.
void select_algorithms(ExperimentConfig& cfg, const std::vector<std::string>& names);

} // namespace uwbjio
