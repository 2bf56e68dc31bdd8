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

#include "uwbjio/config.hpp"
#include "uwbjio/csv.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace uwbjio
{

enum class ExperimentKind
{
    convergence,
    sweep_snr,
    sweep_users,
    sweep_rank,
    sweep_sir,
    channel_mse,
};

ExperimentKind parse_experiment_kind(const std::string& s);
std::string to_string(ExperimentKind k);
/// Axis column of the aggregated CSV ("symbols", "snr_db", ...).
std::string axis_name(ExperimentKind k);

/// Order-independent per-trial seed.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

struct TrialOptions
{
    bool record_mse = false;  ///< channel MSE at symbol 0 and after every `bin` symbols
    bool record_sinr = false; ///< SINR of the final filter
};

struct AlgorithmTrial
{
    std::string name;
    bool diverged = false;
    std::string error;
    std::vector<std::uint8_t> errors; ///< uncoded decision errors of user 1, per symbol
    std::vector<double> mse;          ///< see TrialOptions::record_mse
    double sinr_db = 0.0;
    long coded_errors = 0;
    long coded_bits = 0;
    std::uint64_t stream_hash = 0;

    /// Error rate over symbols [from, errors.size()).
    double ber(int from) const;
};

struct TrialResult
{
    std::uint64_t seed = 0;
    std::uint64_t stream_hash = 0;
    std::vector<AlgorithmTrial> algorithms;
};

/// One channel and code draw, one symbol stream, every algorithm on the same received samples.
TrialResult run_trial(const ExperimentConfig& cfg, int trial, const TrialOptions& options = {});

/// Runs trials [0, cfg.trials) on `threads` workers (0: UWBJIO_THREADS, else hardware concurrency).
/// Results are indexed by trial and independent of the worker count.
std::vector<TrialResult> run_trials(const ExperimentConfig& cfg, const TrialOptions& options,
                                    unsigned threads = 0);

/// Worker count from UWBJIO_THREADS (0 or unset: hardware concurrency).
unsigned default_threads();

/// Copy of cfg with the sweep axis set to `value`.
ExperimentConfig apply_point(const ExperimentConfig& cfg, ExperimentKind kind, double value);

struct ExperimentResult
{
    std::vector<AggregatedRow> rows;
    std::vector<RawRow> raw;
    std::vector<std::string> warnings; ///< diverged trials and similar
};

ExperimentResult run_experiment(const ExperimentConfig& cfg, ExperimentKind kind, unsigned threads = 0);

/// Writes <dir>/<name>_<kind>.csv (and _raw.csv when cfg.raw). Returns the aggregated path.
std::string write_experiment(const std::string& dir, const ExperimentConfig& cfg, ExperimentKind kind,
                             const ExperimentResult& result);

} // namespace uwbjio
