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

#include "uwbjio/experiment.hpp"

#include "uwbjio/analysis.hpp"
#include "uwbjio/channel.hpp"
#include "uwbjio/coding.hpp"
#include "uwbjio/detectors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

namespace uwbjio
{

namespace
{
std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

int random_bit(std::mt19937_64& rng)
{
    return static_cast<int>(rng() >> 63);
}

struct CodedStream
{
    std::vector<double> symbols;
    std::vector<std::vector<int>> messages; ///< one per complete block
    std::size_t block = 0;
};

CodedStream coded_stream(const ExperimentConfig& cfg, std::mt19937_64& rng)
{
    CodedStream s;
    s.block = encoded_length(static_cast<std::size_t>(cfg.message_bits), cfg.code);
    const std::size_t n = static_cast<std::size_t>(cfg.symbols);
    while (s.symbols.size() < n)
    {
        std::vector<int> msg(static_cast<std::size_t>(cfg.message_bits));
        for (int& b : msg)
            b = random_bit(rng);
        for (int c : encode(msg, cfg.code))
            s.symbols.push_back(1.0 - 2.0 * c);
        s.messages.push_back(std::move(msg));
    }
    if (s.symbols.size() > n)
    {
        s.symbols.resize(n);
        s.messages.pop_back();
    }
    return s;
}
} // namespace

double AlgorithmTrial::ber(int from) const
{
    if (errors.empty() || from >= static_cast<int>(errors.size()))
        return 0.0;
    long count = 0;
    for (std::size_t i = static_cast<std::size_t>(from); i < errors.size(); ++i)
        count += errors[i];
    return static_cast<double>(count) / static_cast<double>(errors.size() - from);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial)
{
    return splitmix(splitmix(master) ^ splitmix(trial + 0x632be59bd9b4e019ull));
}

ExperimentKind parse_experiment_kind(const std::string& s)
{
    if (s == "convergence")
        return ExperimentKind::convergence;
    if (s == "sweep-snr")
        return ExperimentKind::sweep_snr;
    if (s == "sweep-users")
        return ExperimentKind::sweep_users;
    if (s == "sweep-rank")
        return ExperimentKind::sweep_rank;
    if (s == "sweep-sir")
        return ExperimentKind::sweep_sir;
    if (s == "channel-mse")
        return ExperimentKind::channel_mse;
    throw ConfigError("unknown experiment '" + s + "'");
}

std::string to_string(ExperimentKind k)
{
    switch (k)
    {
    case ExperimentKind::convergence: return "convergence";
    case ExperimentKind::sweep_snr: return "sweep-snr";
    case ExperimentKind::sweep_users: return "sweep-users";
    case ExperimentKind::sweep_rank: return "sweep-rank";
    case ExperimentKind::sweep_sir: return "sweep-sir";
    case ExperimentKind::channel_mse: return "channel-mse";
    }
    return "?";
}

std::string axis_name(ExperimentKind k)
{
    switch (k)
    {
    case ExperimentKind::convergence:
    case ExperimentKind::channel_mse: return "symbols";
    case ExperimentKind::sweep_snr: return "snr_db";
    case ExperimentKind::sweep_users: return "users";
    case ExperimentKind::sweep_rank: return "rank";
    case ExperimentKind::sweep_sir: return "sir_db";
    }
    return "?";
}

TrialResult run_trial(const ExperimentConfig& cfg, int trial, const TrialOptions& options)
{
    const SystemConfig& sys = cfg.system;
    const DimensionSet dims = derive_dimensions(sys);
    const int K = sys.users;
    const int G = dims.G;
    const int N = cfg.symbols;

    TrialResult result;
    result.seed = trial_seed(cfg.seed, static_cast<std::uint64_t>(trial));
    std::mt19937_64 master(result.seed);
    const std::uint64_t code_seed = master();
    std::mt19937_64 channel_rng(master());
    std::mt19937_64 symbol_rng(master());
    std::mt19937_64 noise_rng(master());

    const auto codes = generate_spreading_codes(K, dims.chips, code_seed);
    std::vector<CVector> channels;
    for (int k = 0; k < K; ++k)
        channels.push_back(generate_sv_channel(cfg.channel, dims, sys.resolution_ns, channel_rng).taps);
    const SignalModelMatrices mats = build_matrices(sys, dims, codes, channels);
    const double noise_var = noise_variance(sys, mats);

    // streams[k][j] holds b_k(j - G)
    std::vector<std::vector<double>> streams(K, std::vector<double>(static_cast<std::size_t>(N + 2 * G)));
    for (auto& s : streams)
        for (double& b : s)
            b = 1.0 - 2.0 * random_bit(symbol_rng);
    CodedStream coded;
    if (cfg.coding)
    {
        coded = coded_stream(cfg, symbol_rng);
        std::copy(coded.symbols.begin(), coded.symbols.end(), streams[0].begin() + G);
    }

    std::optional<NbiConfig> nbi = sys.nbi;
    if (nbi)
        nbi->theta = std::uniform_real_distribution<double>(0.0, M_PI)(noise_rng);

    std::vector<CVector> received(static_cast<std::size_t>(N));
    SymbolWindow window(K, 2 * G + 1);
    result.stream_hash = fnv_offset;
    for (int i = 0; i < N; ++i)
    {
        for (int k = 0; k < K; ++k)
            for (int o = -G; o <= G; ++o)
                window(k, G + o) = streams[k][static_cast<std::size_t>(i + o + G)];
        const CVector interference = nbi ? nbi_samples(*nbi, sys, dims, i) : CVector();
        received[i] = assemble_received(mats, window, noise_var, noise_rng, interference);
        result.stream_hash = fnv1a(result.stream_hash, received[i]);
    }

    const UserModel& desired = mats.users[0];
    const BceSchedule schedule{cfg.bce_dense_symbols, cfg.bce_every};
    const std::vector<CVector> interferers =
        options.record_sinr ? interference_signatures(mats, 0) : std::vector<CVector>();

    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a)
    {
        AlgorithmTrial out;
        out.name = cfg.algorithms[a].name;
        std::vector<double> soft;
        try
        {
            Detector det(cfg.algorithms[a], cfg.bce, schedule, desired.signature_basis, channels[0]);
            if (options.record_mse)
                out.mse.push_back(channel_mse(det.h_hat(), channels[0]));
            out.errors.reserve(static_cast<std::size_t>(N));
            for (int i = 0; i < N; ++i)
            {
                SymbolOutput y = det.process(received[i], i);
                if (cfg.fault && cfg.fault->trial == trial && cfg.fault->algorithm == a && cfg.fault->symbol == i)
                    y.y = cd(std::numeric_limits<double>::quiet_NaN(), 0.0);
                if (!std::isfinite(y.y.real()) || !std::isfinite(y.y.imag()))
                    throw NumericError("non-finite output at symbol " + std::to_string(i));
                const double b = streams[0][static_cast<std::size_t>(i + G)];
                out.errors.push_back(static_cast<std::uint8_t>(y.decision != static_cast<int>(b)));
                if (cfg.coding)
                    soft.push_back(y.y.real());
                if (options.record_mse && (i + 1) % cfg.bin == 0)
                    out.mse.push_back(channel_mse(det.h_hat(), channels[0]));
            }
            if (!det.filter().allFinite())
                throw NumericError("non-finite receiver state");
            if (options.record_sinr)
                out.sinr_db = sinr_db(CMatrix::Identity(dims.M, dims.M), det.filter(), desired.signature,
                                      sys.energy(0), interferers, noise_var);
            out.stream_hash = det.stream_hash();
        }
        catch (const NumericError& e)
        {
            out.diverged = true;
            out.error = e.what();
        }

        if (cfg.coding && !out.diverged)
        {
            for (std::size_t blk = 0; blk < coded.messages.size(); ++blk)
            {
                const std::size_t start = blk * coded.block;
                if (start < static_cast<std::size_t>(cfg.eval_start))
                    continue;
                const std::vector<double> piece(soft.begin() + start, soft.begin() + start + coded.block);
                const auto bits = viterbi_decode(piece, coded.messages[blk].size(), cfg.code);
                for (std::size_t j = 0; j < bits.size(); ++j)
                    out.coded_errors += bits[j] != coded.messages[blk][j];
                out.coded_bits += static_cast<long>(bits.size());
            }
        }
        if (!out.diverged && out.stream_hash != result.stream_hash)
            throw std::runtime_error("algorithm '" + out.name + "' consumed a different sample stream");
        result.algorithms.push_back(std::move(out));
    }
    return result;
}

unsigned default_threads()
{
    if (const char* env = std::getenv("UWBJIO_THREADS"))
    {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<TrialResult> run_trials(const ExperimentConfig& cfg, const TrialOptions& options, unsigned threads)
{
    cfg.validate();
    if (threads == 0)
        threads = default_threads();
    threads = std::min<unsigned>(threads, static_cast<unsigned>(cfg.trials));

    std::vector<TrialResult> results(static_cast<std::size_t>(cfg.trials));
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(cfg.trials));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int t = next++; t < cfg.trials; t = next++)
        {
            try
            {
                results[t] = run_trial(cfg, t, options);
            }
            catch (...)
            {
                failures[t] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < threads; ++w)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
    for (const auto& f : failures)
        if (f)
            std::rethrow_exception(f);
    return results;
}

ExperimentConfig apply_point(const ExperimentConfig& cfg, ExperimentKind kind, double value)
{
    ExperimentConfig out = cfg;
    switch (kind)
    {
    case ExperimentKind::sweep_snr:
        out.system.snr_db = value;
        break;
    case ExperimentKind::sweep_users:
        if (value < 1 || value != std::floor(value))
            throw ConfigError("user counts must be positive integers");
        out.system.users = static_cast<int>(value);
        break;
    case ExperimentKind::sweep_sir:
        if (!out.system.nbi)
            out.system.nbi = NbiConfig{};
        out.system.nbi->sir_db = value;
        break;
    case ExperimentKind::sweep_rank:
        if (value < 1 || value != std::floor(value))
            throw ConfigError("ranks must be positive integers");
        for (auto& a : out.algorithms)
        {
            a.nsg.rank = static_cast<int>(value);
            a.rls.rank = static_cast<int>(value);
        }
        break;
    case ExperimentKind::convergence:
    case ExperimentKind::channel_mse:
        break;
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, ExperimentKind kind, unsigned threads)
{
    cfg.validate();
    ExperimentResult res;
    const std::string axis = axis_name(kind);
    const int N = cfg.symbols;

    auto note_divergence = [&](const std::vector<TrialResult>& trials, const std::string& where) {
        for (std::size_t a = 0; a < cfg.algorithms.size(); ++a)
        {
            int n = 0;
            for (const auto& t : trials)
                n += t.algorithms[a].diverged;
            if (n > 0)
                res.warnings.push_back(cfg.algorithms[a].name + where + ": " + std::to_string(n) +
                                       " diverged trial(s) excluded");
        }
    };

    if (kind == ExperimentKind::convergence || kind == ExperimentKind::channel_mse)
    {
        TrialOptions opt;
        opt.record_mse = kind == ExperimentKind::channel_mse;
        const auto trials = run_trials(cfg, opt, threads);
        note_divergence(trials, "");
        for (std::size_t a = 0; a < cfg.algorithms.size(); ++a)
        {
            const std::string& name = cfg.algorithms[a].name;
            int valid = 0;
            for (const auto& t : trials)
                valid += !t.algorithms[a].diverged;
            if (kind == ExperimentKind::convergence)
            {
                for (int start = 0; start < N; start += cfg.bin)
                {
                    const int end = std::min(N, start + cfg.bin);
                    double sum = 0.0;
                    for (const auto& t : trials)
                    {
                        const auto& at = t.algorithms[a];
                        if (at.diverged)
                            continue;
                        long e = 0;
                        for (int i = start; i < end; ++i)
                            e += at.errors[i];
                        sum += static_cast<double>(e) / (end - start);
                    }
                    res.rows.push_back({cfg.name, name, axis, static_cast<double>(end), "ber_uncoded",
                                        valid ? sum / valid : std::nan(""), valid, N});
                }
                if (cfg.raw)
                    for (std::size_t t = 0; t < trials.size(); ++t)
                        if (!trials[t].algorithms[a].diverged)
                            for (int i = 0; i < N; ++i)
                                res.raw.push_back({cfg.name, name, static_cast<int>(t), i, "error",
                                                   static_cast<double>(trials[t].algorithms[a].errors[i])});
            }
            else
            {
                const std::size_t points = static_cast<std::size_t>(N / cfg.bin) + 1;
                for (std::size_t p = 0; p < points; ++p)
                {
                    double sum = 0.0;
                    for (const auto& t : trials)
                        if (!t.algorithms[a].diverged)
                            sum += t.algorithms[a].mse[p];
                    res.rows.push_back({cfg.name, name, axis, static_cast<double>(p * cfg.bin), "channel_mse",
                                        valid ? sum / valid : std::nan(""), valid, N});
                    if (cfg.raw)
                        for (std::size_t t = 0; t < trials.size(); ++t)
                            if (!trials[t].algorithms[a].diverged)
                                res.raw.push_back({cfg.name, name, static_cast<int>(t),
                                                   static_cast<long>(p * cfg.bin), "channel_mse",
                                                   trials[t].algorithms[a].mse[p]});
                }
            }
        }
        return res;
    }

    if (cfg.points.empty())
        throw ConfigError("sweep needs [experiment] points");
    TrialOptions opt;
    opt.record_sinr = kind == ExperimentKind::sweep_rank;
    for (double value : cfg.points)
    {
        const ExperimentConfig point = apply_point(cfg, kind, value);
        const auto trials = run_trials(point, opt, threads);
        const std::string tag = cfg.name + "[" + axis + "=" + format_double(value) + "]";
        note_divergence(trials, " at " + axis + "=" + format_double(value));
        for (std::size_t a = 0; a < cfg.algorithms.size(); ++a)
        {
            const std::string& name = cfg.algorithms[a].name;
            struct Metric
            {
                std::string name;
                double (*get)(const AlgorithmTrial&, int);
            };
            std::vector<Metric> metrics{{"ber_uncoded", [](const AlgorithmTrial& t, int from) { return t.ber(from); }}};
            if (cfg.coding)
                metrics.push_back({"ber_coded", [](const AlgorithmTrial& t, int) {
                                       return t.coded_bits ? static_cast<double>(t.coded_errors) / t.coded_bits : 0.0;
                                   }});
            if (opt.record_sinr)
                metrics.push_back({"sinr_db", [](const AlgorithmTrial& t, int) { return t.sinr_db; }});
            for (const auto& m : metrics)
            {
                double sum = 0.0;
                int valid = 0;
                for (std::size_t t = 0; t < trials.size(); ++t)
                {
                    const auto& at = trials[t].algorithms[a];
                    if (at.diverged)
                        continue;
                    const double v = m.get(at, cfg.eval_start);
                    sum += v;
                    ++valid;
                    if (cfg.raw)
                        res.raw.push_back({tag, name, static_cast<int>(t), N, m.name, v});
                }
                res.rows.push_back({cfg.name, name, axis, value, m.name, valid ? sum / valid : std::nan(""), valid, N});
            }
        }
    }
    return res;
}

std::string write_experiment(const std::string& dir, const ExperimentConfig& cfg, ExperimentKind kind,
                             const ExperimentResult& result)
{
    std::filesystem::create_directories(dir);
    const std::string base = (std::filesystem::path(dir) / (cfg.name + "_" + to_string(kind))).string();
    const std::string path = base + ".csv";
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot write '" + path + "'");
    write_aggregated_csv(os, result.rows);
    if (!os)
        throw std::runtime_error("write failed for '" + path + "'");
    if (cfg.raw)
    {
        std::ofstream raw(base + "_raw.csv", std::ios::binary);
        if (!raw)
            throw std::runtime_error("cannot write '" + base + "_raw.csv'");
        write_raw_csv(raw, result.raw);
        if (!raw)
            throw std::runtime_error("write failed for '" + base + "_raw.csv'");
    }
    return path;
}

} // namespace uwbjio
