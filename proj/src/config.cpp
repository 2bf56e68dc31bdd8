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

#include "uwbjio/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace uwbjio
{

namespace
{
std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep))
        out.push_back(trim(item));
    return out;
}

struct Parser
{
    int line = 0;

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ConfigError("config line " + std::to_string(line) + ": " + msg);
    }

    double number(const std::string& s) const
    {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            fail("not a number: '" + s + "'");
        return v;
    }

    long integer(const std::string& s, int base = 10) const
    {
        long v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
        if (ec != std::errc() || ptr != s.data() + s.size())
            fail("not an integer: '" + s + "'");
        return v;
    }

    int count(const std::string& s) const
    {
        const long v = integer(s);
        if (v < 0 || v > 100000000)
            fail("value out of range: '" + s + "'");
        return static_cast<int>(v);
    }

    bool flag(const std::string& s) const
    {
        if (s == "on" || s == "true" || s == "1" || s == "yes")
            return true;
        if (s == "off" || s == "false" || s == "0" || s == "no")
            return false;
        fail("expected on/off: '" + s + "'");
    }

    std::vector<double> numbers(const std::string& s) const
    {
        std::vector<double> out;
        for (const auto& item : split(s, ','))
            if (!item.empty())
                out.push_back(number(item));
        return out;
    }
};

void set_system(const Parser& p, SystemConfig& sys, const std::string& key, const std::string& val)
{
    if (key == "users")
        sys.users = p.count(val);
    else if (key == "symbol_ns")
        sys.symbol_ns = p.number(val);
    else if (key == "chip_ns")
        sys.chip_ns = p.number(val);
    else if (key == "resolution_ns")
        sys.resolution_ns = p.number(val);
    else if (key == "delay_spread_ns")
        sys.delay_spread_ns = p.number(val);
    else if (key == "snr_db")
        sys.snr_db = p.number(val);
    else if (key == "snr_ref")
    {
        if (val == "signature")
            sys.snr_ref = SnrReference::signature;
        else if (val == "sample")
            sys.snr_ref = SnrReference::sample;
        else
            p.fail("snr_ref must be signature or sample");
    }
    else if (key == "energies")
        sys.energies = p.numbers(val);
    else if (key == "rolloff")
        sys.rolloff = p.number(val);
    else if (key == "nbi_sir_db")
    {
        if (!sys.nbi)
            sys.nbi = NbiConfig{};
        sys.nbi->sir_db = p.number(val);
    }
    else if (key == "nbi_f_d_mhz")
    {
        if (!sys.nbi)
            sys.nbi = NbiConfig{};
        sys.nbi->f_d_mhz = p.number(val);
    }
    else
        p.fail("unknown [system] key '" + key + "'");
}

void set_channel(const Parser& p, SvParams& ch, const std::string& key, const std::string& val)
{
    if (key == "time_scale")
    {
        const SvParams s = SvParams::residential(p.number(val));
        ch.cluster_rate = s.cluster_rate;
        ch.ray_rate = s.ray_rate;
        ch.cluster_decay = s.cluster_decay;
        ch.ray_decay = s.ray_decay;
    }
    else if (key == "clusters")
        ch.clusters = p.count(val);
    else if (key == "rays")
        ch.rays = p.count(val);
    else if (key == "cluster_rate")
        ch.cluster_rate = p.number(val);
    else if (key == "ray_rate")
        ch.ray_rate = p.number(val);
    else if (key == "cluster_decay")
        ch.cluster_decay = p.number(val);
    else if (key == "ray_decay")
        ch.ray_decay = p.number(val);
    else
        p.fail("unknown [channel] key '" + key + "'");
}

void set_experiment(const Parser& p, ExperimentConfig& cfg, const std::string& key, const std::string& val)
{
    if (key == "name")
        cfg.name = val;
    else if (key == "points")
        cfg.points = p.numbers(val);
    else if (key == "trials")
        cfg.trials = p.count(val);
    else if (key == "symbols")
        cfg.symbols = p.count(val);
    else if (key == "eval_start")
        cfg.eval_start = p.count(val);
    else if (key == "bin")
        cfg.bin = p.count(val);
    else if (key == "raw")
        cfg.raw = p.flag(val);
    else if (key == "seed")
    {
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
        if (ec != std::errc() || ptr != val.data() + val.size())
            p.fail("seed must be an unsigned integer");
        cfg.seed = v;
    }
    else if (key == "bce_power")
        cfg.bce.power = p.count(val);
    else if (key == "bce_alpha")
        cfg.bce.alpha = p.number(val);
    else if (key == "bce_delta")
        cfg.bce.delta = p.number(val);
    else if (key == "bce_leakage")
        cfg.bce.leakage = p.number(val);
    else if (key == "bce_row_space_start")
        cfg.bce.row_space_start = p.flag(val);
    else if (key == "bce_step_scale")
        cfg.bce.step_scale = p.number(val);
    else if (key == "bce_dense_symbols")
        cfg.bce_dense_symbols = p.count(val);
    else if (key == "bce_every")
        cfg.bce_every = p.count(val);
    else
        p.fail("unknown [experiment] key '" + key + "'");
}

void set_coding(const Parser& p, ExperimentConfig& cfg, const std::string& key, const std::string& val)
{
    if (key == "enabled")
        cfg.coding = p.flag(val);
    else if (key == "generators")
    {
        cfg.code.generators.clear();
        for (const auto& g : split(val, ','))
            cfg.code.generators.push_back(static_cast<unsigned>(p.integer(g, 8)));
    }
    else if (key == "constraint_length")
        cfg.code.constraint_length = p.count(val);
    else if (key == "puncture")
    {
        cfg.code.puncture.clear();
        for (const auto& row : split(val, ';'))
        {
            std::vector<int> bits;
            for (char c : row)
            {
                if (c != '0' && c != '1')
                    p.fail("puncture rows are strings of 0/1 separated by ';'");
                bits.push_back(c - '0');
            }
            cfg.code.puncture.push_back(bits);
        }
    }
    else if (key == "message_bits")
        cfg.message_bits = p.count(val);
    else
        p.fail("unknown [coding] key '" + key + "'");
}

void set_algorithm(const Parser& p, AlgorithmConfig& a, const std::string& key, const std::string& val)
{
    if (key == "rank")
    {
        a.nsg.rank = p.count(val);
        a.rls.rank = a.nsg.rank;
    }
    else if (key == "mu_t0")
        a.nsg.mu_t0 = p.number(val);
    else if (key == "mu_w0" || key == "mu")
        a.nsg.mu_w0 = p.number(val);
    else if (key == "v")
    {
        a.nsg.v = p.number(val);
        a.rls.v = a.nsg.v;
    }
    else if (key == "iterations")
        a.nsg.iterations = p.count(val);
    else if (key == "alpha")
        a.rls.alpha = p.number(val);
    else if (key == "delta")
        a.rls.delta = p.number(val);
    else if (key == "column_clamp")
        a.rls.column_clamp = p.number(val);
    else if (key == "dbar_form")
    {
        if (val == "paper")
            a.rls.dbar_form = DbarForm::paper;
        else if (val == "conventional")
            a.rls.dbar_form = DbarForm::conventional;
        else
            p.fail("dbar_form must be paper or conventional");
    }
    else if (key == "estimator")
    {
        try
        {
            a.estimator = parse_estimator(val);
        }
        catch (const ConfigError& e)
        {
            p.fail(e.what());
        }
    }
    else if (key == "d_min")
        a.adapt.d_min = p.count(val);
    else if (key == "d_max")
        a.adapt.d_max = p.count(val);
    else if (key == "lambda_d")
        a.adapt.lambda_d = p.number(val);
    else
        p.fail("unknown algorithm key '" + key + "'");
}
} // namespace

AlgorithmType parse_algorithm_type(const std::string& s)
{
    static const std::map<std::string, AlgorithmType> names{
        {"rake", AlgorithmType::rake},
        {"fr-nsg", AlgorithmType::full_rank_nsg},
        {"full-rank-nsg", AlgorithmType::full_rank_nsg},
        {"jio-nsg", AlgorithmType::jio_nsg},
        {"fr-rls", AlgorithmType::full_rank_rls},
        {"full-rank-rls", AlgorithmType::full_rank_rls},
        {"jio-rls", AlgorithmType::jio_rls},
        {"rank-adaptive", AlgorithmType::rank_adaptive},
    };
    const auto it = names.find(s);
    if (it == names.end())
        throw ConfigError("unknown algorithm type '" + s + "'");
    return it->second;
}

std::string to_string(AlgorithmType t)
{
    switch (t)
    {
    case AlgorithmType::rake: return "rake";
    case AlgorithmType::full_rank_nsg: return "fr-nsg";
    case AlgorithmType::jio_nsg: return "jio-nsg";
    case AlgorithmType::full_rank_rls: return "fr-rls";
    case AlgorithmType::jio_rls: return "jio-rls";
    case AlgorithmType::rank_adaptive: return "rank-adaptive";
    }
    return "?";
}

EstimatorKind parse_estimator(const std::string& s)
{
    if (s == "auto")
        return EstimatorKind::automatic;
    if (s == "power")
        return EstimatorKind::power;
    if (s == "leakage")
        return EstimatorKind::leakage;
    if (s == "ry")
        return EstimatorKind::ry;
    if (s == "known")
        return EstimatorKind::known;
    throw ConfigError("estimator must be auto, power, leakage, ry or known");
}

EstimatorKind resolve_estimator(const AlgorithmConfig& a)
{
    if (a.estimator != EstimatorKind::automatic)
        return a.estimator;
    switch (a.type)
    {
    case AlgorithmType::rake: return EstimatorKind::power;
    case AlgorithmType::full_rank_nsg:
    case AlgorithmType::jio_nsg: return EstimatorKind::leakage;
    case AlgorithmType::full_rank_rls:
    case AlgorithmType::jio_rls:
    case AlgorithmType::rank_adaptive: return EstimatorKind::ry;
    }
    return EstimatorKind::power;
}

AlgorithmConfig default_algorithm(AlgorithmType type, const std::string& name)
{
    AlgorithmConfig a;
    a.name = name;
    a.type = type;
    if (type == AlgorithmType::full_rank_nsg)
        a.nsg.mu_w0 = 0.025;
    return a;
}

void ExperimentConfig::validate() const
{
    system.validate();
    channel.validate();
    if (algorithms.empty())
        throw ConfigError("no algorithms configured");
    std::set<std::string> names;
    for (const auto& a : algorithms)
    {
        if (!names.insert(a.name).second)
            throw ConfigError("duplicate algorithm name '" + a.name + "'");
        if (a.type == AlgorithmType::rank_adaptive &&
            (a.adapt.d_min < 1 || a.adapt.d_max < a.adapt.d_min))
            throw ConfigError("rank-adaptive needs 1 <= d_min <= d_max");
        const EstimatorKind est = resolve_estimator(a);
        const bool rls = a.type == AlgorithmType::full_rank_rls || a.type == AlgorithmType::jio_rls ||
                         a.type == AlgorithmType::rank_adaptive;
        if (est == EstimatorKind::ry && !rls)
            throw ConfigError("estimator 'ry' needs an RLS receiver ('" + a.name + "')");
    }
    if (trials < 1)
        throw ConfigError("trials must be >= 1");
    if (symbols < 1)
        throw ConfigError("symbols must be >= 1");
    if (eval_start < 0 || eval_start >= symbols)
        throw ConfigError("eval_start must lie in [0, symbols)");
    if (bin < 1)
        throw ConfigError("bin must be >= 1");
    if (bce_every < 1)
        throw ConfigError("bce_every must be >= 1");
    if (coding)
    {
        code.validate();
        if (message_bits < 1)
            throw ConfigError("message_bits must be >= 1");
    }
}

ExperimentConfig parse_config(std::istream& is)
{
    ExperimentConfig cfg;
    Parser p;
    std::string section;
    AlgorithmConfig* current = nullptr;
    bool algorithm_keys = false;
    std::string raw_line;
    while (std::getline(is, raw_line))
    {
        ++p.line;
        const auto hash = raw_line.find('#');
        const std::string line = trim(hash == std::string::npos ? raw_line : raw_line.substr(0, hash));
        if (line.empty())
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']')
                p.fail("unterminated section header");
            const std::string head = trim(line.substr(1, line.size() - 2));
            current = nullptr;
            if (head.rfind("algorithm", 0) == 0)
            {
                const std::string name = trim(head.substr(9));
                if (name.empty())
                    p.fail("algorithm section needs a name");
                section = "algorithm";
                AlgorithmType type = AlgorithmType::rake;
                try
                {
                    type = parse_algorithm_type(name);
                }
                catch (const ConfigError&)
                {
                }
                cfg.algorithms.push_back(default_algorithm(type, name));
                current = &cfg.algorithms.back();
                algorithm_keys = false;
            }
            else if (head == "system" || head == "channel" || head == "experiment" || head == "coding")
                section = head;
            else
                p.fail("unknown section [" + head + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            p.fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty())
            p.fail("key outside of a section");
        if (section == "system")
            set_system(p, cfg.system, key, val);
        else if (section == "channel")
            set_channel(p, cfg.channel, key, val);
        else if (section == "experiment")
            set_experiment(p, cfg, key, val);
        else if (section == "coding")
            set_coding(p, cfg, key, val);
        else if (key == "type")
        {
            if (algorithm_keys)
                p.fail("'type' must come first in an algorithm section");
            try
            {
                *current = default_algorithm(parse_algorithm_type(val), current->name);
            }
            catch (const ConfigError& e)
            {
                p.fail(e.what());
            }
        }
        else
        {
            set_algorithm(p, *current, key, val);
            algorithm_keys = true;
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open config '" + path + "'");
    return parse_config(is);
}

void select_algorithms(ExperimentConfig& cfg, const std::vector<std::string>& names)
{
    std::vector<AlgorithmConfig> kept;
    for (const auto& n : names)
    {
        auto it = std::find_if(cfg.algorithms.begin(), cfg.algorithms.end(),
                               [&](const AlgorithmConfig& a) { return a.name == n; });
        if (it == cfg.algorithms.end())
            throw ConfigError("--algo: no algorithm named '" + n + "' in the config");
        kept.push_back(*it);
    }
    cfg.algorithms = std::move(kept);
}

} // namespace uwbjio
