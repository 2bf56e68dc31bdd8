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

#include "uwbjio/coding.hpp"

#include "uwbjio/types.hpp"

#include <bit>
#include <limits>
#include <queue>
#include <tuple>

namespace uwbjio
{

namespace
{
int parity(unsigned x)
{
    return std::popcount(x) & 1;
}

unsigned branch_output(const CodeConfig& cfg, unsigned reg, int j)
{
    return static_cast<unsigned>(parity(reg & cfg.generators[j]));
}
} // namespace

int CodeConfig::period() const
{
    return puncture.empty() ? 0 : static_cast<int>(puncture.front().size());
}

void CodeConfig::validate() const
{
    if (constraint_length < 2 || constraint_length > 16)
        throw ConfigError("constraint length must lie in [2, 16]");
    if (generators.empty())
        throw ConfigError("at least one generator is required");
    for (unsigned g : generators)
        if (g == 0 || g >= (1u << constraint_length))
            throw ConfigError("generator is zero or longer than the constraint length");
    if (static_cast<int>(puncture.size()) != outputs() || period() < 1)
        throw ConfigError("puncture pattern needs one row per generator");
    for (const auto& row : puncture)
        if (static_cast<int>(row.size()) != period())
            throw ConfigError("puncture rows differ in length");
    for (int t = 0; t < period(); ++t)
    {
        int kept = 0;
        for (const auto& row : puncture)
            kept += row[t] != 0;
        if (kept == 0)
            throw ConfigError("puncture pattern drops every output at some phase");
    }
}

CodeConfig unpunctured(const CodeConfig& cfg)
{
    CodeConfig out = cfg;
    out.puncture.assign(cfg.generators.size(), std::vector<int>{1});
    return out;
}

std::vector<int> encode_mother(const std::vector<int>& bits, const CodeConfig& cfg)
{
    cfg.validate();
    const int K = cfg.constraint_length;
    const unsigned mask = (1u << (K - 1)) - 1u;
    std::vector<int> out;
    out.reserve((bits.size() + K - 1) * cfg.generators.size());
    unsigned state = 0;
    for (std::size_t i = 0; i < bits.size() + K - 1; ++i)
    {
        const unsigned u = i < bits.size() ? static_cast<unsigned>(bits[i] & 1) : 0u;
        const unsigned reg = (u << (K - 1)) | state;
        for (int j = 0; j < cfg.outputs(); ++j)
            out.push_back(static_cast<int>(branch_output(cfg, reg, j)));
        state = (reg >> 1) & mask;
    }
    return out;
}

std::vector<int> encode(const std::vector<int>& bits, const CodeConfig& cfg)
{
    const std::vector<int> mother = encode_mother(bits, cfg);
    const int n = cfg.outputs();
    std::vector<int> out;
    out.reserve(mother.size());
    for (std::size_t step = 0; step * n < mother.size(); ++step)
    {
        const int phase = static_cast<int>(step % cfg.period());
        for (int j = 0; j < n; ++j)
            if (cfg.puncture[j][phase])
                out.push_back(mother[step * n + j]);
    }
    return out;
}

std::size_t encoded_length(std::size_t n, const CodeConfig& cfg)
{
    const std::size_t steps = n + cfg.constraint_length - 1;
    std::size_t len = 0;
    for (std::size_t step = 0; step < steps; ++step)
        for (const auto& row : cfg.puncture)
            len += row[step % cfg.period()] != 0;
    return len;
}

std::vector<int> viterbi_decode(const std::vector<double>& soft, std::size_t n, const CodeConfig& cfg)
{
    cfg.validate();
    if (soft.size() != encoded_length(n, cfg))
        throw DimensionError("viterbi_decode: soft input length does not match the code");

    const int K = cfg.constraint_length;
    const int S = cfg.states();
    const int nout = cfg.outputs();
    const std::size_t steps = n + K - 1;
    const unsigned low_mask = S > 1 ? static_cast<unsigned>(S / 2 - 1) : 0u;
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();

    std::vector<double> metric(S, neg_inf), next(S);
    metric[0] = 0.0;
    std::vector<std::vector<int>> from(steps, std::vector<int>(S, -1));
    std::vector<double> received(nout);

    std::size_t pos = 0;
    for (std::size_t step = 0; step < steps; ++step)
    {
        const int phase = static_cast<int>(step % cfg.period());
        for (int j = 0; j < nout; ++j)
            received[j] = cfg.puncture[j][phase] ? soft[pos++] : 0.0;
        const bool tail = step >= n;

        for (int ns = 0; ns < S; ++ns)
        {
            const unsigned u = static_cast<unsigned>(ns) >> (K - 2);
            next[ns] = neg_inf;
            if (tail && u != 0)
                continue;
            for (unsigned b = 0; b < 2; ++b)
            {
                const int ps = static_cast<int>(((static_cast<unsigned>(ns) & low_mask) << 1) | b);
                if (metric[ps] == neg_inf)
                    continue;
                const unsigned reg = (u << (K - 1)) | static_cast<unsigned>(ps);
                double m = metric[ps];
                for (int j = 0; j < nout; ++j)
                    m += branch_output(cfg, reg, j) ? -received[j] : received[j];
                if (m > next[ns])
                {
                    next[ns] = m;
                    from[step][ns] = ps;
                }
            }
        }
        metric.swap(next);
    }

    std::vector<int> bits(steps);
    int state = 0;
    for (std::size_t step = steps; step-- > 0;)
    {
        bits[step] = static_cast<int>(static_cast<unsigned>(state) >> (K - 2)) & 1;
        state = from[step][state];
    }
    bits.resize(n);
    return bits;
}

int free_distance(const CodeConfig& cfg)
{
    cfg.validate();
    const int K = cfg.constraint_length;
    const int S = cfg.states();
    const int P = cfg.period();
    const unsigned mask = static_cast<unsigned>(S - 1);

    auto weight = [&](unsigned reg, int phase) {
        int w = 0;
        for (int j = 0; j < cfg.outputs(); ++j)
            if (cfg.puncture[j][phase])
                w += static_cast<int>(branch_output(cfg, reg, j));
        return w;
    };

    int best = std::numeric_limits<int>::max();
    for (int phase0 = 0; phase0 < P; ++phase0)
    {
        // Dijkstra over (state, phase) after the forced diverging 1.
        using Item = std::tuple<int, int, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
        std::vector<int> dist(static_cast<std::size_t>(S) * P, std::numeric_limits<int>::max());
        const unsigned reg0 = 1u << (K - 1);
        const int s1 = static_cast<int>((reg0 >> 1) & mask);
        const int p1 = (phase0 + 1) % P;
        dist[s1 * P + p1] = weight(reg0, phase0);
        queue.emplace(dist[s1 * P + p1], s1, p1);
        while (!queue.empty())
        {
            auto [d, s, p] = queue.top();
            queue.pop();
            if (d > dist[s * P + p] || d >= best)
                continue;
            if (s == 0)
            {
                best = d;
                break;
            }
            for (unsigned u = 0; u < 2; ++u)
            {
                const unsigned reg = (u << (K - 1)) | static_cast<unsigned>(s);
                const int ns = static_cast<int>((reg >> 1) & mask);
                const int np = (p + 1) % P;
                const int nd = d + weight(reg, p);
                if (nd < dist[ns * P + np])
                {
                    dist[ns * P + np] = nd;
                    queue.emplace(nd, ns, np);
                }
            }
        }
    }
    return best;
}

} // namespace uwbjio
