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

#include "uwbjio/channel.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace uwbjio
{

namespace
{
constexpr int max_draw_attempts = 16;
}

SvParams SvParams::residential(double time_scale)
{
    SvParams p;
    p.cluster_rate = 0.047 / time_scale;
    p.ray_rate = 1.54 / time_scale;
    p.cluster_decay = 22.6 * time_scale;
    p.ray_decay = 12.5 * time_scale;
    return p;
}

void SvParams::validate() const
{
    if (clusters < 1 || rays < 1)
        throw ConfigError("SV model needs at least one cluster and one ray");
    if (!(cluster_rate > 0.0 && ray_rate > 0.0 && cluster_decay > 0.0 && ray_decay > 0.0))
        throw ConfigError("SV rates and decays must be positive");
}

ChannelRealization generate_sv_channel(const SvParams& params, const DimensionSet& dims,
                                       double resolution_ns, std::mt19937_64& rng)
{
    params.validate();
    if (dims.L < 1)
        throw ConfigError("channel needs at least one tap");

    const double span_ns = dims.L * resolution_ns;
    std::exponential_distribution<double> cluster_gap(params.cluster_rate);
    std::exponential_distribution<double> ray_gap(params.ray_rate);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

    for (int attempt = 0; attempt < max_draw_attempts; ++attempt)
    {
        CVector h = CVector::Zero(dims.L);
        double cluster_time = 0.0;
        for (int u = 0; u < params.clusters; ++u)
        {
            if (u > 0)
                cluster_time += cluster_gap(rng);
            double ray_time = 0.0;
            for (int v = 0; v < params.rays; ++v)
            {
                if (v > 0)
                    ray_time += ray_gap(rng);
                const double arrival = cluster_time + ray_time;
                // Rayleigh amplitude around the double-exponential mean power.
                const double mean_power = std::exp(-cluster_time / params.cluster_decay) *
                                          std::exp(-ray_time / params.ray_decay);
                const double x = gauss(rng);
                const double y = gauss(rng);
                const double amplitude = std::sqrt(mean_power * 0.5 * (x * x + y * y));
                const double phi = phase(rng);
                if (arrival >= span_ns)
                    continue;
                const auto tap = static_cast<Eigen::Index>(std::llround(arrival / resolution_ns));
                if (tap >= dims.L)
                    continue;
                h(tap) += std::polar(amplitude, phi);
            }
        }
        if (h.norm() > 0.0)
            return {normalize_channel(h), resolution_ns};
    }
    throw NumericError("SV generator produced no arrivals inside the delay spread");
}

ChannelRealization generate_sv_channel(const SvParams& params, const DimensionSet& dims,
                                       double resolution_ns)
{
    std::mt19937_64 rng(params.seed);
    return generate_sv_channel(params, dims, resolution_ns, rng);
}

CVector normalize_channel(const CVector& h)
{
    const double n = h.norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw NumericError("cannot normalize a zero channel");
    return h / n;
}

void write_channel(std::ostream& os, const CVector& h)
{
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (Eigen::Index l = 0; l < h.size(); ++l)
        os << h(l).real() << ' ' << h(l).imag() << '\n';
}

CVector read_channel(std::istream& is)
{
    std::vector<cd> taps;
    std::string line;
    while (std::getline(is, line))
    {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream ls(line);
        double re = 0.0, im = 0.0;
        if (!(ls >> re >> im))
            throw ConfigError("channel file: expected \"re im\" per line, got: " + line);
        taps.emplace_back(re, im);
    }
    CVector h(static_cast<Eigen::Index>(taps.size()));
    for (std::size_t l = 0; l < taps.size(); ++l)
        h(static_cast<Eigen::Index>(l)) = taps[l];
    return h;
}

} // namespace uwbjio
