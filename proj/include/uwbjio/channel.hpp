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

#include "uwbjio/signal_model.hpp"
#include "uwbjio/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>

namespace uwbjio
{

/// Clustered Saleh-Valenzuela parameters. Rates in 1/ns, decays in ns.
struct SvParams
{
    int clusters = 6;
    int rays = 60;
    double cluster_rate = 0.047;
    double ray_rate = 1.54;
    double cluster_decay = 22.6;
    double ray_decay = 12.5;
    std::uint64_t seed = 1;

    /// Residential-like profile compressed in time by `time_scale` (decays scaled by it, rates by
    /// its inverse). The default 0.1 keeps about 99.3% of the energy inside a 10 ns spread.
    static SvParams residential(double time_scale = 0.1);

    void validate() const;
};

struct ChannelRealization
{
    CVector taps;
    double resolution_ns = 0.125;
};

/// Draws one clustered-multipath channel and bins it to L taps at T_tau. The result has unit norm.
ChannelRealization generate_sv_channel(const SvParams& params, const DimensionSet& dims,
                                       double resolution_ns, std::mt19937_64& rng);

/// Same, seeded from params.seed.
ChannelRealization generate_sv_channel(const SvParams& params, const DimensionSet& dims,
                                       double resolution_ns);

CVector normalize_channel(const CVector& h);

/// One tap per line, "re im".
void write_channel(std::ostream& os, const CVector& h);
CVector read_channel(std::istream& is);

} // namespace uwbjio
