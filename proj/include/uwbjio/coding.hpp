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

#include <cstdint>
#include <vector>

namespace uwbjio
{

/// Feed-forward convolutional code with periodic puncturing.
struct CodeConfig
{
    std::vector<unsigned> generators{07, 05, 05}; ///< octal, MSB = current input
    int constraint_length = 3;
    /// puncture[j][t]: keep output j at phase t. Each column needs at least one 1.
    std::vector<std::vector<int>> puncture{{1, 1}, {1, 0}, {0, 0}};

    int outputs() const { return static_cast<int>(generators.size()); }
    int period() const;
    int states() const { return 1 << (constraint_length - 1); }
    void validate() const;
};

/// Mother code without puncturing (all ones, period 1).
CodeConfig unpunctured(const CodeConfig& cfg);

/// Output bits per input step of the mother code, (n + K - 1) steps after zero termination.
std::vector<int> encode_mother(const std::vector<int>& bits, const CodeConfig& cfg);

/// Mother encoding with tail, then punctured.
std::vector<int> encode(const std::vector<int>& bits, const CodeConfig& cfg);

/// Length of encode() output for n message bits.
std::size_t encoded_length(std::size_t n, const CodeConfig& cfg);

/// Soft-input Viterbi (bit 0 <-> +1). Punctured positions are treated as erasures.
std::vector<int> viterbi_decode(const std::vector<double>& soft, std::size_t n, const CodeConfig& cfg);

/// Minimum weight of a path leaving and re-entering the zero state, over all puncture phases.
int free_distance(const CodeConfig& cfg);

} // namespace uwbjio
