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

#include <iosfwd>
#include <string>
#include <vector>

namespace uwbjio
{

struct AggregatedRow
{
    std::string experiment;
    std::string algorithm;
    std::string axis;
    double axis_value = 0.0;
    std::string metric;
    double value = 0.0;
    int trials = 0;
    int symbols = 0;
};

struct RawRow
{
    std::string experiment;
    std::string algorithm;
    int trial = 0;
    long symbol_index = 0;
    std::string metric;
    double value = 0.0;
};

/// Shortest representation that parses back to the same double.
std::string format_double(double x);

void write_aggregated_csv(std::ostream& os, const std::vector<AggregatedRow>& rows);
void write_raw_csv(std::ostream& os, const std::vector<RawRow>& rows);

} // namespace uwbjio
