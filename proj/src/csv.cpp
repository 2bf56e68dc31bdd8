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

#include "uwbjio/csv.hpp"

#include <charconv>
#include <ostream>

namespace uwbjio
{

namespace
{
// Names are produced by the config parser; quote anything that would break a field.
std::string field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}
} // namespace

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_aggregated_csv(std::ostream& os, const std::vector<AggregatedRow>& rows)
{
    os << "experiment,algorithm,axis,axis_value,metric,value,trials,symbols\n";
    for (const auto& r : rows)
        os << field(r.experiment) << ',' << field(r.algorithm) << ',' << r.axis << ','
           << format_double(r.axis_value) << ',' << r.metric << ',' << format_double(r.value) << ','
           << r.trials << ',' << r.symbols << '\n';
}

void write_raw_csv(std::ostream& os, const std::vector<RawRow>& rows)
{
    os << "experiment,algorithm,trial,symbol_index,metric,value\n";
    for (const auto& r : rows)
        os << field(r.experiment) << ',' << field(r.algorithm) << ',' << r.trial << ',' << r.symbol_index
           << ',' << r.metric << ',' << format_double(r.value) << '\n';
}

} // namespace uwbjio
