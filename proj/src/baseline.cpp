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

#include "uwbjio/baseline.hpp"

#include "uwbjio/signal_model.hpp"

namespace uwbjio
{

SymbolOutput rake_mrc(const CVector& r, const CVector& p_hat)
{
    if (r.size() != p_hat.size())
        throw DimensionError("rake_mrc: r and p_hat differ in length");
    if (p_hat.squaredNorm() <= 0.0)
        throw NumericError("rake_mrc: zero signature");
    SymbolOutput out;
    out.y = p_hat.dot(r);
    out.decision = sign_decision(out.y);
    return out;
}

} // namespace uwbjio
