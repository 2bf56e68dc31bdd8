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

#include "uwbjio/rank_adaptation.hpp"

#include "uwbjio/signal_model.hpp"

namespace uwbjio
{

RankAdaptState make_rank_adapt_state(const RankAdaptParams& params)
{
    if (params.d_min < 1 || params.d_max < params.d_min)
        throw ConfigError("rank adaptation needs 1 <= d_min <= d_max");
    if (!(params.lambda_d >= 0.0) || params.lambda_d > 1.0)
        throw ConfigError("rank adaptation forgetting factor must lie in [0, 1]");
    RankAdaptState s;
    s.d_min = params.d_min;
    s.d_max = params.d_max;
    s.lambda_d = params.lambda_d;
    s.costs = RVector::Zero(params.d_max - params.d_min + 1);
    s.d_opt = params.d_min;
    return s;
}

cd truncated_output(const CMatrix& T, const CVector& w_bar, const CVector& r, int D)
{
    if (D < 1 || D > T.cols() || w_bar.size() != T.cols())
        throw DimensionError("truncated_output: rank outside the receiver");
    return w_bar.head(D).dot(T.leftCols(D).adjoint() * r);
}

void update_costs(RankAdaptState& state, const CMatrix& T, const CVector& w_bar, const CVector& r)
{
    const CVector r_bar = T.leftCols(state.d_max).adjoint() * r;
    cd y = 0.0;
    for (int D = 1; D <= state.d_max; ++D)
    {
        y += std::conj(w_bar(D - 1)) * r_bar(D - 1);
        if (D < state.d_min)
            continue;
        const double e = std::norm(y) - 1.0;
        const int k = D - state.d_min;
        state.costs(k) = state.lambda_d * state.costs(k) + e * e;
    }
}

int select_rank(const RVector& costs, int d_min)
{
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < costs.size(); ++k)
        if (costs(k) < costs(best))
            best = k;
    return d_min + static_cast<int>(best);
}

SymbolOutput rank_adaptive_output(const RankAdaptState& state, JioRlsState& rls, const CVector& r)
{
    if (rls.T.cols() != state.d_max)
        throw DimensionError("rank adaptation: receiver must run at d_max");
    const cd y_full = jio_rls_pre_adapt(rls, r);
    SymbolOutput out;
    out.y = state.d_opt == state.d_max ? y_full : truncated_output(rls.T, rls.w_bar, r, state.d_opt);
    out.decision = sign_decision(out.y);
    return out;
}

void rank_adaptive_finish(RankAdaptState& state, JioRlsState& rls, const CVector& r, const CVector& p_hat)
{
    jio_rls_adapt(rls, r, p_hat);
    update_costs(state, rls.T, rls.w_bar, r);
    state.d_opt = select_rank(state.costs, state.d_min);
}

SymbolOutput rank_adaptive_symbol(RankAdaptState& state, JioRlsState& rls, const CVector& r,
                                  const CVector& p_hat)
{
    const SymbolOutput out = rank_adaptive_output(state, rls, r);
    rank_adaptive_finish(state, rls, r, p_hat);
    return out;
}

} // namespace uwbjio
