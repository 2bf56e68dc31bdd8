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

#include "uwbjio/jio_rls.hpp"

#include "uwbjio/signal_model.hpp"

#include <cmath>

namespace uwbjio
{

namespace
{
constexpr double denominator_tol = 1e-12;

JioRlsState common_state(int M, int D, const JioRlsParams& params)
{
    if (!(params.alpha > 0.0) || params.alpha > 1.0)
        throw ConfigError("JIO-RLS forgetting factor must lie in (0, 1]");
    JioRlsState s;
    s.w_bar = CVector::Ones(D);
    s.rt = InverseCovariance(D, params.delta, params.alpha);
    s.d_bar = CVector::Zero(D);
    s.alpha = params.alpha;
    s.v = params.v;
    s.dbar_form = params.dbar_form;
    s.column_clamp = params.column_clamp;
    (void)M;
    return s;
}
} // namespace

JioRlsState make_jio_rls_state(int M, const JioRlsParams& params)
{
    if (params.rank < 1 || params.rank > M)
        throw ConfigError("JIO-RLS rank must satisfy 1 <= D <= M");
    JioRlsState s = common_state(M, params.rank, params);
    s.T = CMatrix::Zero(M, params.rank);
    s.T.topRows(params.rank).setIdentity();
    s.ry = InverseCovariance(M, params.delta, params.alpha);
    s.v_r = CMatrix::Zero(M, params.rank);
    return s;
}

JioRlsState make_full_rank_rls_state(int M, const JioRlsParams& params)
{
    JioRlsState s = common_state(M, M, params);
    s.T = CMatrix::Identity(M, M);
    s.full_rank = true;
    return s;
}

bool update_ry_inverse(JioRlsState& state, const CVector& r, cd y)
{
    return state.ry.update(y * r);
}

bool update_rt_inverse(JioRlsState& state, const CVector& r_bar, cd y)
{
    return state.rt.update(r_bar * y);
}

cd jio_rls_pre_adapt(JioRlsState& state, const CVector& r)
{
    const CVector r_bar = state.full_rank ? r : CVector(state.T.adjoint() * r);
    const cd y = state.w_bar.dot(r_bar);
    state.last_y = y;

    if (state.dbar_form == DbarForm::paper)
        state.d_bar += state.alpha * r_bar * std::conj(y);
    else
        state.d_bar = state.alpha * state.d_bar + r_bar * std::conj(y);

    if (!state.full_rank)
        update_ry_inverse(state, r, y);
    update_rt_inverse(state, r_bar, y);
    return y;
}

ColumnUpdate update_column(JioRlsState& state, int d, const CVector& r, const CVector& p_hat)
{
    if (state.full_rank)
        throw ConfigError("update_column: the full-rank receiver has no adaptive columns");
    if (d < 0 || d >= state.T.cols())
        throw DimensionError("update_column: column index out of range");

    const cd wd = state.w_bar(d);
    const double wd2 = std::norm(wd);
    const double e = std::norm(state.last_y) - 1.0;

    // Reduced-rank signals from the current columns (earlier columns already updated).
    CVector r_bar = state.T.adjoint() * r;
    const cd rd = r_bar(d);
    r_bar(d) = 0.0;
    const cd tail = r_bar.dot(state.w_bar); // rbar_e^H w

    state.v_r.col(d) = state.alpha * state.v_r.col(d) + (std::conj(wd) * (e * tail - wd * std::conj(rd))) * r;

    ColumnUpdate out;
    if (std::abs(wd) < state.column_clamp)
    {
        ++state.skipped_columns;
        return out;
    }

    const CMatrix& ry_inv = state.ry.inverse();
    const CVector rp = ry_inv * p_hat;
    const cd prp = p_hat.dot(rp);
    if (std::abs(prp) < denominator_tol)
        throw NumericError("update_column: p^H R_y^-1 p vanishes");

    CVector tp = state.T.adjoint() * p_hat;
    tp(d) = 0.0;
    const cd w_pd = state.w_bar.dot(tp); // w^H p_d

    const CVector vr = state.v_r.col(d);
    const cd num = std::conj(wd) * vr.dot(rp) + (state.v - w_pd) * wd2;
    const cd lambda = 2.0 * std::conj(num / (-wd2 * prp));

    out.raw = -(1.0 / wd2) * (0.5 * lambda * std::conj(wd) * rp + ry_inv * vr);
    const double n = out.raw.norm();
    if (!(n > 0.0) || !std::isfinite(n))
    {
        ++state.degenerate_columns;
        return out;
    }
    state.T.col(d) = out.raw / n;
    out.applied = true;
    return out;
}

void update_filter_rls(JioRlsState& state, const CVector& p_hat)
{
    const CVector tp = state.full_rank ? p_hat : CVector(state.T.adjoint() * p_hat);
    const CMatrix& rt_inv = state.rt.inverse();
    const CVector rtp = rt_inv * tp;
    const cd den = tp.dot(rtp);
    if (std::abs(den) < denominator_tol)
        throw NumericError("update_filter_rls: p^H T R_T^-1 T^H p vanishes");
    const CVector rtd = rt_inv * state.d_bar;
    const cd lambda = 2.0 * std::conj((state.d_bar.dot(rtp) - state.v) / den);
    state.w_bar = -0.5 * lambda * rtp + rtd;
}

void jio_rls_adapt(JioRlsState& state, const CVector& r, const CVector& p_hat)
{
    if (!state.full_rank)
        for (int d = 0; d < state.T.cols(); ++d)
            update_column(state, d, r, p_hat);
    update_filter_rls(state, p_hat);
}

SymbolOutput jio_rls_symbol(JioRlsState& state, const CVector& r, const CVector& p_hat)
{
    SymbolOutput out;
    out.y = jio_rls_pre_adapt(state, r);
    out.decision = sign_decision(out.y);
    jio_rls_adapt(state, r, p_hat);
    return out;
}

SymbolOutput full_rank_rls_symbol(JioRlsState& state, const CVector& r, const CVector& p_hat)
{
    if (!state.full_rank)
        throw ConfigError("full_rank_rls_symbol: state is not a full-rank receiver");
    return jio_rls_symbol(state, r, p_hat);
}

} // namespace uwbjio
