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

#include "uwbjio/jio_nsg.hpp"

#include "uwbjio/signal_model.hpp"

#include <algorithm>
#include <cmath>

namespace uwbjio
{

namespace
{
constexpr double tol = 1e-12;
constexpr double min_output = 1e-6;

// (|y| - 1) / (|y| A_1) with |y| clamped away from zero; equals e * mu_1.
double cm_gain(cd y, double a1)
{
    const double ay = std::max(std::abs(y), min_output);
    return (ay - 1.0) / (ay * a1);
}

double optimal_step(cd y, double a1)
{
    const double ay = std::max(std::abs(y), min_output);
    return 1.0 / (ay * (ay + 1.0) * a1);
}
} // namespace

JioNsgState make_jio_nsg_state(int M, const JioNsgParams& params)
{
    if (params.rank < 1 || params.rank > M)
        throw ConfigError("JIO-NSG rank must satisfy 1 <= D <= M");
    if (params.iterations < 1)
        throw ConfigError("JIO-NSG needs at least one iteration per symbol");
    JioNsgState s;
    s.T = CMatrix::Zero(M, params.rank);
    s.T.topRows(params.rank).setIdentity();
    s.w_bar = CVector::Ones(params.rank);
    s.mu_t0 = params.mu_t0;
    s.mu_w0 = params.mu_w0;
    s.v = params.v;
    s.iterations = params.iterations;
    return s;
}

JioNsgState make_full_rank_nsg_state(int M, double mu_w0, double v)
{
    JioNsgState s;
    s.T = CMatrix::Identity(M, M);
    s.w_bar = CVector::Ones(M);
    s.mu_t0 = 0.0;
    s.mu_w0 = mu_w0;
    s.v = v;
    s.iterations = 1;
    return s;
}

cd compute_output(const CMatrix& T, const CVector& w_bar, const CVector& r)
{
    if (T.rows() != r.size() || T.cols() != w_bar.size())
        throw DimensionError("compute_output: T must be M x D");
    return w_bar.dot(T.adjoint() * r);
}

NsgStep transform_step(const CMatrix& T, const CVector& w_bar, const CVector& r, const CVector& p_hat)
{
    NsgStep step;
    step.y = compute_output(T, w_bar, r);
    const double pn2 = p_hat.squaredNorm();
    const double wn2 = w_bar.squaredNorm();
    const double rn2 = r.squaredNorm();
    if (pn2 <= tol)
        return step;
    step.a1 = wn2 * (rn2 - std::norm(p_hat.dot(r)) / pn2);
    step.gradient = step.a1 > tol * std::max(1.0, wn2 * rn2);
    if (step.gradient)
        step.mu1 = optimal_step(step.y, step.a1);
    return step;
}

NsgStep filter_step(const CMatrix& T, const CVector& w_bar, const CVector& r, const CVector& p_hat)
{
    NsgStep step;
    step.y = compute_output(T, w_bar, r);
    const CVector tr = T.adjoint() * r;
    const CVector tp = T.adjoint() * p_hat;
    const double tp2 = tp.squaredNorm();
    if (tp2 <= tol)
        return step;
    const double trn2 = tr.squaredNorm();
    step.a1 = trn2 - std::norm(tr.dot(tp)) / tp2;
    step.gradient = step.a1 > tol * std::max(1.0, trn2);
    if (step.gradient)
        step.mu1 = optimal_step(step.y, step.a1);
    return step;
}

void update_transform_nsg(JioNsgState& state, const CVector& r, const CVector& p_hat)
{
    const double pn2 = p_hat.squaredNorm();
    const double wn2 = state.w_bar.squaredNorm();
    if (pn2 <= tol)
        throw NumericError("update_transform_nsg: ||p_hat|| vanishes");
    if (wn2 <= tol)
        throw NumericError("update_transform_nsg: ||w_bar|| vanishes");

    const NsgStep step = transform_step(state.T, state.w_bar, r, p_hat);
    const cd a3 = (p_hat.dot(state.T * state.w_bar) - state.v) / (wn2 * pn2);
    const Eigen::RowVectorXcd w_adj = state.w_bar.adjoint();

    if (step.gradient)
    {
        const CVector u = r - (p_hat.dot(r) / pn2) * p_hat;
        const cd scale = std::conj(step.y) * state.mu_t0 * cm_gain(step.y, step.a1);
        state.T.noalias() -= (scale * u) * w_adj;
    }
    else
    {
        ++state.projection_only_t;
    }
    state.T.noalias() -= (a3 * p_hat) * w_adj;
}

void update_filter_nsg(JioNsgState& state, const CVector& r, const CVector& p_hat)
{
    const CVector tp = state.T.adjoint() * p_hat;
    const double tp2 = tp.squaredNorm();
    if (tp2 <= tol)
        throw NumericError("update_filter_nsg: ||T^H p_hat|| vanishes, constraint unsatisfiable");

    const NsgStep step = filter_step(state.T, state.w_bar, r, p_hat);
    const cd a3 = (tp.dot(state.w_bar) - state.v) / tp2;

    if (step.gradient)
    {
        const CVector tr = state.T.adjoint() * r;
        const CVector u = tr - (tp.dot(tr) / tp2) * tp;
        state.w_bar -= (std::conj(step.y) * state.mu_w0 * cm_gain(step.y, step.a1)) * u;
    }
    else
    {
        ++state.projection_only_w;
    }
    state.w_bar -= a3 * tp;
}

SymbolOutput jio_nsg_symbol(JioNsgState& state, const CVector& r, const CVector& p_hat)
{
    SymbolOutput out;
    out.y = compute_output(state.T, state.w_bar, r);
    out.decision = sign_decision(out.y);
    for (int c = 0; c < state.iterations; ++c)
    {
        update_transform_nsg(state, r, p_hat);
        update_filter_nsg(state, r, p_hat);
    }
    return out;
}

SymbolOutput full_rank_nsg_symbol(JioNsgState& state, const CVector& r, const CVector& p_hat)
{
    SymbolOutput out;
    out.y = compute_output(state.T, state.w_bar, r);
    out.decision = sign_decision(out.y);
    for (int c = 0; c < state.iterations; ++c)
        update_filter_nsg(state, r, p_hat);
    return out;
}

} // namespace uwbjio
