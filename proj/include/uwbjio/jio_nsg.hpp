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

#include "uwbjio/types.hpp"

namespace uwbjio
{

struct JioNsgParams
{
    int rank = 4;
    double mu_t0 = 0.075; ///< scaling of the optimised T step
    double mu_w0 = 0.005; ///< scaling of the optimised w step
    double v = 1.0;       ///< constraint constant
    int iterations = 3;   ///< c_max
};

/// Joint-iterative NSG receiver: y = w^H T^H r under the constraint w^H T^H p = v.
struct JioNsgState
{
    CMatrix T;     ///< M x D
    CVector w_bar; ///< D
    double mu_t0 = 0.075;
    double mu_w0 = 0.005;
    double v = 1.0;
    int iterations = 3;
    long projection_only_t = 0; ///< T updates where the gradient term was dropped
    long projection_only_w = 0; ///< w updates where the gradient term was dropped
};

/// T = [I_D | 0]^T, w = ones(D).
JioNsgState make_jio_nsg_state(int M, const JioNsgParams& params);

/// Full-rank baseline: T = I_M, w = ones(M), one filter update per symbol.
JioNsgState make_full_rank_nsg_state(int M, double mu_w0, double v);

cd compute_output(const CMatrix& T, const CVector& w_bar, const CVector& r);

/// Scale term A_1 and the CM-optimal step mu_1 = (|y|-1)/(|y| e A_1) of one NSG update.
struct NsgStep
{
    cd y;
    double a1 = 0.0;
    double mu1 = 0.0;
    bool gradient = false; ///< false when A_1 is (relatively) below tolerance
};

NsgStep transform_step(const CMatrix& T, const CVector& w_bar, const CVector& r, const CVector& p_hat);
NsgStep filter_step(const CMatrix& T, const CVector& w_bar, const CVector& r, const CVector& p_hat);

/// T <- T - y* mu_T0 A_T2 - A_T3 p w^H. Throws NumericError if ||p|| or ||w|| vanish.
void update_transform_nsg(JioNsgState& state, const CVector& r, const CVector& p_hat);

/// w <- w - y* mu_w0 A_w2 - A_w3 T^H p. Throws NumericError if ||T^H p|| vanishes.
void update_filter_nsg(JioNsgState& state, const CVector& r, const CVector& p_hat);

struct SymbolOutput
{
    cd y;
    int decision = 1;
};

/// One symbol: output from the pre-adaptation state, then c_max joint (T, w) iterations.
SymbolOutput jio_nsg_symbol(JioNsgState& state, const CVector& r, const CVector& p_hat);

/// One symbol of the full-rank NSG filter (T fixed to identity).
SymbolOutput full_rank_nsg_symbol(JioNsgState& state, const CVector& r, const CVector& p_hat);

} // namespace uwbjio
