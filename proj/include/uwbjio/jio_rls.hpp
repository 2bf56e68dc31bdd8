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

#include "uwbjio/blind_channel.hpp"
#include "uwbjio/jio_nsg.hpp"
#include "uwbjio/types.hpp"

namespace uwbjio
{

/// Placement of the forgetting factor in the dbar recursion.
enum class DbarForm
{
    paper,        ///< dbar(i) = dbar(i-1) + alpha rbar y*
    conventional, ///< dbar(i) = alpha dbar(i-1) + rbar y*
};

struct JioRlsParams
{
    int rank = 3;
    double alpha = 0.9998;
    double delta = 10.0;
    double v = 0.5;
    DbarForm dbar_form = DbarForm::paper;
    double column_clamp = 1e-4; ///< columns with |w_d| below this are not updated
};

/// Column-wise JIO-RLS receiver.
struct JioRlsState
{
    CMatrix T;     ///< columns t_d, unit norm
    CVector w_bar;
    InverseCovariance ry; ///< R_y^-1, M x M (unused for the full-rank baseline)
    InverseCovariance rt; ///< R_T^-1, D x D
    CVector d_bar;
    CMatrix v_r;   ///< accumulators v_r,d as columns
    double alpha = 0.9998;
    double v = 0.5;
    DbarForm dbar_form = DbarForm::paper;
    double column_clamp = 1e-4;
    bool full_rank = false;

    cd last_y;          ///< pre-adaptation output of the current symbol
    long skipped_columns = 0;
    long degenerate_columns = 0;

    /// R_y^-1 for the channel estimator (R_T^-1 when T is the identity).
    const CMatrix& ry_inverse() const { return full_rank ? rt.inverse() : ry.inverse(); }
};

/// t_d = e_d, w = ones(D), dbar = 0, R_y^-1 = I/delta, R_T^-1 = I/delta.
JioRlsState make_jio_rls_state(int M, const JioRlsParams& params);

/// Full-rank baseline: T = I_M, only the filter recursion runs.
JioRlsState make_full_rank_rls_state(int M, const JioRlsParams& params);

bool update_ry_inverse(JioRlsState& state, const CVector& r, cd y);
bool update_rt_inverse(JioRlsState& state, const CVector& r_bar, cd y);

/// Pre-adaptation of one symbol: rbar, y, dbar and both inverse recursions. Returns y.
cd jio_rls_pre_adapt(JioRlsState& state, const CVector& r);

struct ColumnUpdate
{
    bool applied = false;
    CVector raw; ///< t_d before normalisation (empty when skipped)
};

/// Updates t_d (0-based d) from the current R_y^-1, v_r,d and p_hat, then normalises it.
ColumnUpdate update_column(JioRlsState& state, int d, const CVector& r, const CVector& p_hat);

/// w = R_T^-1 (-lambda/2 T^H p + dbar) with lambda enforcing w^H T^H p = v.
void update_filter_rls(JioRlsState& state, const CVector& p_hat);

/// Column updates d = 1..D followed by the filter update (requires jio_rls_pre_adapt first).
void jio_rls_adapt(JioRlsState& state, const CVector& r, const CVector& p_hat);

/// Pre-adaptation followed by adaptation with a given p_hat; decision from the pre-adaptation y.
SymbolOutput jio_rls_symbol(JioRlsState& state, const CVector& r, const CVector& p_hat);

SymbolOutput full_rank_rls_symbol(JioRlsState& state, const CVector& r, const CVector& p_hat);

} // namespace uwbjio
