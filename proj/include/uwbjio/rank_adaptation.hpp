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

#include "uwbjio/jio_rls.hpp"
#include "uwbjio/types.hpp"

#include <vector>

namespace uwbjio
{

struct RankAdaptParams
{
    int d_min = 3;
    int d_max = 8;
    double lambda_d = 0.998;
};

/// Exponentially weighted a-posteriori CM cost per candidate rank; the receiver itself runs at D_max.
struct RankAdaptState
{
    int d_min = 3;
    int d_max = 8;
    double lambda_d = 0.998;
    RVector costs; ///< C_D for D = d_min .. d_max
    int d_opt = 3;
};

RankAdaptState make_rank_adapt_state(const RankAdaptParams& params);

/// w_D^H T_D^H r from the leading-D truncation.
cd truncated_output(const CMatrix& T, const CVector& w_bar, const CVector& r, int D);

/// C_D <- lambda_D C_D + (|y_D|^2 - 1)^2 using the current (post-adaptation) truncations.
void update_costs(RankAdaptState& state, const CMatrix& T, const CVector& w_bar, const CVector& r);

/// argmin of the costs, ties toward the smaller rank.
int select_rank(const RVector& costs, int d_min);

/// One JIO-RLS step at D_max; output and decision from the truncation at the current D_opt,
/// then costs updated and D_opt re-selected.
SymbolOutput rank_adaptive_symbol(RankAdaptState& state, JioRlsState& rls, const CVector& r,
                                  const CVector& p_hat);

/// Split form used by the detectors: output before adaptation, costs after.
SymbolOutput rank_adaptive_output(const RankAdaptState& state, JioRlsState& rls, const CVector& r);
void rank_adaptive_finish(RankAdaptState& state, JioRlsState& rls, const CVector& r, const CVector& p_hat);

} // namespace uwbjio
