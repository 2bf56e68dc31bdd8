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

#include "uwbjio/signal_model.hpp"
#include "uwbjio/types.hpp"

#include <vector>

namespace uwbjio
{

/// Smallest eigenvalue of 2 eps eps^H + (E_1 v^2 - 1) I.
double hessian_min_eigenvalue(const CVector& eps_tilde, double e1, double v);

/// Signatures of every unit-variance interfering symbol seen by `desired`: other users' current
/// symbols and all users' ISI terms, each scaled by sqrt(E_k).
std::vector<CVector> interference_signatures(const SignalModelMatrices& mats, int desired = 0);

/// Output SINR in dB of the filter T w_bar. Returns +inf when the interference power vanishes.
double sinr_db(const CMatrix& T, const CVector& w_bar, const CVector& p1, double e1,
               const std::vector<CVector>& interference, double noise_var);

/// ||e^{-j theta} h_hat - h||^2 with theta aligning h_hat to h at h's first significant tap.
double channel_mse(const CVector& h_hat, const CVector& h);

} // namespace uwbjio
