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

#include <vector>

namespace uwbjio
{

/// Inverse of R(i) = alpha R(i-1) + x(i) x(i)^H, R(0) = delta I, maintained with the matrix
/// inversion lemma. Serves R^-1 (x = r), R_y^-1 (x = y r) and R_T^-1 (x = y rbar).
class InverseCovariance
{
  public:
    InverseCovariance() = default;
    InverseCovariance(int dim, double delta, double alpha);

    /// Returns false (and leaves the estimate untouched) when alpha + x^H R^-1 x vanishes.
    bool update(const CVector& x);

    const CMatrix& inverse() const { return inv_; }
    double alpha() const { return alpha_; }
    long steps() const { return steps_; }
    int skipped() const { return skipped_; }

  private:
    CMatrix inv_;
    double alpha_ = 1.0;
    long steps_ = 0;
    int skipped_ = 0;
};

struct BceConfig
{
    int power = 3;           ///< m in R^-m
    double alpha = 0.9998;   ///< forgetting factor of R^-1
    double delta = 10.0;     ///< R(0) = delta I
    double leakage = 0.9998; ///< lambda_v
    double step_scale = 0.5; ///< mu_v = step_scale / tr(R)
    bool row_space_start = true; ///< start from the component of h0 that the basis can observe
};

/// Blind channel estimator state. Only the members of the active variant are populated.
struct BceState
{
    CVector h_hat;                 ///< unit-norm channel estimate
    InverseCovariance inverse;     ///< power-method variant
    std::vector<CMatrix> slices;   ///< leakage-SG variant: W_1 .. W_m
    CMatrix basis;                 ///< P_r S_e of the desired user (W_0)
    int power = 3;
    double leakage = 0.9998;
    double step_scale = 0.5;
    double trace_estimate = 0.0;   ///< running mean of ||r||^2
    long observations = 0;
    int skipped = 0;
};

BceState make_power_method_state(const CMatrix& basis, const CVector& h0, const BceConfig& cfg);
BceState make_leakage_state(const CMatrix& basis, const CVector& h0, const BceConfig& cfg);

/// R^-1 recursion on r. Returns false when the update was skipped.
bool update_inverse_covariance(BceState& state, const CVector& r);

/// inv^m * basis by repeated multiplication.
CMatrix inverse_power_times(const CMatrix& inv, const CMatrix& basis, int m);

/// h <- (I - V/tr V) h with V = basis^H R^-m basis, then normalised. Updates state.h_hat.
CVector power_method_channel_step(BceState& state, const CMatrix& basis);

/// Leakage-SG recursion of the slices W_1 .. W_m only.
void leakage_sg_update(BceState& state, const CVector& r);

/// Leakage-SG tracking of R^-m basis; returns V = basis^H W_m.
CMatrix leakage_sg_step(BceState& state, const CVector& r);

/// h - V h / tr V, normalised.
CVector channel_step_nsg(const CMatrix& V, const CVector& h_prev);

/// Same difference update with V = basis^H R_y^-m basis.
CVector channel_step_rls(const CMatrix& ry_inv, const CVector& h_prev, const CMatrix& basis, int m);

/// Orthogonal projection of h onto the row space of basis (the part of h visible in r).
CVector project_row_space(const CMatrix& basis, const CVector& h);

/// p_hat = basis * h_hat.
CVector effective_signature_estimate(const CVector& h_hat, const CMatrix& basis);

/// Index of the first tap with magnitude above 1e-6, or -1.
Eigen::Index first_significant_tap(const CVector& h);

/// Rotates h_hat so that its tap at the reference's first significant tap has the reference phase.
CVector align_phase(const CVector& h_hat, const CVector& reference);

} // namespace uwbjio
