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

#include "uwbjio/detectors.hpp"

#include "uwbjio/baseline.hpp"

#include <cstring>

namespace uwbjio
{

std::uint64_t fnv1a(std::uint64_t h, const CVector& x)
{
    const auto* bytes = reinterpret_cast<const unsigned char*>(x.data());
    const std::size_t n = static_cast<std::size_t>(x.size()) * sizeof(cd);
    for (std::size_t k = 0; k < n; ++k)
    {
        h ^= bytes[k];
        h *= 1099511628211ull;
    }
    return h;
}

Detector::Detector(const AlgorithmConfig& cfg, const BceConfig& bce, const BceSchedule& schedule,
                   const CMatrix& basis, const CVector& h_true)
    : cfg_(cfg), estimator_(resolve_estimator(cfg)), schedule_(schedule), basis_(basis), h_true_(h_true)
{
    const int M = static_cast<int>(basis.rows());
    CVector h0 = h_true;
    if (estimator_ != EstimatorKind::known)
    {
        h0 = CVector::Ones(basis.cols());
        if (bce.row_space_start)
            h0 = project_row_space(basis, h0);
    }
    if (estimator_ == EstimatorKind::leakage)
        bce_ = make_leakage_state(basis, h0, bce);
    else
        bce_ = make_power_method_state(basis, h0, bce);
    p_hat_ = effective_signature_estimate(align_phase(bce_.h_hat, h_true_), basis_);

    switch (cfg.type)
    {
    case AlgorithmType::rake:
        break;
    case AlgorithmType::full_rank_nsg:
        nsg_ = make_full_rank_nsg_state(M, cfg.nsg.mu_w0, cfg.nsg.v);
        break;
    case AlgorithmType::jio_nsg:
        nsg_ = make_jio_nsg_state(M, cfg.nsg);
        break;
    case AlgorithmType::full_rank_rls:
        rls_ = make_full_rank_rls_state(M, cfg.rls);
        break;
    case AlgorithmType::jio_rls:
        rls_ = make_jio_rls_state(M, cfg.rls);
        break;
    case AlgorithmType::rank_adaptive: {
        JioRlsParams p = cfg.rls;
        p.rank = cfg.adapt.d_max;
        rls_ = make_jio_rls_state(M, p);
        adapt_ = make_rank_adapt_state(cfg.adapt);
        break;
    }
    }
    if (estimator_ == EstimatorKind::ry && !rls_)
        throw ConfigError("estimator 'ry' needs an RLS receiver");
}

void Detector::observe(const CVector& r)
{
    if (estimator_ == EstimatorKind::power)
        update_inverse_covariance(bce_, r);
    else if (estimator_ == EstimatorKind::leakage)
        leakage_sg_update(bce_, r);
}

void Detector::refresh_estimate()
{
    switch (estimator_)
    {
    case EstimatorKind::power:
        power_method_channel_step(bce_, basis_);
        break;
    case EstimatorKind::leakage: {
        const CMatrix V = basis_.adjoint() * bce_.slices.back();
        if (std::abs(V.trace()) <= 1e-300)
            return;
        bce_.h_hat = channel_step_nsg(V, bce_.h_hat);
        break;
    }
    case EstimatorKind::ry:
        bce_.h_hat = channel_step_rls(rls_->ry_inverse(), bce_.h_hat, basis_, bce_.power);
        break;
    case EstimatorKind::known:
    case EstimatorKind::automatic:
        return;
    }
    p_hat_ = effective_signature_estimate(align_phase(bce_.h_hat, h_true_), basis_);
}

SymbolOutput Detector::process(const CVector& r, long i)
{
    hash_ = fnv1a(hash_, r);
    const bool refresh = schedule_.refresh(i);
    SymbolOutput out;
    switch (cfg_.type)
    {
    case AlgorithmType::rake:
        out = rake_mrc(r, p_hat_);
        observe(r);
        if (refresh)
            refresh_estimate();
        break;
    case AlgorithmType::full_rank_nsg:
    case AlgorithmType::jio_nsg:
        observe(r);
        if (refresh)
            refresh_estimate();
        out = cfg_.type == AlgorithmType::jio_nsg ? jio_nsg_symbol(*nsg_, r, p_hat_)
                                                  : full_rank_nsg_symbol(*nsg_, r, p_hat_);
        break;
    case AlgorithmType::full_rank_rls:
    case AlgorithmType::jio_rls:
        out.y = jio_rls_pre_adapt(*rls_, r);
        out.decision = sign_decision(out.y);
        observe(r);
        if (refresh)
            refresh_estimate();
        jio_rls_adapt(*rls_, r, p_hat_);
        break;
    case AlgorithmType::rank_adaptive:
        out = rank_adaptive_output(*adapt_, *rls_, r);
        observe(r);
        if (refresh)
            refresh_estimate();
        rank_adaptive_finish(*adapt_, *rls_, r, p_hat_);
        break;
    }
    return out;
}

CVector Detector::filter() const
{
    if (nsg_)
        return nsg_->T * nsg_->w_bar;
    if (rls_)
    {
        const int D = adapt_ ? adapt_->d_opt : static_cast<int>(rls_->T.cols());
        return rls_->T.leftCols(D) * rls_->w_bar.head(D);
    }
    return p_hat_;
}

int Detector::current_rank() const
{
    if (adapt_)
        return adapt_->d_opt;
    if (nsg_)
        return static_cast<int>(nsg_->T.cols());
    if (rls_)
        return static_cast<int>(rls_->T.cols());
    return 0;
}

} // namespace uwbjio
