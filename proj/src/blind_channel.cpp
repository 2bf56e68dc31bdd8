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

#include "uwbjio/blind_channel.hpp"

#include <algorithm>
#include <cmath>

namespace uwbjio
{

namespace
{
constexpr double denominator_tol = 1e-12;
constexpr double trace_tol = 1e-300;
constexpr long symmetrize_every = 100;

CVector normalized_or_throw(const CVector& h)
{
    const double n = h.norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw NumericError("channel estimate collapsed to zero");
    return h / n;
}
} // namespace

InverseCovariance::InverseCovariance(int dim, double delta, double alpha)
    : inv_(CMatrix::Identity(dim, dim) / delta), alpha_(alpha)
{
    if (!(delta > 0.0) || !(alpha > 0.0) || alpha > 1.0)
        throw ConfigError("inverse covariance needs delta > 0 and alpha in (0, 1]");
}

bool InverseCovariance::update(const CVector& x)
{
    if (x.size() != inv_.rows())
        throw DimensionError("InverseCovariance::update: dimension mismatch");
    const CVector kappa = inv_ * x;
    const cd denom = alpha_ + x.dot(kappa);
    if (std::abs(denom) < denominator_tol || !std::isfinite(std::abs(denom)))
    {
        ++skipped_;
        return false;
    }
    const cd phi = 1.0 / denom;
    inv_ = (inv_ - (phi * kappa) * kappa.adjoint()) / alpha_;
    ++steps_;
    if (steps_ % symmetrize_every == 0)
    {
        const CMatrix sym = 0.5 * (inv_ + inv_.adjoint());
        inv_ = sym;
    }
    return true;
}

BceState make_power_method_state(const CMatrix& basis, const CVector& h0, const BceConfig& cfg)
{
    if (cfg.power < 1)
        throw ConfigError("BCE power must be >= 1");
    BceState s;
    s.h_hat = normalized_or_throw(h0);
    s.inverse = InverseCovariance(static_cast<int>(basis.rows()), cfg.delta, cfg.alpha);
    s.basis = basis;
    s.power = cfg.power;
    return s;
}

BceState make_leakage_state(const CMatrix& basis, const CVector& h0, const BceConfig& cfg)
{
    if (cfg.power < 1)
        throw ConfigError("BCE power must be >= 1");
    BceState s;
    s.h_hat = normalized_or_throw(h0);
    s.basis = basis;
    s.power = cfg.power;
    s.leakage = cfg.leakage;
    s.step_scale = cfg.step_scale;
    s.slices.assign(static_cast<std::size_t>(cfg.power), CMatrix::Zero(basis.rows(), basis.cols()));
    return s;
}

bool update_inverse_covariance(BceState& state, const CVector& r)
{
    const bool ok = state.inverse.update(r);
    if (!ok)
        ++state.skipped;
    return ok;
}

CMatrix inverse_power_times(const CMatrix& inv, const CMatrix& basis, int m)
{
    CMatrix w = basis;
    for (int l = 0; l < m; ++l)
        w = inv * w;
    return w;
}

CVector channel_step_nsg(const CMatrix& V, const CVector& h_prev)
{
    if (V.rows() != h_prev.size() || V.cols() != h_prev.size())
        throw DimensionError("channel step: V must be L x L");
    const cd trace = V.trace();
    if (std::abs(trace) < trace_tol || !std::isfinite(std::abs(trace)))
        throw NumericError("channel step: tr V vanishes");
    return normalized_or_throw(h_prev - (V * h_prev) / trace);
}

CVector channel_step_rls(const CMatrix& ry_inv, const CVector& h_prev, const CMatrix& basis, int m)
{
    if (basis.cols() != h_prev.size() || ry_inv.rows() != basis.rows())
        throw DimensionError("channel step: basis must be M x L");
    // V h = basis^H R^-m basis h by matrix-vector products; tr V = tr(A_a^H A_b), A_k = R^-k basis.
    CVector u = basis * h_prev;
    for (int l = 0; l < m; ++l)
        u = ry_inv * u;
    const CVector vh = basis.adjoint() * u;
    const CMatrix a = inverse_power_times(ry_inv, basis, m / 2);
    const CMatrix b = (m % 2) ? CMatrix(ry_inv * a) : a;
    const cd trace = (a.conjugate().cwiseProduct(b)).sum();
    if (std::abs(trace) < trace_tol || !std::isfinite(std::abs(trace)))
        throw NumericError("channel step: tr V vanishes");
    return normalized_or_throw(h_prev - vh / trace);
}

CVector power_method_channel_step(BceState& state, const CMatrix& basis)
{
    state.h_hat = channel_step_rls(state.inverse.inverse(), state.h_hat, basis, state.power);
    return state.h_hat;
}

void leakage_sg_update(BceState& state, const CVector& r)
{
    if (r.size() != state.basis.rows())
        throw DimensionError("leakage_sg_step: r must have M entries");
    const double energy = r.squaredNorm();
    ++state.observations;
    const double window = static_cast<double>(std::min<long>(state.observations, 1000));
    state.trace_estimate += (energy - state.trace_estimate) / window;
    const double mu = state.trace_estimate > 0.0 ? state.step_scale / state.trace_estimate : 0.0;

    const CMatrix* previous = &state.basis;
    for (auto& w : state.slices)
    {
        // r r^H W_l(i-1), formed as r (r^H W_l)
        const Eigen::RowVectorXcd rw = r.adjoint() * w;
        w = state.leakage * w + mu * (*previous - r * rw);
        previous = &w;
    }
}

CMatrix leakage_sg_step(BceState& state, const CVector& r)
{
    leakage_sg_update(state, r);
    return state.basis.adjoint() * state.slices.back();
}

CVector project_row_space(const CMatrix& basis, const CVector& h)
{
    if (basis.cols() != h.size())
        throw DimensionError("project_row_space: basis has " + std::to_string(basis.cols()) +
                             " columns, h has " + std::to_string(h.size()));
    // pinv(B) B h, i.e. the minimum-norm h' with B h' = B h
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(basis);
    return cod.solve(basis * h);
}

CVector effective_signature_estimate(const CVector& h_hat, const CMatrix& basis)
{
    if (basis.cols() != h_hat.size())
        throw DimensionError("effective_signature_estimate: basis must have L columns");
    return basis * h_hat;
}

Eigen::Index first_significant_tap(const CVector& h)
{
    for (Eigen::Index l = 0; l < h.size(); ++l)
        if (std::abs(h(l)) > 1e-6)
            return l;
    return -1;
}

CVector align_phase(const CVector& h_hat, const CVector& reference)
{
    if (h_hat.size() != reference.size())
        throw DimensionError("align_phase: length mismatch");
    const Eigen::Index ref = first_significant_tap(reference);
    cd rot(1.0, 0.0);
    if (ref >= 0 && std::abs(h_hat(ref)) > 0.0)
        rot = std::polar(1.0, std::arg(reference(ref)) - std::arg(h_hat(ref)));
    return h_hat * rot;
}

} // namespace uwbjio
