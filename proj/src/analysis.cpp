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

#include "uwbjio/analysis.hpp"

#include "uwbjio/blind_channel.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace uwbjio
{

double hessian_min_eigenvalue(const CVector& eps_tilde, double e1, double v)
{
    const double shift = e1 * v * v - 1.0;
    if (eps_tilde.size() == 0)
        return shift;
    const Eigen::Index n = eps_tilde.size();
    CMatrix H = 2.0 * eps_tilde * eps_tilde.adjoint() + shift * CMatrix::Identity(n, n);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(H, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

std::vector<CVector> interference_signatures(const SignalModelMatrices& mats, int desired)
{
    std::vector<CVector> out;
    for (std::size_t k = 0; k < mats.users.size(); ++k)
    {
        const UserModel& u = mats.users[k];
        const double a = mats.amplitudes[k];
        if (static_cast<int>(k) != desired)
            out.push_back(a * u.signature);
        for (const CVector& s : u.isi_minus_signatures)
            out.push_back(a * s);
        for (const CVector& s : u.isi_plus_signatures)
            out.push_back(a * s);
    }
    return out;
}

double sinr_db(const CMatrix& T, const CVector& w_bar, const CVector& p1, double e1,
               const std::vector<CVector>& interference, double noise_var)
{
    const CVector f = T * w_bar; // y = f^H r
    double denom = noise_var * f.squaredNorm();
    for (const CVector& s : interference)
        denom += std::norm(f.dot(s));
    const double num = e1 * std::norm(f.dot(p1));
    if (!(denom > 0.0))
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(num / denom);
}

double channel_mse(const CVector& h_hat, const CVector& h)
{
    return (align_phase(h_hat, h) - h).squaredNorm();
}

} // namespace uwbjio
