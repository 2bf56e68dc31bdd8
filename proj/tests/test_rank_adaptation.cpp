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

#include "doctest.h"

#include "checks.hpp"
#include "uwbjio/jio_nsg.hpp"
#include "uwbjio/rank_adaptation.hpp"

#include <cmath>
#include <vector>

using namespace uwbjio;

namespace
{
CVector sample(const CVector& p, const CVector& q, std::mt19937_64& rng)
{
    const double b = (rng() & 1) ? 1.0 : -1.0;
    const double c = (rng() & 1) ? 1.0 : -1.0;
    return b * p + c * q + 0.2 * checks::random_cvector(static_cast<int>(p.size()), rng);
}
} // namespace

TEST_CASE("rank selection prefers the smaller rank on ties")
{
    RVector c(4);
    c << 2.0, 1.0, 1.0, 3.0;
    CHECK(select_rank(c, 3) == 4);
    c << 1.0, 1.0, 1.0, 1.0;
    CHECK(select_rank(c, 2) == 2);
}

TEST_CASE("truncated output equals the leading-D receiver")
{
    std::mt19937_64 rng(1);
    const CMatrix T = checks::random_cmatrix(7, 5, rng);
    const CVector w = checks::random_cvector(5, rng);
    const CVector r = checks::random_cvector(7, rng);
    for (int D = 1; D <= 5; ++D)
        CHECK(std::abs(truncated_output(T, w, r, D) - compute_output(T.leftCols(D), w.head(D), r)) <= 1e-12);
    CHECK_THROWS_AS(truncated_output(T, w, r, 6), DimensionError);
}

TEST_CASE("costs equal the exponentially weighted direct sums")
{
    std::mt19937_64 rng(2);
    const int M = 10;
    const CVector p = checks::random_cvector(M, rng);
    const CVector q = checks::random_cvector(M, rng);
    RankAdaptParams ap;
    ap.d_min = 2;
    ap.d_max = 5;
    ap.lambda_d = 0.9;
    RankAdaptState st = make_rank_adapt_state(ap);
    JioRlsParams rp;
    rp.rank = 5;
    JioRlsState rls = make_jio_rls_state(M, rp);

    // a-posteriori outputs of every truncation, kept for the direct sum
    std::vector<std::vector<double>> errs(4);
    const int n = 60;
    for (int i = 0; i < n; ++i)
    {
        const CVector r = sample(p, q, rng);
        rank_adaptive_symbol(st, rls, r, p);
        for (int D = 2; D <= 5; ++D)
        {
            const double e = std::norm(truncated_output(rls.T, rls.w_bar, r, D)) - 1.0;
            errs[D - 2].push_back(e * e);
        }
    }
    for (int k = 0; k < 4; ++k)
    {
        double direct = 0.0;
        for (int i = 0; i < n; ++i)
            direct += std::pow(0.9, n - 1 - i) * errs[k][static_cast<std::size_t>(i)];
        CHECK(st.costs(k) == doctest::Approx(direct).epsilon(1e-10));
    }
    CHECK(st.d_opt == select_rank(st.costs, 2));
}

TEST_CASE("degenerate window reproduces the fixed-rank receiver")
{
    std::mt19937_64 rng(3);
    const int M = 12;
    const CVector p = checks::random_cvector(M, rng);
    const CVector q = checks::random_cvector(M, rng);
    RankAdaptParams ap;
    ap.d_min = 4;
    ap.d_max = 4;
    RankAdaptState st = make_rank_adapt_state(ap);
    JioRlsParams rp;
    rp.rank = 4;
    JioRlsState adaptive = make_jio_rls_state(M, rp);
    JioRlsState fixed = make_jio_rls_state(M, rp);
    for (int i = 0; i < 300; ++i)
    {
        const CVector r = sample(p, q, rng);
        const SymbolOutput a = rank_adaptive_symbol(st, adaptive, r, p);
        const SymbolOutput f = jio_rls_symbol(fixed, r, p);
        REQUIRE(a.y == f.y);
        REQUIRE(a.decision == f.decision);
    }
    CHECK(adaptive.w_bar == fixed.w_bar);
}

TEST_CASE("invalid windows")
{
    RankAdaptParams ap;
    ap.d_min = 5;
    ap.d_max = 4;
    CHECK_THROWS_AS(make_rank_adapt_state(ap), ConfigError);
    RankAdaptState st = make_rank_adapt_state(RankAdaptParams{});
    JioRlsState rls = make_jio_rls_state(10, JioRlsParams{});
    CHECK_THROWS_AS(rank_adaptive_output(st, rls, CVector::Ones(10)), DimensionError);
}
