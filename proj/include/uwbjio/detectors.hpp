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
#include "uwbjio/config.hpp"
#include "uwbjio/jio_nsg.hpp"
#include "uwbjio/jio_rls.hpp"
#include "uwbjio/rank_adaptation.hpp"

#include <cstdint>
#include <optional>

namespace uwbjio
{

/// When the channel estimate is refreshed.
struct BceSchedule
{
    int dense_symbols = 500;
    int every = 10;

    bool refresh(long i) const { return i < dense_symbols || (i - dense_symbols) % every == 0; }
};

/// FNV-1a over the raw bytes of complex samples.
std::uint64_t fnv1a(std::uint64_t h, const CVector& x);
constexpr std::uint64_t fnv_offset = 1469598103934665603ull;

/// A receiver together with the estimator that feeds it p_hat.
class Detector
{
  public:
    /// `basis` is P_r S_e of the desired user; `h_true` fixes the phase reference (and is the
    /// estimate itself for EstimatorKind::known).
    Detector(const AlgorithmConfig& cfg, const BceConfig& bce, const BceSchedule& schedule,
             const CMatrix& basis, const CVector& h_true);

    /// Output for symbol i (decision from the pre-adaptation state), then adaptation.
    SymbolOutput process(const CVector& r, long i);

    /// Raw blind estimate (phase not aligned).
    const CVector& h_hat() const { return bce_.h_hat; }
    const CVector& p_hat() const { return p_hat_; }

    /// f such that y = f^H r (truncated at D_opt for the rank-adaptive receiver).
    CVector filter() const;

    const AlgorithmConfig& config() const { return cfg_; }
    EstimatorKind estimator() const { return estimator_; }
    std::uint64_t stream_hash() const { return hash_; }
    int current_rank() const;

  private:
    void observe(const CVector& r);
    void refresh_estimate();

    AlgorithmConfig cfg_;
    EstimatorKind estimator_;
    BceSchedule schedule_;
    CMatrix basis_;
    CVector h_true_;
    BceState bce_;
    CVector p_hat_;
    std::optional<JioNsgState> nsg_;
    std::optional<JioRlsState> rls_;
    std::optional<RankAdaptState> adapt_;
    std::uint64_t hash_ = fnv_offset;
};

} // namespace uwbjio
