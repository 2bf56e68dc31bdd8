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

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace uwbjio
{

/// Single-tone narrowband interferer.
struct NbiConfig
{
    double sir_db = 0.0;  ///< signal-to-interference ratio referenced to E_1
    double f_d_mhz = 23.0; ///< offset from the UWB carrier
    double theta = 0.0;   ///< phase, drawn uniformly on [0, pi) per trial

    double power(double e1) const;
};

/// Reference used to turn snr_db into a noise variance.
enum class SnrReference
{
    signature, ///< sigma^2 = E_1 ||p_1||^2 / snr  (per-symbol matched-filter SNR)
    sample,    ///< sigma^2 = E_1 ||p_1||^2 / (M snr)  (per chip sample)
};

/// Physical and system parameters. Times are in ns.
struct SystemConfig
{
    int users = 1;
    double symbol_ns = 12.0;
    double chip_ns = 0.375;
    double resolution_ns = 0.125;
    double delay_spread_ns = 10.0;
    double snr_db = 20.0;
    SnrReference snr_ref = SnrReference::signature;
    std::vector<double> energies; ///< per-user E_k; empty means all ones
    double rolloff = 0.5;
    std::optional<NbiConfig> nbi;

    double energy(int k) const;
    void validate() const;
};

/// Derived sizes of the discrete model.
struct DimensionSet
{
    int M = 0;              ///< observation length (chip-rate samples)
    int L = 0;              ///< channel taps at resolution T_tau
    int M_H = 0;            ///< padded channel-output length
    int G = 0;              ///< ISI reach in symbols
    int chips = 0;          ///< N_c
    int symbol_samples = 0; ///< Ts / T_tau
    int chip_samples = 0;   ///< Tc / T_tau

    /// Row dimension L - (g-1)Ts/Ttau - 1 of the g-th ISI triangle (may be <= 0).
    int isi_triangle_rows(int g) const;
};

DimensionSet derive_dimensions(const SystemConfig& cfg);

struct SpreadingCode
{
    std::vector<int> chips;

    RVector as_vector() const;
};

std::vector<SpreadingCode> generate_spreading_codes(int users, int chips, std::uint64_t seed);

/// Root-raised-cosine chip pulse sampled at T_tau, truncated to one chip and scaled to unit energy.
RVector rrc_chip_pulse(int chip_samples, double rolloff);

/// Matrices and derived signatures for one user.
struct UserModel
{
    RVector spread_waveform;        ///< s_e = P_t s, length Ts/Ttau
    CMatrix code_matrix;            ///< S_e, M_H x L Toeplitz
    CMatrix channel_matrix;         ///< H, M_H x Ts/Ttau Toeplitz
    std::vector<CMatrix> isi_minus; ///< H^(-g), g = 1..G
    std::vector<CMatrix> isi_plus;  ///< H^(+g), g = 1..G
    CMatrix signature_basis;        ///< P_r S_e, M x L
    CVector signature;              ///< p = P_r S_e h
    std::vector<CVector> isi_minus_signatures; ///< P_r H^(-g) P_t s
    std::vector<CVector> isi_plus_signatures;  ///< P_r H^(+g) P_t s
};

struct SignalModelMatrices
{
    DimensionSet dims;
    RMatrix pulse_shaping; ///< P_t, Ts/Ttau x N_c
    RMatrix receive;       ///< P_r, M x M_H
    std::vector<double> amplitudes; ///< sqrt(E_k)
    std::vector<UserModel> users;
};

/// Upper-triangular ISI block H^(u,g) (rows = triangle rows, cols = min(Ts/Ttau, rows)); empty when absent.
CMatrix isi_upper_partition(const CVector& h, const DimensionSet& dims, int g);
/// Lower-triangular ISI block H^(l,g); empty when absent.
CMatrix isi_lower_partition(const CVector& h, const DimensionSet& dims, int g);

SignalModelMatrices build_matrices(const SystemConfig& cfg, const DimensionSet& dims,
                                   const std::vector<SpreadingCode>& codes,
                                   const std::vector<CVector>& channels);

/// Symbols b_k(i-G .. i+G); row k, column G + offset.
using SymbolWindow = RMatrix;

/// r(i) from the matrix model. `interference` (size M, or empty) is added as-is.
CVector assemble_received(const SignalModelMatrices& mats, const SymbolWindow& window,
                          double noise_var, std::mt19937_64& rng,
                          const CVector& interference = CVector());

/// Noise-free r(i) computed by direct time-domain convolution at T_tau and chip integration.
/// Symbols outside each stream are zero.
CVector oracle_received_convolution(const SystemConfig& cfg, const std::vector<SpreadingCode>& codes,
                                    const std::vector<CVector>& channels,
                                    const std::vector<std::vector<double>>& symbol_streams, int i);

/// Complex-baseband tone sqrt(P_j) exp(j(2 pi f_d t + theta)); t in ns.
cd sample_nbi(const NbiConfig& nbi, double t_ns, double e1);

/// Tone samples at the M chip instants of symbol i.
CVector nbi_samples(const NbiConfig& nbi, const SystemConfig& cfg, const DimensionSet& dims,
                    long symbol_index);

double noise_variance(const SystemConfig& cfg, const SignalModelMatrices& mats);

/// sign(Re y), with Re y == 0 deciding +1.
int sign_decision(cd y);

} // namespace uwbjio
