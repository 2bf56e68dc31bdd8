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

#include "uwbjio/signal_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace uwbjio
{

namespace
{

int integer_ratio(double num, double den, const char* what)
{
    if (!(den > 0.0) || !(num > 0.0))
        throw ConfigError(std::string(what) + ": durations must be positive");
    const double r = num / den;
    const double n = std::round(r);
    if (std::abs(r - n) > 1e-9 * std::max(1.0, std::abs(r)) || n < 1.0)
        throw ConfigError(std::string(what) + " must be a positive integer, got " + std::to_string(r));
    return static_cast<int>(n);
}

int ceil_ratio(double num, double den)
{
    return static_cast<int>(std::ceil(num / den - 1e-9));
}

CMatrix toeplitz_columns(const CVector& first, int rows, int cols)
{
    CMatrix out = CMatrix::Zero(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int k = 0; k < first.size() && c + k < rows; ++k)
            out(c + k, c) = first(k);
    return out;
}

} // namespace

double NbiConfig::power(double e1) const
{
    return e1 * std::pow(10.0, -sir_db / 10.0);
}

double SystemConfig::energy(int k) const
{
    if (energies.empty())
        return 1.0;
    return energies.at(static_cast<std::size_t>(k));
}

void SystemConfig::validate() const
{
    if (users < 1)
        throw ConfigError("users must be >= 1");
    if (!(delay_spread_ns > 0.0))
        throw ConfigError("delay spread must be positive");
    if (!energies.empty() && static_cast<int>(energies.size()) != users)
        throw ConfigError("energies must list one value per user");
    for (double e : energies)
        if (!(e > 0.0))
            throw ConfigError("user energies must be positive");
    if (rolloff < 0.0 || rolloff > 1.0)
        throw ConfigError("rolloff must lie in [0, 1]");
}

int DimensionSet::isi_triangle_rows(int g) const
{
    return L - (g - 1) * symbol_samples - 1;
}

DimensionSet derive_dimensions(const SystemConfig& cfg)
{
    cfg.validate();
    DimensionSet d;
    d.chips = integer_ratio(cfg.symbol_ns, cfg.chip_ns, "Ts/Tc");
    d.symbol_samples = integer_ratio(cfg.symbol_ns, cfg.resolution_ns, "Ts/Ttau");
    d.chip_samples = integer_ratio(cfg.chip_ns, cfg.resolution_ns, "Tc/Ttau");
    d.L = integer_ratio(cfg.delay_spread_ns, cfg.resolution_ns, "T_DS/Ttau");
    d.M_H = d.symbol_samples + d.L - 1;
    d.M = ceil_ratio(cfg.symbol_ns + cfg.delay_spread_ns - cfg.resolution_ns, cfg.chip_ns);
    d.G = ceil_ratio(cfg.delay_spread_ns, cfg.symbol_ns);
    return d;
}

RVector SpreadingCode::as_vector() const
{
    RVector v(static_cast<Eigen::Index>(chips.size()));
    for (std::size_t j = 0; j < chips.size(); ++j)
        v(static_cast<Eigen::Index>(j)) = chips[j];
    return v;
}

std::vector<SpreadingCode> generate_spreading_codes(int users, int chips, std::uint64_t seed)
{
    if (users < 1 || chips < 1)
        throw ConfigError("spreading codes need users >= 1 and chips >= 1");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<SpreadingCode> codes(static_cast<std::size_t>(users));
    for (auto& code : codes)
    {
        code.chips.resize(static_cast<std::size_t>(chips));
        for (auto& c : code.chips)
            c = coin(rng) ? 1 : -1;
    }
    return codes;
}

RVector rrc_chip_pulse(int chip_samples, double rolloff)
{
    constexpr double pi = std::numbers::pi;
    const double beta = rolloff;
    RVector pulse(chip_samples);
    for (int n = 0; n < chip_samples; ++n)
    {
        // time in units of Tc, centred on the chip
        const double t = (n - 0.5 * (chip_samples - 1)) / chip_samples;
        double value = 0.0;
        if (std::abs(t) < 1e-12)
            value = 1.0 + beta * (4.0 / pi - 1.0);
        else if (beta > 0.0 && std::abs(std::abs(4.0 * beta * t) - 1.0) < 1e-12)
        {
            const double arg = pi / (4.0 * beta);
            value = beta / std::sqrt(2.0) * ((1.0 + 2.0 / pi) * std::sin(arg) + (1.0 - 2.0 / pi) * std::cos(arg));
        }
        else
        {
            const double num = std::sin(pi * t * (1.0 - beta)) + 4.0 * beta * t * std::cos(pi * t * (1.0 + beta));
            value = num / (pi * t * (1.0 - (4.0 * beta * t) * (4.0 * beta * t)));
        }
        pulse(n) = value;
    }
    return pulse / pulse.norm();
}

CMatrix isi_upper_partition(const CVector& h, const DimensionSet& dims, int g)
{
    const int rows = dims.isi_triangle_rows(g);
    if (rows <= 0)
        return {};
    const int cols = std::min(dims.symbol_samples, rows);
    const int first = rows - cols; // keep the last `cols` columns of H_up
    CMatrix out = CMatrix::Zero(rows, cols);
    for (int a = 0; a < rows; ++a)
        for (int c = 0; c < cols; ++c)
        {
            const int b = first + c;
            if (b >= a)
                out(a, c) = h(dims.L - 1 - (b - a));
        }
    return out;
}

CMatrix isi_lower_partition(const CVector& h, const DimensionSet& dims, int g)
{
    const int rows = dims.isi_triangle_rows(g);
    if (rows <= 0)
        return {};
    const int cols = std::min(dims.symbol_samples, rows);
    CMatrix out = CMatrix::Zero(rows, cols);
    for (int a = 0; a < rows; ++a)
        for (int b = 0; b < cols && b <= a; ++b)
            out(a, b) = h(a - b);
    return out;
}

SignalModelMatrices build_matrices(const SystemConfig& cfg, const DimensionSet& dims,
                                   const std::vector<SpreadingCode>& codes,
                                   const std::vector<CVector>& channels)
{
    if (static_cast<int>(codes.size()) != cfg.users || static_cast<int>(channels.size()) != cfg.users)
        throw DimensionError("build_matrices: need one code and one channel per user");

    const int ns = dims.symbol_samples;
    const int cs = dims.chip_samples;
    const RVector pulse = rrc_chip_pulse(cs, cfg.rolloff);

    SignalModelMatrices mats;
    mats.dims = dims;
    mats.pulse_shaping = RMatrix::Zero(ns, dims.chips);
    for (int j = 0; j < dims.chips; ++j)
        mats.pulse_shaping.block(j * cs, j, cs, 1) = pulse;

    mats.receive = RMatrix::Zero(dims.M, dims.M_H);
    for (int m = 0; m < dims.M; ++m)
        for (int q = 0; q < cs && m * cs + q < dims.M_H; ++q)
            mats.receive(m, m * cs + q) = pulse(q);

    const CMatrix receive = mats.receive.cast<cd>();
    for (int k = 0; k < cfg.users; ++k)
    {
        const auto& code = codes[static_cast<std::size_t>(k)];
        const CVector& h = channels[static_cast<std::size_t>(k)];
        if (static_cast<int>(code.chips.size()) != dims.chips)
            throw DimensionError("build_matrices: spreading code length differs from N_c");
        if (h.size() != dims.L)
            throw DimensionError("build_matrices: channel must have L taps");

        UserModel u;
        u.spread_waveform = mats.pulse_shaping * code.as_vector();
        const CVector se = u.spread_waveform.cast<cd>();
        u.code_matrix = toeplitz_columns(se, dims.M_H, dims.L);
        u.channel_matrix = toeplitz_columns(h, dims.M_H, ns);
        u.signature_basis = receive * u.code_matrix;
        u.signature = u.signature_basis * h;

        for (int g = 1; g <= dims.G; ++g)
        {
            CMatrix minus = CMatrix::Zero(dims.M_H, ns);
            CMatrix plus = CMatrix::Zero(dims.M_H, ns);
            const CMatrix up = isi_upper_partition(h, dims, g);
            const CMatrix low = isi_lower_partition(h, dims, g);
            if (up.size() > 0)
            {
                minus.block(0, ns - up.cols(), up.rows(), up.cols()) = up;
                plus.block(dims.M_H - low.rows(), 0, low.rows(), low.cols()) = low;
            }
            u.isi_minus_signatures.push_back(receive * (minus * se));
            u.isi_plus_signatures.push_back(receive * (plus * se));
            u.isi_minus.push_back(std::move(minus));
            u.isi_plus.push_back(std::move(plus));
        }
        mats.amplitudes.push_back(std::sqrt(cfg.energy(k)));
        mats.users.push_back(std::move(u));
    }
    return mats;
}

CVector assemble_received(const SignalModelMatrices& mats, const SymbolWindow& window,
                          double noise_var, std::mt19937_64& rng, const CVector& interference)
{
    const int users = static_cast<int>(mats.users.size());
    const int G = mats.dims.G;
    if (window.rows() != users || window.cols() < 2 * G + 1)
        throw DimensionError("assemble_received: symbol window must be K x (2G+1)");

    CVector r = CVector::Zero(mats.dims.M);
    for (int k = 0; k < users; ++k)
    {
        const auto& u = mats.users[static_cast<std::size_t>(k)];
        const double a = mats.amplitudes[static_cast<std::size_t>(k)];
        r += (a * window(k, G)) * u.signature;
        for (int g = 1; g <= G; ++g)
        {
            const auto gi = static_cast<std::size_t>(g - 1);
            r += (a * window(k, G - g)) * u.isi_minus_signatures[gi];
            r += (a * window(k, G + g)) * u.isi_plus_signatures[gi];
        }
    }
    if (noise_var > 0.0)
    {
        std::normal_distribution<double> gauss(0.0, std::sqrt(noise_var / 2.0));
        for (Eigen::Index m = 0; m < r.size(); ++m)
        {
            const double re = gauss(rng);
            const double im = gauss(rng);
            r(m) += cd(re, im);
        }
    }
    if (interference.size() > 0)
    {
        if (interference.size() != r.size())
            throw DimensionError("assemble_received: interference must have M samples");
        r += interference;
    }
    return r;
}

CVector oracle_received_convolution(const SystemConfig& cfg, const std::vector<SpreadingCode>& codes,
                                    const std::vector<CVector>& channels,
                                    const std::vector<std::vector<double>>& symbol_streams, int i)
{
    const DimensionSet dims = derive_dimensions(cfg);
    const int ns = dims.symbol_samples;
    const int cs = dims.chip_samples;
    const RVector pulse = rrc_chip_pulse(cs, cfg.rolloff);

    auto floor_div = [](int a, int b) { return (a >= 0) ? a / b : -((-a + b - 1) / b); };

    // z[n], n in [0, M_H): the observation window of symbol i at resolution T_tau.
    std::vector<cd> z(static_cast<std::size_t>(dims.M_H), cd(0.0, 0.0));
    for (int k = 0; k < cfg.users; ++k)
    {
        const auto& code = codes.at(static_cast<std::size_t>(k)).chips;
        const auto& stream = symbol_streams.at(static_cast<std::size_t>(k));
        const CVector& h = channels.at(static_cast<std::size_t>(k));
        const double amp = std::sqrt(cfg.energy(k));

        auto transmitted = [&](int t) -> double {
            const int sym = floor_div(t, ns);
            const int idx = i + sym;
            if (idx < 0 || idx >= static_cast<int>(stream.size()))
                return 0.0;
            const int offset = t - sym * ns;
            const int chip = offset / cs;
            const int q = offset % cs;
            return amp * stream[static_cast<std::size_t>(idx)] * code[static_cast<std::size_t>(chip)] * pulse(q);
        };

        for (int n = 0; n < dims.M_H; ++n)
        {
            cd acc(0.0, 0.0);
            for (int l = 0; l < h.size(); ++l)
                acc += h(l) * transmitted(n - l);
            z[static_cast<std::size_t>(n)] += acc;
        }
    }

    CVector r = CVector::Zero(dims.M);
    for (int m = 0; m < dims.M; ++m)
    {
        cd acc(0.0, 0.0);
        for (int q = 0; q < cs; ++q)
        {
            const int n = m * cs + q;
            if (n < dims.M_H)
                acc += pulse(q) * z[static_cast<std::size_t>(n)];
        }
        r(m) = acc;
    }
    return r;
}

cd sample_nbi(const NbiConfig& nbi, double t_ns, double e1)
{
    // f_d [MHz] * t [ns] = 1e-3 cycles
    const double phase = 2.0 * std::numbers::pi * nbi.f_d_mhz * 1e-3 * t_ns + nbi.theta;
    return std::sqrt(nbi.power(e1)) * std::polar(1.0, phase);
}

CVector nbi_samples(const NbiConfig& nbi, const SystemConfig& cfg, const DimensionSet& dims,
                    long symbol_index)
{
    CVector out(dims.M);
    const double e1 = cfg.energy(0);
    for (int m = 0; m < dims.M; ++m)
        out(m) = sample_nbi(nbi, static_cast<double>(symbol_index) * cfg.symbol_ns + m * cfg.chip_ns, e1);
    return out;
}

double noise_variance(const SystemConfig& cfg, const SignalModelMatrices& mats)
{
    const double snr = std::pow(10.0, cfg.snr_db / 10.0);
    const double signal = cfg.energy(0) * mats.users.front().signature.squaredNorm();
    if (cfg.snr_ref == SnrReference::sample)
        return signal / (mats.dims.M * snr);
    return signal / snr;
}

int sign_decision(cd y)
{
    return y.real() < 0.0 ? -1 : 1;
}

} // namespace uwbjio
