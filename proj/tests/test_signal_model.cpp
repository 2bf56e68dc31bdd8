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
#include "uwbjio/channel.hpp"
#include "uwbjio/signal_model.hpp"

#include <cmath>
#include <numbers>

using namespace uwbjio;

TEST_CASE("default dimensions")
{
    const DimensionSet d = derive_dimensions(SystemConfig{});
    CHECK(d.chips == 32);
    CHECK(d.symbol_samples == 96);
    CHECK(d.chip_samples == 3);
    CHECK(d.L == 80);
    CHECK(d.M_H == 175);
    CHECK(d.M == 59);
    CHECK(d.G == 1);
}

TEST_CASE("non-integer ratios are configuration errors")
{
    SystemConfig cfg;
    cfg.chip_ns = 0.4;
    CHECK_THROWS_AS(derive_dimensions(cfg), ConfigError);
    cfg = SystemConfig{};
    cfg.energies = {1.0, 2.0};
    CHECK_THROWS_AS(derive_dimensions(cfg), ConfigError);
}

TEST_CASE("matrix model matches chip-level convolution")
{
    const auto r = checks::signal_model_oracle(20, 1);
    CHECK(r.worst <= 1e-10);
    CHECK(r.instances == 20);
}

TEST_CASE("ISI triangles take both widths")
{
    // Ts/Ttau = 3, L = 6: g = 1 spans 5 rows (full width), g = 2 only 2 (narrow)
    SystemConfig cfg;
    cfg.resolution_ns = 1;
    cfg.chip_ns = 1;
    cfg.symbol_ns = 3;
    cfg.delay_spread_ns = 6;
    const DimensionSet d = derive_dimensions(cfg);
    REQUIRE(d.G == 2);
    CVector h = CVector::LinSpaced(6, 1.0, 6.0);
    CHECK(isi_upper_partition(h, d, 1).rows() == 5);
    CHECK(isi_upper_partition(h, d, 1).cols() == 3);
    CHECK(isi_upper_partition(h, d, 2).rows() == 2);
    CHECK(isi_upper_partition(h, d, 2).cols() == 2);
    CHECK(isi_lower_partition(h, d, 2).cols() == 2);

    cfg.delay_spread_ns = 3;
    const DimensionSet d1 = derive_dimensions(cfg);
    CHECK(d1.G == 1);
    CHECK(isi_upper_partition(CVector::Ones(3), d1, 1).rows() == 2);
}

TEST_CASE("spreading codes are antipodal and seeded")
{
    const auto a = generate_spreading_codes(3, 32, 5);
    const auto b = generate_spreading_codes(3, 32, 5);
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        CHECK(a[k].chips == b[k].chips);
        for (int c : a[k].chips)
            CHECK(std::abs(c) == 1);
    }
    CHECK(generate_spreading_codes(3, 32, 6)[0].chips != a[0].chips);
}

TEST_CASE("chip pulse has unit energy")
{
    for (int n : {1, 3, 8})
        for (double beta : {0.0, 0.25, 0.5, 1.0})
            CHECK(rrc_chip_pulse(n, beta).squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("noise variance follows the signature reference")
{
    SystemConfig cfg;
    cfg.users = 2;
    cfg.snr_db = 10.0;
    cfg.energies = {2.0, 1.0};
    const DimensionSet d = derive_dimensions(cfg);
    const auto codes = generate_spreading_codes(2, d.chips, 1);
    SvParams sv = SvParams::residential();
    std::vector<CVector> ch{generate_sv_channel(sv, d, cfg.resolution_ns).taps,
                            generate_sv_channel(sv, d, cfg.resolution_ns).taps};
    const auto mats = build_matrices(cfg, d, codes, ch);
    const double p2 = mats.users[0].signature.squaredNorm();
    CHECK(noise_variance(cfg, mats) == doctest::Approx(2.0 * p2 / 10.0));
    cfg.snr_ref = SnrReference::sample;
    CHECK(noise_variance(cfg, mats) == doctest::Approx(2.0 * p2 / (10.0 * d.M)));
}

TEST_CASE("noise samples have the requested variance")
{
    SystemConfig cfg;
    const DimensionSet d = derive_dimensions(cfg);
    const auto codes = generate_spreading_codes(1, d.chips, 2);
    const auto mats = build_matrices(cfg, d, codes, {CVector::Unit(d.L, 0)});
    std::mt19937_64 rng(3);
    const SymbolWindow zero = SymbolWindow::Zero(1, 2 * d.G + 1);
    double acc = 0.0;
    const int n = 2000;
    for (int i = 0; i < n; ++i)
        acc += assemble_received(mats, zero, 0.5, rng).squaredNorm();
    CHECK(acc / (n * d.M) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("narrowband tone")
{
    NbiConfig nbi;
    nbi.sir_db = 10.0;
    nbi.f_d_mhz = 25.0;
    nbi.theta = 0.3;
    CHECK(std::abs(sample_nbi(nbi, 0.0, 2.0)) == doctest::Approx(std::sqrt(0.2)));
    CHECK(std::arg(sample_nbi(nbi, 0.0, 2.0)) == doctest::Approx(0.3));
    // a quarter period at 25 MHz is 10 ns
    CHECK(std::arg(sample_nbi(nbi, 10.0, 2.0)) == doctest::Approx(0.3 + std::numbers::pi / 2));
}

TEST_CASE("decision rule")
{
    CHECK(sign_decision(cd(0.2, -5.0)) == 1);
    CHECK(sign_decision(cd(-0.2, 5.0)) == -1);
    CHECK(sign_decision(cd(0.0, 0.0)) == 1);
}
