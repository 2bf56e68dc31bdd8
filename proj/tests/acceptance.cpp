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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is non-zero if any fails.
#include "checks.hpp"

#include "uwbjio/config.hpp"
#include "uwbjio/csv.hpp"
#include "uwbjio/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#ifndef UWBJIO_CONFIG_DIR
#define UWBJIO_CONFIG_DIR "configs"
#endif

using namespace uwbjio;

namespace
{

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail, double seconds)
{
    std::printf("[%s] %2d %s: %s (%.1f s)\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    failures += !ok;
}

template <class F>
void timed(int id, const std::string& title, F body)
{
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    double limit = std::numeric_limits<double>::infinity();
    try
    {
        ok = body(detail, limit);
    }
    catch (const std::exception& e)
    {
        detail = std::string("exception: ") + e.what();
        ok = false;
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > limit)
    {
        detail += "; over the " + format_double(limit) + " s budget";
        ok = false;
    }
    report(id, title, ok, detail, s);
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

ExperimentConfig scenario(const std::string& file)
{
    return load_config(std::string(UWBJIO_CONFIG_DIR) + "/" + file);
}

std::size_t index_of(const ExperimentConfig& cfg, const std::string& name)
{
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a)
        if (cfg.algorithms[a].name == name)
            return a;
    throw std::runtime_error("scenario lacks algorithm " + name);
}

double mean_ber(const std::vector<TrialResult>& trials, std::size_t a, int from)
{
    double sum = 0.0;
    int n = 0;
    for (const auto& t : trials)
        if (!t.algorithms[a].diverged)
        {
            sum += t.algorithms[a].ber(from);
            ++n;
        }
    return n ? sum / n : std::nan("");
}

std::string csv_bytes(const ExperimentResult& r)
{
    std::ostringstream os;
    write_aggregated_csv(os, r.rows);
    write_raw_csv(os, r.raw);
    return os.str();
}

} // namespace

int main()
{
    timed(1, "constraint identities", [](std::string& d, double& limit) {
        limit = 10.0;
        const auto r = checks::constraint_identities(1000, 101);
        d = "worst |w^H T^H p - v|: nsg T " + fmt(r.nsg_t) + ", nsg w " + fmt(r.nsg_w) + ", rls w " +
            fmt(r.rls_w) + " over " + std::to_string(r.steps) + " steps (tol 1e-8)";
        return r.steps >= 1000 && r.nsg_t <= 1e-8 && r.nsg_w <= 1e-8 && r.rls_w <= 1e-8;
    });

    timed(2, "signal-model oracle", [](std::string& d, double& limit) {
        limit = 10.0;
        const auto r = checks::signal_model_oracle(100, 202);
        d = "max entrywise gap " + fmt(r.worst) + " on " + std::to_string(r.instances) + " instances, " +
            std::to_string(r.full_width_blocks) + " full-width / " + std::to_string(r.narrow_blocks) +
            " narrow ISI blocks (tol 1e-10)";
        return r.worst <= 1e-10 && r.full_width_blocks > 0 && r.narrow_blocks > 0;
    });

    timed(3, "inversion-lemma oracles", [](std::string& d, double& limit) {
        limit = 5.0;
        double r = 0, ry = 0, rt = 0;
        for (int M = 2; M <= 8; ++M)
            for (int D = 1; D <= std::min(4, M); ++D)
            {
                const auto rep = checks::inversion_lemma(50, M, D, 300 + 10 * M + D);
                r = std::max(r, rep.r);
                ry = std::max(ry, rep.ry);
                rt = std::max(rt, rep.rt);
            }
        d = "relative error R^-1 " + fmt(r) + ", R_y^-1 " + fmt(ry) + ", R_T^-1 " + fmt(rt) +
            " after 50 steps, M <= 8, D <= 4 (tol 1e-6)";
        return r <= 1e-6 && ry <= 1e-6 && rt <= 1e-6;
    });

    timed(4, "step-size optimality", [](std::string& d, double&) {
        const auto r = checks::step_optimality(1000, 404);
        d = "worst |J'(mu_1)|/|J'(0)| " + fmt(r.worst_derivative) + ", min second difference " +
            fmt(r.min_second_difference) + " over " + std::to_string(r.configurations) + " configurations (" +
            std::to_string(r.skipped) + " draws skipped) (tol 1e-4)";
        return r.configurations >= 1000 && r.worst_derivative <= 1e-4 && r.min_second_difference > 0.0;
    });

    timed(5, "convexity certificate", [](std::string& d, double&) {
        const auto r = checks::convexity_certificate(1000, 505);
        d = std::to_string(r.not_positive) + " of " + std::to_string(r.draws) +
            " draws not positive definite, worst lambda_min - (E1 v^2 - 1) = " + fmt(r.worst_floor_gap) +
            " (tol -1e-9)";
        return r.not_positive == 0 && r.worst_floor_gap >= -1e-9;
    });

    timed(6, "convergence ordering", [](std::string& d, double&) {
        const ExperimentConfig cfg = scenario("fig4_convergence.cfg");
        const auto trials = run_trials(cfg, {});
        const std::size_t rake = index_of(cfg, "rake"), fr_nsg = index_of(cfg, "fr-nsg"),
                          jio_nsg = index_of(cfg, "jio-nsg"), fr_rls = index_of(cfg, "fr-rls"),
                          jio_rls = index_of(cfg, "jio-rls");
        int rls_order = 0, nsg_order = 0;
        for (const auto& t : trials)
        {
            auto ber = [&](std::size_t a) {
                const auto& at = t.algorithms[a];
                return at.diverged ? std::numeric_limits<double>::infinity() : at.ber(cfg.eval_start);
            };
            rls_order += ber(jio_rls) < ber(fr_rls) && ber(fr_rls) < ber(rake);
            nsg_order += ber(jio_nsg) < ber(fr_nsg);
        }
        const int n = static_cast<int>(trials.size());
        d = "JIO-RLS < FR-RLS < RAKE in " + std::to_string(rls_order) + "/" + std::to_string(n) +
            ", JIO-NSG < FR-NSG in " + std::to_string(nsg_order) + "/" + std::to_string(n) +
            " trials (need 80%); mean BER rake " + fmt(mean_ber(trials, rake, cfg.eval_start)) + ", fr-nsg " +
            fmt(mean_ber(trials, fr_nsg, cfg.eval_start)) + ", jio-nsg " +
            fmt(mean_ber(trials, jio_nsg, cfg.eval_start)) + ", fr-rls " +
            fmt(mean_ber(trials, fr_rls, cfg.eval_start)) + ", jio-rls " +
            fmt(mean_ber(trials, jio_rls, cfg.eval_start));
        return rls_order >= 0.8 * n && nsg_order >= 0.8 * n;
    });

    timed(7, "rank sensitivity", [](std::string& d, double&) {
        ExperimentConfig cfg = scenario("fig7_rank.cfg");
        cfg.points = {1, 4, 5, 6};
        const auto res = run_experiment(cfg, ExperimentKind::sweep_rank);
        std::map<int, double> sinr;
        for (const auto& row : res.rows)
            if (row.metric == "sinr_db")
                sinr[static_cast<int>(row.axis_value)] = row.value;
        bool ok = true;
        d = "trial-mean SINR D=1 " + fmt(sinr[1]) + " dB";
        for (int D : {4, 5, 6})
        {
            d += ", D=" + std::to_string(D) + " " + fmt(sinr[D]) + " dB";
            ok = ok && sinr[D] >= sinr[1] + 1.0;
        }
        d += " (need D=1 + 1 dB)";
        return ok;
    });

    timed(8, "rank adaptation", [](std::string& d, double&) {
        const ExperimentConfig cfg = scenario("fig8_rank_adapt.cfg");
        const auto trials = run_trials(cfg, {});
        const double b3 = mean_ber(trials, index_of(cfg, "jio-rls-d3"), cfg.eval_start);
        const double b8 = mean_ber(trials, index_of(cfg, "jio-rls-d8"), cfg.eval_start);
        const double ba = mean_ber(trials, index_of(cfg, "rank-adaptive"), cfg.eval_start);
        const double best = std::min(b3, b8);

        // D_min = D_max must reproduce the fixed-rank receiver decision for decision.
        ExperimentConfig deg = cfg;
        deg.trials = 10;
        deg.algorithms = {cfg.algorithms[index_of(cfg, "jio-rls-d3")], cfg.algorithms[index_of(cfg, "rank-adaptive")]};
        deg.algorithms[1].adapt.d_min = 3;
        deg.algorithms[1].adapt.d_max = 3;
        int identical = 0;
        const auto dt = run_trials(deg, {});
        for (const auto& t : dt)
            identical += t.algorithms[0].errors == t.algorithms[1].errors &&
                         t.algorithms[0].diverged == t.algorithms[1].diverged;

        d = "mean BER adaptive " + fmt(ba) + ", D=3 " + fmt(b3) + ", D=8 " + fmt(b8) + " (need <= 1.2 x " +
            fmt(best) + "); degenerate window identical in " + std::to_string(identical) + "/" +
            std::to_string(dt.size()) + " trials";
        return ba <= 1.2 * best && identical == static_cast<int>(dt.size());
    });

    timed(9, "blind channel estimation", [](std::string& d, double&) {
        const ExperimentConfig cfg = scenario("fig3_channel_mse.cfg");
        const auto res = run_experiment(cfg, ExperimentKind::channel_mse);
        bool ok = !cfg.algorithms.empty();
        for (const auto& a : cfg.algorithms)
        {
            double m0 = std::nan(""), m1 = std::nan("");
            for (const auto& row : res.rows)
                if (row.algorithm == a.name && row.axis_value == 0.0)
                    m0 = row.value;
                else if (row.algorithm == a.name && row.axis_value == 1000.0)
                    m1 = row.value;
            const double drop = 10.0 * std::log10(m0 / m1);
            d += (d.empty() ? "" : ", ") + a.name + " MSE " + fmt(m0) + " -> " + fmt(m1) + " (" + fmt(drop) + " dB)";
            ok = ok && drop >= 10.0;
        }
        d += " (need 10 dB)";
        return ok;
    });

    timed(10, "coding round trip", [](std::string& d, double&) {
        const auto r = checks::coding_roundtrip(1000, 1000, 1010);
        d = std::to_string(r.roundtrip_failures) + "/" + std::to_string(r.messages) + " round-trip failures, d_free " +
            std::to_string(r.d_free) + ", " + std::to_string(r.correction_failures) + "/" +
            std::to_string(r.placements) + " uncorrected patterns of weight <= " + std::to_string(r.correctable);
        return r.roundtrip_failures == 0 && r.correction_failures == 0 && r.correctable >= 1;
    });

    timed(11, "determinism", [](std::string& d, double&) {
        ExperimentConfig cfg = scenario("fig4_convergence.cfg");
        cfg.trials = 6;
        cfg.symbols = 300;
        cfg.eval_start = 200;
        cfg.raw = true;
        const std::string one = csv_bytes(run_experiment(cfg, ExperimentKind::convergence, 1));
        const std::string three = csv_bytes(run_experiment(cfg, ExperimentKind::convergence, 3));
        const std::string again = csv_bytes(run_experiment(cfg, ExperimentKind::convergence, 1));
        d = std::to_string(one.size()) + " CSV bytes; 1 vs 3 workers " + (one == three ? "identical" : "differ") +
            ", rerun " + (one == again ? "identical" : "differs");
        return one == three && one == again;
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
