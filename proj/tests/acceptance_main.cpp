// Acceptance suite: exercises every acceptance criterion end to end and
// prints one PASS/FAIL line per criterion with the measured quantities.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "rispls/channel.hpp"
#include "rispls/experiment.hpp"
#include "rispls/geometry.hpp"
#include "rispls/optimizer.hpp"
#include "rispls/radiation.hpp"
#include "rispls/ris.hpp"
#include "rispls/rng.hpp"

using namespace rispls;
namespace fs = std::filesystem;

namespace {

struct Harness {
    int failures = 0;

    void report(int id, bool ok, const std::string& name, const std::string& detail) {
        std::printf("C%02d %s  %s (%s)\n", id, ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
        if (!ok) ++failures;
    }
};

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

bool rel_close(Real a, Real b, Real tol) {
    return std::abs(a - b) <= tol * std::max({Real(1), std::abs(a), std::abs(b)});
}

Scenario sampled_scenario(const RisGeometry& geometry, std::uint64_t seed) {
    Scenario s = preset_by_name("loc1").scenario;
    const PlacementSample p = sample_placement(PlacementConstraints{}, geometry, s.wavelength(), seed);
    s.alice = p.alice;
    s.bob = p.bob;
    s.eve = p.eve;
    return s;
}

// ---------------------------------------------------------------------------
// 1. Greedy monotonicity: the best-score trace never decreases.
void criterion_1(Harness& h) {
    const RisGeometry g = build_default_prototype(5.2e9);
    int violations = 0;
    int sweeps = 0;
    for (int i = 0; i < 100; ++i) {
        const int s_states = i < 50 ? 2 : 4;
        const Scenario scenario = sampled_scenario(g, 4000 + static_cast<std::uint64_t>(i));
        SimulatedEvaluator evaluator(scenario, g, s_states);
        const SweepResult result = greedy_sweep(evaluator, g, Objective::MaxSecrecy, s_states,
                                                5000 + static_cast<std::uint64_t>(i),
                                                scenario.noise_bob_w, scenario.noise_eve_w);
        if (result.records.size() != static_cast<std::size_t>(76 * s_states)) ++violations;
        Real prev = -std::numeric_limits<Real>::infinity();
        for (const auto& rec : result.records) {
            if (rec.best_score < prev) ++violations;
            prev = rec.best_score;
        }
        ++sweeps;
    }
    h.report(1, violations == 0, "greedy best-score trace is non-decreasing",
             fmt("%d violations across %d sweeps of 76*S+1 points", violations, sweeps));
}

// ---------------------------------------------------------------------------
// 2. Oracle equivalence on small instances.
void criterion_2(Harness& h) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(777);
    int greedy_violations = 0;
    int random_violations = 0;
    int equality_violations = 0;
    int one_element_instances = 0;
    for (int i = 0; i < 50; ++i) {
        const int k = (i % 10) + 1;
        const Real pitch = wavelength_from_carrier(5.2e9) / 2;
        const RisGeometry g = build_uniform_grid(1, k, pitch, pitch);
        Scenario s = preset_by_name("loc1").scenario;
        s.alice = Vec3{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.2, 2.0)};
        s.bob = Vec3{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(0.5, 9.0)};
        s.eve = Vec3{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(0.5, 9.0)};
        const Objective objective = i % 3 == 0   ? Objective::MaxSecrecy
                                    : i % 3 == 1 ? Objective::MaxBobPower
                                                 : Objective::MinEvePower;
        SimulatedEvaluator evaluator(s, g, 2);
        const SweepResult greedy =
            greedy_sweep(evaluator, g, objective, 2, 600 + static_cast<std::uint64_t>(i));
        const auto [best, optimum] = exhaustive_search(evaluator, g, objective, 2);
        (void)best;
        const auto [rc, random_score] =
            random_search(evaluator, g, objective, 2, 32, 900 + static_cast<std::uint64_t>(i));
        (void)rc;
        if (greedy.best_score > optimum) ++greedy_violations;
        if (random_score > optimum) ++random_violations;
        if (k == 1) {
            ++one_element_instances;
            if (greedy.best_score != optimum) ++equality_violations;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok =
        greedy_violations == 0 && random_violations == 0 && equality_violations == 0 && secs < 60.0;
    h.report(2, ok, "greedy and random never beat the exhaustive optimum",
             fmt("50 instances, %d one-element (all tied: %s), %.2f s", one_element_instances,
                 equality_violations == 0 ? "yes" : "no", secs));
}

// ---------------------------------------------------------------------------
// 3. The two secrecy-capacity forms agree.
void criterion_3(Harness& h) {
    Rng rng(33);
    bool ok = true;
    Real worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Real sb = std::pow(10.0, rng.uniform(-12, 3));
        const Real se = std::pow(10.0, rng.uniform(-12, 3));
        const Real nb = std::pow(10.0, rng.uniform(-15, -3));
        const Real ne = std::pow(10.0, rng.uniform(-15, -3));
        const Real ratio_form = std::max(std::log2(1.0 + sb / nb) - std::log2(1.0 + se / ne), 0.0);
        const Real power_form = secrecy_capacity(sb + nb, se + ne, nb, ne);
        const Real err = std::abs(ratio_form - power_form) / std::max({Real(1), ratio_form, power_form});
        worst = std::max(worst, err);
        if (err > 1e-12) ok = false;
    }
    h.report(3, ok, "SNR-ratio and power secrecy forms agree",
             fmt("worst relative deviation %.2e over 10^4 tuples (tol 1e-12)", worst));
}

// ---------------------------------------------------------------------------
// 4. Unit modulus, global phase invariance, Bob/Eve swap symmetry.
void criterion_4(Harness& h) {
    const RisGeometry g = build_default_prototype(5.2e9);
    Rng rng(44);
    const auto table = state_phase_table(4);
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
        const Scenario scenario = sampled_scenario(g, 7000 + static_cast<std::uint64_t>(i));
        const ChannelSet ch = build_channels(scenario, g);
        RisConfiguration config = RisConfiguration::zeros(76);
        for (int k = 0; k < 76; ++k) config.states[k] = static_cast<int>(rng.uniform_index(4));
        const PhaseMatrix theta = theta_matrix(config, table);
        for (int k = 0; k < 76; ++k) {
            if (std::abs(std::abs(theta[k]) - 1.0) > 1e-12) ++violations;
        }
        const auto [pb, pe] = received_powers(ch, theta, scenario);
        const PhaseMatrix rotated = theta * std::polar<Real>(1.0, rng.uniform(0, 2 * kPi));
        const auto [pb2, pe2] = received_powers(ch, rotated, scenario);
        if (!rel_close(pb, pb2, 1e-12) || !rel_close(pe, pe2, 1e-12)) ++violations;

        Scenario swapped = scenario;
        swapped.bob = scenario.eve;
        swapped.eve = scenario.bob;
        swapped.noise_bob_w = scenario.noise_eve_w;
        swapped.noise_eve_w = scenario.noise_bob_w;
        const ChannelSet ch_swapped = build_channels(swapped, g);
        const auto [pb3, pe3] = received_powers(ch_swapped, theta, swapped);
        if (pb3 != pe || pe3 != pb) ++violations;
    }
    h.report(4, violations == 0, "unit-modulus, global-phase, and swap invariances hold",
             fmt("%d violations over 10^3 random cases", violations));
}

// ---------------------------------------------------------------------------
// 5. dBFS analytic cases.
void criterion_5(Harness& h) {
    const Real a = power_dbfs({Complex{1, 0}, Complex{1, 0}});
    const Real b = power_dbfs({Complex{2, 0}, Complex{2, 0}, Complex{2, 0}});
    const Real c = power_dbfs({Complex{1, 0}, Complex{0, 3}});
    const Real ea = std::abs(a - 0.0);
    const Real eb = std::abs(b - 10 * std::log10(4.0));
    const Real ec = std::abs(c - 10 * std::log10(5.0));
    const bool ok = ea <= 1e-9 && eb <= 1e-9 && ec <= 1e-9;
    h.report(5, ok, "dBFS analytic cases 0 / 6.0206 / 6.9897",
             fmt("errors %.1e, %.1e, %.1e (tol 1e-9)", ea, eb, ec));
}

// ---------------------------------------------------------------------------
// 6. 152-bit word bijection and the 76-element prototype.
void criterion_6(Harness& h) {
    const RisGeometry g = build_default_prototype(5.2e9);
    Rng rng(66);
    int violations = g.active_count() == 76 ? 0 : 1;
    for (int i = 0; i < 1000; ++i) {
        RisConfiguration config = RisConfiguration::zeros(76);
        for (int k = 0; k < 76; ++k) config.states[k] = static_cast<int>(rng.uniform_index(4));
        const auto bits = encode_pin_bits(g, config);
        if (bits.size() != 152) ++violations;
        const RisConfiguration back = decode_pin_bits(g, bits);
        if (!(back.states.array() == config.states.array()).all()) ++violations;
    }
    h.report(6, violations == 0, "encode/decode of the 152-bit diode word is a bijection",
             fmt("%d violations over 10^3 configurations; prototype has %d active elements", violations,
                 g.active_count()));
}

// ---------------------------------------------------------------------------
// 7. Directivity normalization against the closed-form cos pattern.
void criterion_7(Harness& h) {
    const RisGeometry g = build_uniform_grid(1, 1, 0.03, 0.03);
    const AngularGrid grid = AngularGrid::uniform_deg(1.0, 1.0);
    const PatternMap pattern =
        directivity_dbi(scattered_field(g, RisConfiguration::zeros(1), preset_by_name("loc1").scenario,
                                        grid, state_phase_table(2), Illumination::UniformPlaneWave));
    const Real peak_err = std::abs(pattern.dbi(0, 0) - 10 * std::log10(6.0));

    // independent trapezoid quadrature of D over the hemisphere
    Real integral = 0.0;
    const RealVector& el = grid.elevation;
    const RealVector& az = grid.azimuth;
    for (Eigen::Index i = 0; i + 1 < el.size(); ++i) {
        for (Eigen::Index j = 0; j < az.size(); ++j) {
            const Eigen::Index jn = (j + 1) % az.size();
            const Real daz = jn == 0 ? 2 * kPi - az[j] + az[0] : az[jn] - az[j];
            auto lin = [&](Eigen::Index a, Eigen::Index b) {
                return std::pow(10.0, pattern.dbi(a, b) / 10.0);
            };
            integral += 0.25 * daz * (el[i + 1] - el[i]) *
                        (lin(i, j) * std::sin(el[i]) + lin(i, jn) * std::sin(el[i]) +
                         lin(i + 1, j) * std::sin(el[i + 1]) + lin(i + 1, jn) * std::sin(el[i + 1]));
        }
    }
    const Real integral_err = std::abs(integral - 4 * kPi) / (4 * kPi);
    const bool ok = peak_err < 0.05 && integral_err < 0.01;
    h.report(7, ok, "cos-pattern directivity peaks at 7.78 dBi and integrates to 4pi",
             fmt("peak error %.4f dB (tol 0.05), hemisphere integral off by %.3f%% (tol 1%%)", peak_err,
                 100 * integral_err));
}

// ---------------------------------------------------------------------------
// 8. Received-power trends of the secrecy campaign over sampled placements.
void criterion_8(Harness& h) {
    const auto start = std::chrono::steady_clock::now();
    const RisGeometry g = build_default_prototype(5.2e9);
    CampaignConfig config;
    config.n_runs = 100;
    config.objective = Objective::MaxSecrecy;
    config.s_states = 2;
    config.base_seed = 801;
    config.sample_placements = true;
    const CampaignResult result = run_campaign(preset_by_name("loc1").scenario, g, config);
    const Eigen::Index last = result.stats.pb_db.mean.size() - 1;
    const Real pb_gain = result.stats.pb_db.mean[last] - result.stats.pb_db.mean[0];
    const Real pe_drop = result.stats.pe_db.mean[0] - result.stats.pe_db.mean[last];
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = pb_gain >= 5.0 && pe_drop >= 15.0 && secs < 300.0;
    h.report(8, ok, "secrecy campaign raises Bob >= 5 dB and drops Eve >= 15 dB",
             fmt("mean Pb %+0.2f dB (need >= +5), mean Pe -%0.2f dB (need >= 15), %.1f s", pb_gain,
                 pe_drop, secs));
}

// ---------------------------------------------------------------------------
// 9. Single-objective campaigns.
void criterion_9(Harness& h) {
    const RisGeometry g = build_default_prototype(5.2e9);
    CampaignConfig config;
    config.n_runs = 100;
    config.s_states = 2;
    config.base_seed = 801;
    config.sample_placements = true;

    config.objective = Objective::MaxBobPower;
    const CampaignResult bob = run_campaign(preset_by_name("loc1").scenario, g, config);
    Eigen::Index last = bob.stats.pb_db.mean.size() - 1;
    const Real pb_gain = bob.stats.pb_db.mean[last] - bob.stats.pb_db.mean[0];

    config.objective = Objective::MinEvePower;
    const CampaignResult eve = run_campaign(preset_by_name("loc1").scenario, g, config);
    last = eve.stats.pe_db.mean.size() - 1;
    const Real pe_drop = eve.stats.pe_db.mean[0] - eve.stats.pe_db.mean[last];

    const bool ok = pb_gain >= 10.0 && pe_drop >= 15.0;
    h.report(9, ok, "max-bob gains >= 10 dB and min-eve drops >= 15 dB",
             fmt("mean Pb %+0.2f dB (need >= +10), mean Pe -%0.2f dB (need >= 15)", pb_gain, pe_drop));
}

// ---------------------------------------------------------------------------
// 10. Radiation-pattern deltas toward Bob and Eve on the Loc1 preset.
void criterion_10(Harness& h) {
    const Scenario scenario = preset_by_name("loc1").scenario;
    const RisGeometry g = build_default_prototype(scenario.carrier_hz);
    const auto table = state_phase_table(2);
    const AngularGrid grid = AngularGrid::uniform_deg(1.0, 1.0);

    const PatternMap before =
        directivity_dbi(scattered_field(g, RisConfiguration::zeros(76), scenario, grid, table));

    SimulatedEvaluator evaluator(scenario, g, 2);
    const SweepResult sweep =
        greedy_sweep(evaluator, g, Objective::MaxSecrecy, 2, 1, scenario.noise_bob_w, scenario.noise_eve_w);
    const PatternMap after = directivity_dbi(scattered_field(g, sweep.config, scenario, grid, table));

    const AngularDirection bob = direction_from_ris_center(scenario.bob);
    const AngularDirection eve = direction_from_ris_center(scenario.eve);
    const Real bob_delta = gain_toward(after, bob) - gain_toward(before, bob);
    const Real eve_delta = gain_toward(after, eve) - gain_toward(before, eve);
    const bool ok = bob_delta >= 10.0 && eve_delta <= -8.0;
    h.report(10, ok, "optimization redirects the pattern from Eve toward Bob at Loc1",
             fmt("gain toward Bob %+0.2f dB (need >= +10), toward Eve %+0.2f dB (need <= -8)", bob_delta,
                 eve_delta));
}

// ---------------------------------------------------------------------------
// 11. Secrecy capacity settles above 5 bps/Hz on the Table 1 presets.
void criterion_11(Harness& h) {
    const RisGeometry g = build_default_prototype(5.2e9);
    std::vector<RealVector> traces;
    for (const char* name : {"loc1", "loc2", "loc3"}) {
        CampaignConfig config;
        config.n_runs = 40;
        config.objective = Objective::MaxSecrecy;
        config.s_states = 2;
        config.base_seed = 1101;
        const CampaignResult result = run_campaign(preset_by_name(name).scenario, g, config);
        traces.push_back(result.stats.cs.mean);
    }
    const Eigen::Index len = traces[0].size();
    const RealVector pooled = (traces[0] + traces[1] + traces[2]) / 3.0;
    const Eigen::Index i80 = static_cast<Eigen::Index>(0.8 * static_cast<double>(len - 1));
    const Real final_cs = pooled[len - 1];
    const Real late_improvement = pooled[len - 1] - pooled[i80];
    const bool ok = final_cs >= 5.0 && late_improvement <= 0.5;
    h.report(11, ok, "preset campaigns settle above 5 bps/Hz",
             fmt("pooled mean Cs %.2f bps/Hz (need >= 5), improvement after 80%% of iterations %.3f "
                 "(need <= 0.5)",
                 final_cs, late_improvement));
}

// ---------------------------------------------------------------------------
// 12. Ingestion of synthetic noise traces with a constructed 0.228 dB offset.
void criterion_12(Harness& h) {
    const fs::path dir = fs::temp_directory_path() / "rispls_acceptance_traces";
    fs::create_directories(dir);
    Rng rng(1212);
    auto gauss = [&]() {
        const Real u1 = std::max(rng.uniform01(), 1e-12);
        const Real u2 = rng.uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * kPi * u2);
    };
    const Real scale = std::pow(10.0, 0.228 / 20.0);
    const Real sigma = 300.0;
    std::vector<MeasuredTrace> bob_traces;
    std::vector<MeasuredTrace> eve_traces;
    for (int b = 0; b < 25; ++b) {
        const fs::path bob_path = dir / ("bob_" + std::to_string(b) + ".csv");
        const fs::path eve_path = dir / ("eve_" + std::to_string(b) + ".csv");
        std::ofstream bob_out(bob_path);
        std::ofstream eve_out(eve_path);
        bob_out << "i,q\n";
        eve_out << "i,q\n";
        for (int k = 0; k < 10000; ++k) {
            const Real i_part = sigma * gauss();
            const Real q_part = sigma * gauss();
            bob_out << std::llround(i_part) << "," << std::llround(q_part) << "\n";
            eve_out << std::llround(scale * i_part) << "," << std::llround(scale * q_part) << "\n";
        }
        bob_out.close();
        eve_out.close();
        bob_traces.push_back(ingest_trace(bob_path.string()));
        eve_traces.push_back(ingest_trace(eve_path.string()));
    }
    const NoiseFloorReport report = noise_floor_report(bob_traces, eve_traces);
    const Real err = std::abs(report.difference_db - 0.228);
    h.report(12, err <= 0.01, "noise-floor difference is recovered from raw traces",
             fmt("reported %.4f dB vs constructed 0.228 dB (error %.5f, tol 0.01)",
                 report.difference_db, err));
}

}  // namespace

int main() {
    std::printf("rispls acceptance suite\n");
    Harness h;
    criterion_1(h);
    criterion_2(h);
    criterion_3(h);
    criterion_4(h);
    criterion_5(h);
    criterion_6(h);
    criterion_7(h);
    criterion_8(h);
    criterion_9(h);
    criterion_10(h);
    criterion_11(h);
    criterion_12(h);
    std::printf("%d of 12 criteria passed\n", 12 - h.failures);
    return h.failures == 0 ? 0 : 1;
}
