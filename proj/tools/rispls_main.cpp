// rispls: RIS-assisted physical-layer security simulator and optimizer.
//
// Subcommands: presets, pattern, optimize, campaign, oracle, ingest.
// Exit codes: 0 success, 1 runtime/IO error, 2 argument/format error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rispls/channel.hpp"
#include "rispls/experiment.hpp"
#include "rispls/geometry.hpp"
#include "rispls/io.hpp"
#include "rispls/optimizer.hpp"
#include "rispls/radiation.hpp"
#include "rispls/ris.hpp"

namespace fs = std::filesystem;
using namespace rispls;

namespace {

struct ScenarioOverrides {
    std::string scenario_path;
    std::string preset;
    std::optional<std::string> alice_xyz, bob_xyz, eve_xyz;
    std::optional<double> carrier_hz, tx_power_w, noise_b_w, noise_e_w, gamma, dx_m, dy_m;
    std::optional<int> grid_m, grid_n, states;
    std::optional<std::string> cutout;
    std::optional<std::uint64_t> seed;
};

void add_scenario_options(CLI::App* cmd, ScenarioOverrides& o) {
    auto* scenario = cmd->add_option("--scenario", o.scenario_path, "Scenario file (key = value format)");
    cmd->add_option("--preset", o.preset, "Named placement preset: loc1, loc2, or loc3")
        ->excludes(scenario);
    cmd->add_option("--alice_xyz", o.alice_xyz, "Alice position 'x,y,z' in meters");
    cmd->add_option("--bob_xyz", o.bob_xyz, "Bob position 'x,y,z' in meters");
    cmd->add_option("--eve_xyz", o.eve_xyz, "Eve position 'x,y,z' in meters");
    cmd->add_option("--carrier_hz", o.carrier_hz, "Carrier frequency in Hz");
    cmd->add_option("--tx_power_w", o.tx_power_w, "Transmit power in watts");
    cmd->add_option("--noise_b_w", o.noise_b_w, "Bob noise power in watts");
    cmd->add_option("--noise_e_w", o.noise_e_w, "Eve noise power in watts");
    cmd->add_option("--gamma", o.gamma, "Per-element reflection amplitude in [0, 1]");
    cmd->add_option("--grid_m", o.grid_m, "Elements along x");
    cmd->add_option("--grid_n", o.grid_n, "Elements along y");
    cmd->add_option("--dx_m", o.dx_m, "Element pitch along x in meters (0 = half wavelength)");
    cmd->add_option("--dy_m", o.dy_m, "Element pitch along y in meters (0 = half wavelength)");
    cmd->add_option("--cutout", o.cutout, "Controller cutout: auto, controller, or none");
    cmd->add_option("--states", o.states, "Element states S (2 or 4)");
    cmd->add_option("--seed", o.seed, "RNG seed (auto-chosen and reported if omitted)");
}

ScenarioConfig resolve_scenario(const ScenarioOverrides& o) {
    ScenarioConfig config;
    if (!o.scenario_path.empty()) {
        config = load_scenario_file(o.scenario_path);
    } else if (!o.preset.empty()) {
        config.scenario = preset_by_name(o.preset).scenario;
    }
    auto xyz = [](const std::string& text) {
        ScenarioConfig tmp = parse_scenario_text("alice_xyz = " + text, "<flag>");
        return tmp.scenario.alice;
    };
    if (o.alice_xyz) config.scenario.alice = xyz(*o.alice_xyz);
    if (o.bob_xyz) config.scenario.bob = xyz(*o.bob_xyz);
    if (o.eve_xyz) config.scenario.eve = xyz(*o.eve_xyz);
    if (o.carrier_hz) config.scenario.carrier_hz = *o.carrier_hz;
    if (o.tx_power_w) config.scenario.tx_power_w = *o.tx_power_w;
    if (o.noise_b_w) config.scenario.noise_bob_w = *o.noise_b_w;
    if (o.noise_e_w) config.scenario.noise_eve_w = *o.noise_e_w;
    if (o.gamma) config.scenario.reflection_amplitude = *o.gamma;
    if (o.grid_m) config.grid_m = *o.grid_m;
    if (o.grid_n) config.grid_n = *o.grid_n;
    if (o.dx_m) config.dx_m = *o.dx_m;
    if (o.dy_m) config.dy_m = *o.dy_m;
    if (o.cutout) {
        if (*o.cutout != "auto" && *o.cutout != "controller" && *o.cutout != "none") {
            throw std::invalid_argument("--cutout must be auto, controller, or none");
        }
        config.cutout = *o.cutout;
    }
    if (o.states) config.s_states = *o.states;
    if (o.seed) config.seed = *o.seed;
    config.scenario.validate();
    return config;
}

/// Explicit --seed wins, then the scenario file; otherwise one is drawn from
/// the system and reported in the output metadata.
std::uint64_t resolve_seed(const ScenarioConfig& config, bool& auto_chosen) {
    auto_chosen = false;
    if (config.seed) return *config.seed;
    auto_chosen = true;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

Objective parse_objective(const std::string& name) {
    if (name == "max-secrecy") return Objective::MaxSecrecy;
    if (name == "max-bob") return Objective::MaxBobPower;
    if (name == "min-eve") return Objective::MinEvePower;
    throw std::invalid_argument("unknown objective '" + name + "' (max-secrecy, max-bob, min-eve)");
}

std::string read_config_argument(const std::string& arg) {
    if (fs::exists(arg) && fs::is_regular_file(arg)) {
        std::ifstream in(arg);
        std::string line;
        while (std::getline(in, line)) {
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            const auto last = line.find_last_not_of(" \t\r");
            return line.substr(first, last - first + 1);
        }
        throw std::invalid_argument("config file '" + arg + "' contains no configuration string");
    }
    return arg;
}

Metadata command_metadata(const ScenarioConfig& config, std::uint64_t seed) {
    return make_metadata(seed, scenario_to_text(config));
}

int cmd_presets(const std::string& write_dir) {
    for (const auto& preset : table1_presets()) {
        const Scenario& s = preset.scenario;
        std::printf("%s alice=(%.2f, %.2f, %.2f) bob=(%.2f, %.2f, %.2f) eve=(%.2f, %.2f, %.2f)\n",
                    preset.name.c_str(), s.alice.x(), s.alice.y(), s.alice.z(), s.bob.x(), s.bob.y(),
                    s.bob.z(), s.eve.x(), s.eve.y(), s.eve.z());
    }
    if (!write_dir.empty()) {
        fs::create_directories(write_dir);
        for (const auto& preset : table1_presets()) {
            ScenarioConfig config;
            config.scenario = preset.scenario;
            std::string name = preset.name;
            for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            const fs::path path = fs::path(write_dir) / (name + ".scn");
            write_scenario_file(path.string(), config);
            std::printf("wrote %s\n", path.string().c_str());
        }
    }
    return 0;
}

int cmd_pattern(const ScenarioOverrides& overrides, const std::string& config_arg, double res_deg,
                const std::string& out_path, bool plane_wave, bool clamped) {
    const ScenarioConfig config = resolve_scenario(overrides);
    const RisGeometry geometry = make_geometry(config);
    const RisConfiguration ris_config =
        config_arg.empty() ? RisConfiguration::zeros(geometry.active_count())
                           : parse_config_string(geometry, config.s_states, read_config_argument(config_arg));

    const AngularGrid grid = AngularGrid::uniform_deg(res_deg, res_deg);
    const std::vector<Real> table = state_phase_table(config.s_states);
    const Illumination illum = plane_wave ? Illumination::UniformPlaneWave : Illumination::NearFieldAlice;
    const PatternMap pattern =
        directivity_dbi(scattered_field(geometry, ris_config, config.scenario, grid, table, illum));

    write_pattern_csv(out_path, pattern, clamped, command_metadata(config, config.seed.value_or(0)));

    auto report_gain = [&](const char* name, const Vec3& position) {
        const AngularDirection dir = direction_from_ris_center(position);
        std::printf("gain_%s_dbi: %.4f\n", name, gain_toward(pattern, dir));
    };
    report_gain("alice", config.scenario.alice);
    report_gain("bob", config.scenario.bob);
    report_gain("eve", config.scenario.eve);
    std::printf("pattern: %s (%lld x %lld points)\n", out_path.c_str(),
                static_cast<long long>(grid.elevation.size()), static_cast<long long>(grid.azimuth.size()));
    return 0;
}

int cmd_optimize(const ScenarioOverrides& overrides, const std::string& objective_name_,
                 const std::string& out_path, const std::string& config_out, int repeats) {
    const ScenarioConfig config = resolve_scenario(overrides);
    const Objective objective = parse_objective(objective_name_);
    const RisGeometry geometry = make_geometry(config);
    bool auto_seed = false;
    const std::uint64_t seed = resolve_seed(config, auto_seed);

    SimulatedEvaluator evaluator(config.scenario, geometry, config.s_states);
    const SweepResult result =
        greedy_sweep(evaluator, geometry, objective, config.s_states, seed, config.scenario.noise_bob_w,
                     config.scenario.noise_eve_w, repeats);
    const auto [pb, pe] = evaluator.evaluate(result.config);

    if (!out_path.empty()) {
        write_sweep_csv(out_path, result.records, command_metadata(config, seed));
    }
    if (auto_seed) std::printf("seed: %llu\n", static_cast<unsigned long long>(seed));
    std::printf("final_pb_dbm: %.4f\n", watts_to_dbm(pb));
    std::printf("final_pe_dbm: %.4f\n", watts_to_dbm(pe));
    std::printf("final_cs_bpshz: %.4f\n",
                secrecy_capacity(pb, pe, config.scenario.noise_bob_w, config.scenario.noise_eve_w));
    std::printf("states: %s\n", format_state_string(result.config).c_str());
    if (geometry.is_default_prototype()) {
        std::printf("bits: %s\n", format_bit_string(geometry, result.config).c_str());
    }
    if (!config_out.empty()) {
        std::ofstream out(config_out);
        if (!out) throw std::runtime_error("cannot write config '" + config_out + "'");
        out << format_state_string(result.config) << "\n";
    }
    return 0;
}

int cmd_campaign(const ScenarioOverrides& overrides, int runs, const std::string& objective_name_,
                 bool sample, const std::string& out_dir, int jobs, bool save_sweeps, double min_sep,
                 const std::vector<double>& region) {
    const ScenarioConfig config = resolve_scenario(overrides);
    const RisGeometry geometry = make_geometry(config);
    bool auto_seed = false;
    const std::uint64_t seed = resolve_seed(config, auto_seed);

    CampaignConfig campaign;
    campaign.n_runs = runs;
    campaign.objective = parse_objective(objective_name_);
    campaign.s_states = config.s_states;
    campaign.base_seed = seed;
    campaign.sample_placements = sample;
    campaign.jobs = jobs;
    campaign.constraints.min_separation_m = min_sep;
    if (!region.empty()) {
        if (region.size() != 6) {
            throw std::invalid_argument("--region expects 6 values: xmin ymin zmin xmax ymax zmax");
        }
        campaign.constraints.region_min = Vec3{region[0], region[1], region[2]};
        campaign.constraints.region_max = Vec3{region[3], region[4], region[5]};
    }

    const CampaignResult result = run_campaign(config.scenario, geometry, campaign);

    fs::create_directories(out_dir);
    const Metadata meta = command_metadata(config, seed);
    const fs::path stats_path = fs::path(out_dir) / "stats.json";
    write_stats_json(stats_path.string(), result.stats, meta);
    if (save_sweeps) {
        for (std::size_t k = 0; k < result.sweeps.size(); ++k) {
            const fs::path sweep_path = fs::path(out_dir) / ("sweep_" + std::to_string(k) + ".csv");
            write_sweep_csv(sweep_path.string(), result.sweeps[k].records, meta);
        }
    }
    if (auto_seed) std::printf("seed: %llu\n", static_cast<unsigned long long>(seed));
    const Eigen::Index last = result.stats.cs.mean.size() - 1;
    std::printf("runs: %d\n", runs);
    std::printf("mean_pb_dbm_initial: %.4f\n", result.stats.pb_db.mean[0]);
    std::printf("mean_pb_dbm_final: %.4f\n", result.stats.pb_db.mean[last]);
    std::printf("mean_pe_dbm_initial: %.4f\n", result.stats.pe_db.mean[0]);
    std::printf("mean_pe_dbm_final: %.4f\n", result.stats.pe_db.mean[last]);
    std::printf("mean_cs_initial: %.4f\n", result.stats.cs.mean[0]);
    std::printf("mean_cs_final: %.4f\n", result.stats.cs.mean[last]);
    std::printf("stats: %s\n", stats_path.string().c_str());
    return 0;
}

int cmd_oracle(const ScenarioOverrides& overrides, int elements, const std::string& objective_name_,
               int trials, std::uint64_t cap) {
    const ScenarioConfig config = resolve_scenario(overrides);
    const Objective objective = parse_objective(objective_name_);
    bool auto_seed = false;
    const std::uint64_t seed = resolve_seed(config, auto_seed);

    // Small-instance oracle runs on a 1 x k sub-array at half-wavelength pitch.
    const Real pitch = config.scenario.wavelength() / 2.0;
    const RisGeometry geometry = build_uniform_grid(1, elements, pitch, pitch);
    SimulatedEvaluator evaluator(config.scenario, geometry, config.s_states);
    const Real nb = config.scenario.noise_bob_w;
    const Real ne = config.scenario.noise_eve_w;

    const auto [best_config, best_score] =
        exhaustive_search(evaluator, geometry, objective, config.s_states, cap, nb, ne);
    const SweepResult greedy =
        greedy_sweep(evaluator, geometry, objective, config.s_states, seed, nb, ne);
    const auto [rand_config, rand_score] =
        random_search(evaluator, geometry, objective, config.s_states, trials, seed, nb, ne);

    if (auto_seed) std::printf("seed: %llu\n", static_cast<unsigned long long>(seed));
    std::printf("elements: %d\n", elements);
    std::printf("exhaustive_score: %.10g\n", best_score);
    std::printf("greedy_score: %.10g\n", greedy.best_score);
    std::printf("random_score: %.10g\n", rand_score);
    std::printf("greedy_gap: %.10g\n", best_score - greedy.best_score);
    std::printf("random_gap: %.10g\n", best_score - rand_score);
    std::printf("exhaustive_states: %s\n", format_state_string(best_config).c_str());
    std::printf("greedy_states: %s\n", format_state_string(greedy.config).c_str());
    return 0;
}

int cmd_ingest(const std::vector<std::string>& bob_files, const std::vector<std::string>& eve_files,
               const std::string& summary_file, const std::string& out_path, bool fullscale_ref) {
    IngestReport report;
    report.fullscale_ref_db = fullscale_ref ? 10.0 * std::log10(2048.0 * 2048.0) : 0.0;

    std::vector<MeasuredTrace> bob_traces, eve_traces;
    for (const auto& f : bob_files) bob_traces.push_back(ingest_trace(f));
    for (const auto& f : eve_files) eve_traces.push_back(ingest_trace(f));

    MeasuredTrace summary;
    if (!summary_file.empty()) {
        summary = ingest_trace(summary_file);
        if (summary.is_raw()) {
            throw std::invalid_argument("--summary expects a pb_dbfs,pe_dbfs trace, got raw i,q samples");
        }
        for (const auto& [pb, pe] : summary.readings_dbfs) report.cs.push_back(secrecy_from_dbfs(pb, pe));
    }

    if (!bob_traces.empty() && !eve_traces.empty()) {
        report.noise = noise_floor_report(bob_traces, eve_traces);
    } else if (!summary_file.empty() && bob_traces.empty() && eve_traces.empty()) {
        report.noise = noise_floor_report({summary}, {summary});
    } else if (!bob_traces.empty() || !eve_traces.empty()) {
        throw std::invalid_argument("ingest needs both --bob and --eve traces for a noise report");
    } else if (summary_file.empty()) {
        throw std::invalid_argument("ingest needs --bob/--eve traces or a --summary file");
    }

    std::string digest;
    for (const auto& f : bob_files) digest += f + "\n";
    for (const auto& f : eve_files) digest += f + "\n";
    digest += summary_file;
    const Metadata meta = make_metadata(0, digest);
    write_ingest_json(out_path, report, meta);
    if (report.noise) {
        std::printf("bob_mean_dbfs: %.4f\n", report.noise->mean_bob_dbfs - report.fullscale_ref_db);
        std::printf("eve_mean_dbfs: %.4f\n", report.noise->mean_eve_dbfs - report.fullscale_ref_db);
        std::printf("difference_db: %.4f\n", report.noise->difference_db);
    }
    if (!report.cs.empty()) std::printf("cs_points: %zu\n", report.cs.size());
    std::printf("report: %s\n", out_path.c_str());
    return 0;
}

std::string single_line(std::string text) {
    for (auto& c : text) {
        if (c == '\n' || c == '\r') c = ' ';
    }
    return text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted physical-layer security simulator"};
    app.require_subcommand(1);

    // presets
    std::string presets_write_dir;
    auto* presets_cmd = app.add_subcommand("presets", "List the built-in placement presets");
    presets_cmd->add_option("--write", presets_write_dir, "Also write scenario files to this directory");

    // pattern
    ScenarioOverrides pattern_overrides;
    std::string pattern_config, pattern_out = "pattern.csv";
    double pattern_res = 1.0;
    bool pattern_plane_wave = false, pattern_clamped = false;
    auto* pattern_cmd = app.add_subcommand("pattern", "Export the scattered radiation pattern");
    add_scenario_options(pattern_cmd, pattern_overrides);
    pattern_cmd->add_option("--config", pattern_config,
                            "RIS configuration: state digits or 152-bit string (or a file holding one); "
                            "default all-zero");
    pattern_cmd->add_option("--res-deg", pattern_res, "Grid resolution in degrees (default 1)");
    pattern_cmd->add_option("--out", pattern_out, "Output CSV path");
    pattern_cmd->add_flag("--plane-wave", pattern_plane_wave,
                          "Uniform plane-wave illumination instead of near-field Alice");
    pattern_cmd->add_flag("--clamped-column", pattern_clamped,
                          "Add a dbi_clamped display column (floor at 0 dBi)");

    // optimize
    ScenarioOverrides optimize_overrides;
    std::string optimize_objective = "max-secrecy", optimize_out = "sweep.csv", optimize_config_out;
    int optimize_repeats = 1;
    auto* optimize_cmd = app.add_subcommand("optimize", "Run the iterative greedy sweep");
    add_scenario_options(optimize_cmd, optimize_overrides);
    optimize_cmd->add_option("--objective", optimize_objective, "max-secrecy, max-bob, or min-eve");
    optimize_cmd->add_option("--out", optimize_out, "Sweep log CSV path");
    optimize_cmd->add_option("--config-out", optimize_config_out, "Write the final state string here");
    optimize_cmd->add_option("--repeats", optimize_repeats, "Full passes over the elements (default 1)");

    // campaign
    ScenarioOverrides campaign_overrides;
    std::string campaign_objective = "max-secrecy", campaign_out = "campaign";
    int campaign_runs = 100, campaign_jobs = 1;
    bool campaign_sample = false, campaign_save_sweeps = false;
    double campaign_min_sep = 0.1;
    std::vector<double> campaign_region;
    auto* campaign_cmd = app.add_subcommand("campaign", "Monte Carlo campaign of greedy sweeps");
    add_scenario_options(campaign_cmd, campaign_overrides);
    campaign_cmd->add_option("--runs", campaign_runs, "Number of runs (default 100)");
    campaign_cmd->add_option("--objective", campaign_objective, "max-secrecy, max-bob, or min-eve");
    campaign_cmd->add_flag("--sample", campaign_sample,
                           "Sample terminal placements per run (near-field Alice, far-field Bob/Eve)");
    campaign_cmd->add_option("--out", campaign_out, "Output directory");
    campaign_cmd->add_option("--jobs", campaign_jobs, "Worker threads (default 1)");
    campaign_cmd->add_flag("--save-sweeps", campaign_save_sweeps, "Write per-run sweep_<k>.csv logs");
    campaign_cmd->add_option("--min-sep", campaign_min_sep, "Minimum terminal separation in meters");
    campaign_cmd->add_option("--region", campaign_region,
                             "Sampling box: xmin ymin zmin xmax ymax zmax")
        ->expected(6);

    // oracle
    ScenarioOverrides oracle_overrides;
    std::string oracle_objective = "max-secrecy";
    int oracle_elements = 8, oracle_trials = 100;
    std::uint64_t oracle_cap = kDefaultExhaustiveCap;
    auto* oracle_cmd = app.add_subcommand("oracle", "Compare greedy vs exhaustive and random baselines");
    add_scenario_options(oracle_cmd, oracle_overrides);
    oracle_cmd->add_option("--elements", oracle_elements, "Sub-array size (1 x k elements)");
    oracle_cmd->add_option("--objective", oracle_objective, "max-secrecy, max-bob, or min-eve");
    oracle_cmd->add_option("--trials", oracle_trials, "Random-search trials (default 100)");
    oracle_cmd->add_option("--cap", oracle_cap, "Exhaustive enumeration cap (default 2^20)");

    // ingest
    std::vector<std::string> ingest_bob, ingest_eve;
    std::string ingest_summary, ingest_out = "ingest.json";
    bool ingest_fullscale = false;
    auto* ingest_cmd = app.add_subcommand("ingest", "Reduce measured traces to a noise/secrecy report");
    ingest_cmd->add_option("--bob", ingest_bob, "Raw i,q trace files for Bob (one block per file)");
    ingest_cmd->add_option("--eve", ingest_eve, "Raw i,q trace files for Eve (one block per file)");
    ingest_cmd->add_option("--summary", ingest_summary, "Per-iteration pb_dbfs,pe_dbfs trace");
    ingest_cmd->add_option("--out", ingest_out, "Output JSON path");
    ingest_cmd->add_flag("--fullscale-ref", ingest_fullscale,
                         "Report dBFS relative to the 2048 full-scale amplitude");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << single_line(e.what()) << "\n";
        return 2;
    }

    try {
        if (presets_cmd->parsed()) return cmd_presets(presets_write_dir);
        if (pattern_cmd->parsed()) {
            return cmd_pattern(pattern_overrides, pattern_config, pattern_res, pattern_out,
                               pattern_plane_wave, pattern_clamped);
        }
        if (optimize_cmd->parsed()) {
            return cmd_optimize(optimize_overrides, optimize_objective, optimize_out, optimize_config_out,
                                optimize_repeats);
        }
        if (campaign_cmd->parsed()) {
            return cmd_campaign(campaign_overrides, campaign_runs, campaign_objective, campaign_sample,
                                campaign_out, campaign_jobs, campaign_save_sweeps, campaign_min_sep,
                                campaign_region);
        }
        if (oracle_cmd->parsed()) {
            return cmd_oracle(oracle_overrides, oracle_elements, oracle_objective, oracle_trials,
                              oracle_cap);
        }
        if (ingest_cmd->parsed()) {
            return cmd_ingest(ingest_bob, ingest_eve, ingest_summary, ingest_out, ingest_fullscale);
        }
    } catch (const SearchSpaceTooLarge& e) {
        std::cerr << "error: " << single_line(e.what()) << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << single_line(e.what()) << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << single_line(e.what()) << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << single_line(e.what()) << "\n";
        return 1;
    }
    return 0;
}
