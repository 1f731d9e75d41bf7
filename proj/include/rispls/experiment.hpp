#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rispls/channel.hpp"
#include "rispls/geometry.hpp"
#include "rispls/optimizer.hpp"
#include "rispls/ris.hpp"
#include "rispls/types.hpp"

namespace rispls {

/// Axis-aligned sampling region and terminal constraints for Monte Carlo
/// placements: Alice in the near field, Bob and Eve in the far field, all in
/// front of the RIS, pairwise at least `min_separation_m` apart.
struct PlacementConstraints {
    Vec3 region_min{-5.0, -5.0, 0.0};
    Vec3 region_max{5.0, 5.0, 10.0};
    Real min_separation_m = 0.1;
    std::uint64_t max_rejections = 1000000;
};

struct PlacementSample {
    Vec3 alice;
    Vec3 bob;
    Vec3 eve;
};

/// Rejection-samples terminal positions satisfying the constraints. Refuses
/// up front if the region cannot contain the required field zones, and throws
/// naming the violated constraint after `max_rejections` failed draws.
PlacementSample sample_placement(const PlacementConstraints& constraints, const RisGeometry& geometry,
                                 Real wavelength, std::uint64_t seed);

/// Boxplot series across runs, one entry per iteration.
struct BoxSeries {
    RealVector min, q1, median, q3, max, mean;
    Eigen::Index size() const { return mean.size(); }
};

/// Per-iteration statistics of a campaign: index 0 is the initial
/// configuration, followed by one point per trial (active_count * S per
/// pass). Power series are in dBm of the configuration as kept after each
/// trial; cs is the clamped secrecy capacity of the same points.
struct RunStatistics {
    BoxSeries pb_db;
    BoxSeries pe_db;
    BoxSeries cs;
};

/// Inclusive linear-interpolation quartiles and arithmetic mean, per
/// iteration across runs. Throws on ragged input.
BoxSeries aggregate_boxplot(const std::vector<RealVector>& values_per_run);

/// Staircase view of a sweep: element 0 holds the initial powers, element t
/// the powers of the configuration as kept after trial t (the trial's own
/// powers when accepted, the previous value otherwise).
struct RunSeries {
    RealVector pb_w;
    RealVector pe_w;
};

RunSeries kept_power_series(Real initial_pb_w, Real initial_pe_w, const std::vector<SweepRecord>& records);

/// Table 1 deployment presets. Positions are fixed; the remaining fields
/// take the simulation defaults.
struct ScenarioPreset {
    std::string name;
    Scenario scenario;
};

std::vector<ScenarioPreset> table1_presets();

/// Finds a preset by case-insensitive name ("loc1", "loc2", "loc3").
ScenarioPreset preset_by_name(const std::string& name);

struct CampaignConfig {
    int n_runs = 100;
    Objective objective = Objective::MaxSecrecy;
    int s_states = 2;
    std::uint64_t base_seed = 1;
    bool sample_placements = false;
    PlacementConstraints constraints;
    int jobs = 1;
};

struct CampaignResult {
    RunStatistics stats;
    std::vector<SweepResult> sweeps;    // per run, in run order
    std::vector<Scenario> scenarios;    // per run (positions differ when sampling)
};

/// Runs n seeded greedy sweeps (run k uses seed base_seed + k), sampling
/// placements per run when configured, and aggregates per-iteration boxplot
/// statistics. Runs may execute on `jobs` worker threads; results are reduced
/// in run order, so outputs do not depend on scheduling. A failing run aborts
/// the campaign with its index and cause.
CampaignResult run_campaign(const Scenario& base_scenario, const RisGeometry& geometry,
                            const CampaignConfig& config);

/// Measured data: either per-iteration (Pb, Pe) dBFS readings or raw I/Q
/// sample blocks (integer components in (-2047, 2048]).
struct MeasuredTrace {
    std::vector<std::pair<Real, Real>> readings_dbfs;   // summary form
    std::vector<std::vector<Complex>> blocks;           // raw form
    bool is_raw() const { return !blocks.empty(); }
};

/// Reads a trace CSV, auto-detected by header: "i,q" (one raw block per
/// file) or "pb_dbfs,pe_dbfs" (per-iteration summary). Lines starting with
/// '#' are ignored. Errors cite the offending line number.
MeasuredTrace ingest_trace(const std::string& path);

struct NoiseFloorReport {
    Real mean_bob_dbfs = 0.0;
    Real mean_eve_dbfs = 0.0;
    Real difference_db = 0.0;  // mean_eve_dbfs - mean_bob_dbfs
    std::size_t n_bob = 0;
    std::size_t n_eve = 0;
};

/// Reduces raw blocks to dBFS readings (Bob uses the first reading of a
/// summary pair, Eve the second).
std::vector<Real> trace_dbfs_values(const MeasuredTrace& trace, bool eve_column);

NoiseFloorReport noise_floor_report(const std::vector<MeasuredTrace>& bob_traces,
                                    const std::vector<MeasuredTrace>& eve_traces);

/// Secrecy capacity from dBFS powers: max((pb - pe + correction) / (10 log10 2), 0).
/// With neglect_noise_difference (the default downstream), correction is 0.
Real secrecy_from_dbfs(Real pb_dbfs, Real pe_dbfs, Real noise_correction_db = 0.0);

}  // namespace rispls
