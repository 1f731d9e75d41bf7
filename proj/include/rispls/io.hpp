#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rispls/channel.hpp"
#include "rispls/experiment.hpp"
#include "rispls/optimizer.hpp"
#include "rispls/radiation.hpp"
#include "rispls/ris.hpp"

namespace rispls {

inline constexpr const char* kToolVersion = "0.1.0";

/// A scenario file plus the grid/optimizer settings that ride along with it.
/// Pitch 0 means half a wavelength at the carrier. Cutout "auto" applies the
/// controller cutout to the 8x10 prototype grid and none otherwise.
struct ScenarioConfig {
    Scenario scenario;
    int grid_m = 8;
    int grid_n = 10;
    Real dx_m = 0.0;
    Real dy_m = 0.0;
    std::string cutout = "auto";  // "auto" | "controller" | "none"
    int s_states = 2;
    std::optional<std::uint64_t> seed;
};

/// Plain-text key = value format. Keys: alice_xyz, bob_xyz, eve_xyz,
/// carrier_hz, tx_power_w, noise_b_w, noise_e_w, gamma, grid_m, grid_n,
/// dx_m, dy_m, cutout, states, seed. '#' starts a comment. Unknown keys and
/// malformed values throw std::invalid_argument with the line number.
ScenarioConfig load_scenario_file(const std::string& path);
ScenarioConfig parse_scenario_text(const std::string& text, const std::string& origin = "<string>");
void write_scenario_file(const std::string& path, const ScenarioConfig& config);
std::string scenario_to_text(const ScenarioConfig& config);

RisGeometry make_geometry(const ScenarioConfig& config);

/// Ordered key/value pairs emitted as a header comment block in CSVs and as
/// a "meta" object in JSON outputs. Contains no timestamps so outputs stay
/// byte-identical for identical inputs.
using Metadata = std::vector<std::pair<std::string, std::string>>;

Metadata make_metadata(std::uint64_t seed, const std::string& config_text);

/// FNV-1a 64-bit hash, hex-formatted; used as the config hash in metadata.
std::uint64_t fnv1a64(const std::string& text);
std::string to_hex(std::uint64_t value);

/// Sweep log with columns step,m,n,trial_state,accepted,P_b_dB,P_e_dB,score,best_score.
void write_sweep_csv(const std::string& path, const std::vector<SweepRecord>& records,
                     const Metadata& metadata);

/// Pattern export with columns theta_deg,phi_deg,E_re,E_im,dbi and, when
/// clamped_column is set, dbi_clamped (display floor at 0 dBi; stored values
/// are never clamped).
void write_pattern_csv(const std::string& path, const PatternMap& pattern, bool clamped_column,
                       const Metadata& metadata);

/// stats.json: per-iteration arrays min,q1,median,q3,max,mean under pb_db,
/// pe_db, and cs, plus the metadata block.
void write_stats_json(const std::string& path, const RunStatistics& stats, const Metadata& metadata);

std::string stats_to_json(const RunStatistics& stats, const Metadata& metadata);

/// Noise/secrecy report written by the ingest command.
struct IngestReport {
    std::optional<NoiseFloorReport> noise;
    std::vector<Real> cs;  // per-iteration secrecy capacity from a summary trace
    bool neglect_noise_difference = true;
    Real fullscale_ref_db = 0.0;  // subtracted from reported dBFS values when nonzero
};

void write_ingest_json(const std::string& path, const IngestReport& report, const Metadata& metadata);
std::string ingest_to_json(const IngestReport& report, const Metadata& metadata);

/// Deterministic shortest-ish decimal formatting used in CSV output.
std::string format_real(Real value);

}  // namespace rispls
