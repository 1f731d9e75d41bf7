#include "rispls/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rispls {

namespace {

using OrderedJson = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

Real parse_real(const std::string& text, const std::string& origin, std::size_t line_no) {
    std::size_t pos = 0;
    Real value = 0.0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != text.size()) {
        throw std::invalid_argument(origin + ":" + std::to_string(line_no) + ": malformed number '" + text +
                                    "'");
    }
    return value;
}

Vec3 parse_xyz(const std::string& text, const std::string& origin, std::size_t line_no) {
    std::vector<Real> parts;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) parts.push_back(parse_real(trim(field), origin, line_no));
    if (parts.size() != 3) {
        throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                    ": expected three comma-separated coordinates, got '" + text + "'");
    }
    return Vec3{parts[0], parts[1], parts[2]};
}

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text, const std::string& origin) {
    ScenarioConfig config;
    std::stringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                        ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "alice_xyz") {
            config.scenario.alice = parse_xyz(value, origin, line_no);
        } else if (key == "bob_xyz") {
            config.scenario.bob = parse_xyz(value, origin, line_no);
        } else if (key == "eve_xyz") {
            config.scenario.eve = parse_xyz(value, origin, line_no);
        } else if (key == "carrier_hz") {
            config.scenario.carrier_hz = parse_real(value, origin, line_no);
        } else if (key == "tx_power_w") {
            config.scenario.tx_power_w = parse_real(value, origin, line_no);
        } else if (key == "noise_b_w") {
            config.scenario.noise_bob_w = parse_real(value, origin, line_no);
        } else if (key == "noise_e_w") {
            config.scenario.noise_eve_w = parse_real(value, origin, line_no);
        } else if (key == "gamma") {
            config.scenario.reflection_amplitude = parse_real(value, origin, line_no);
        } else if (key == "grid_m") {
            config.grid_m = static_cast<int>(parse_real(value, origin, line_no));
        } else if (key == "grid_n") {
            config.grid_n = static_cast<int>(parse_real(value, origin, line_no));
        } else if (key == "dx_m") {
            config.dx_m = parse_real(value, origin, line_no);
        } else if (key == "dy_m") {
            config.dy_m = parse_real(value, origin, line_no);
        } else if (key == "cutout") {
            if (value != "auto" && value != "controller" && value != "none") {
                throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                            ": cutout must be auto, controller, or none");
            }
            config.cutout = value;
        } else if (key == "states") {
            config.s_states = static_cast<int>(parse_real(value, origin, line_no));
        } else if (key == "seed") {
            config.seed = static_cast<std::uint64_t>(parse_real(value, origin, line_no));
        } else {
            throw std::invalid_argument(origin + ":" + std::to_string(line_no) + ": unknown key '" + key +
                                        "'");
        }
    }
    return config;
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str(), path);
}

std::string scenario_to_text(const ScenarioConfig& config) {
    std::ostringstream out;
    auto xyz = [](const Vec3& v) {
        return format_real(v.x()) + ", " + format_real(v.y()) + ", " + format_real(v.z());
    };
    out << "alice_xyz = " << xyz(config.scenario.alice) << "\n";
    out << "bob_xyz = " << xyz(config.scenario.bob) << "\n";
    out << "eve_xyz = " << xyz(config.scenario.eve) << "\n";
    out << "carrier_hz = " << format_real(config.scenario.carrier_hz) << "\n";
    out << "tx_power_w = " << format_real(config.scenario.tx_power_w) << "\n";
    out << "noise_b_w = " << format_real(config.scenario.noise_bob_w) << "\n";
    out << "noise_e_w = " << format_real(config.scenario.noise_eve_w) << "\n";
    out << "gamma = " << format_real(config.scenario.reflection_amplitude) << "\n";
    out << "grid_m = " << config.grid_m << "\n";
    out << "grid_n = " << config.grid_n << "\n";
    out << "dx_m = " << format_real(config.dx_m) << "\n";
    out << "dy_m = " << format_real(config.dy_m) << "\n";
    out << "cutout = " << config.cutout << "\n";
    out << "states = " << config.s_states << "\n";
    if (config.seed) out << "seed = " << *config.seed << "\n";
    return out.str();
}

void write_scenario_file(const std::string& path, const ScenarioConfig& config) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario file '" + path + "'");
    out << "# rispls scenario\n" << scenario_to_text(config);
}

RisGeometry make_geometry(const ScenarioConfig& config) {
    const Real lambda = config.scenario.wavelength();
    const Real dx = config.dx_m > 0.0 ? config.dx_m : lambda / 2.0;
    const Real dy = config.dy_m > 0.0 ? config.dy_m : lambda / 2.0;
    bool controller = config.cutout == "controller";
    if (config.cutout == "auto") controller = config.grid_m == 8 && config.grid_n == 10;
    if (controller) return build_grid_with_controller_cutout(config.grid_m, config.grid_n, dx, dy);
    return build_uniform_grid(config.grid_m, config.grid_n, dx, dy);
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string to_hex(std::uint64_t value) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

Metadata make_metadata(std::uint64_t seed, const std::string& config_text) {
    Metadata meta;
    meta.emplace_back("tool", std::string("rispls ") + kToolVersion);
    meta.emplace_back("seed", std::to_string(seed));
    meta.emplace_back("config_hash", to_hex(fnv1a64(config_text)));
    return meta;
}

std::string format_real(Real value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

namespace {

void write_metadata_comment(std::ostream& out, const Metadata& metadata) {
    for (const auto& [key, value] : metadata) out << "# " << key << ": " << value << "\n";
}

OrderedJson metadata_json(const Metadata& metadata) {
    OrderedJson obj = OrderedJson::object();
    for (const auto& [key, value] : metadata) obj[key] = value;
    return obj;
}

OrderedJson box_series_json(const BoxSeries& series) {
    auto vec = [](const RealVector& v) {
        std::vector<Real> out(v.data(), v.data() + v.size());
        return out;
    };
    OrderedJson obj = OrderedJson::object();
    obj["min"] = vec(series.min);
    obj["q1"] = vec(series.q1);
    obj["median"] = vec(series.median);
    obj["q3"] = vec(series.q3);
    obj["max"] = vec(series.max);
    obj["mean"] = vec(series.mean);
    return obj;
}

}  // namespace

void write_sweep_csv(const std::string& path, const std::vector<SweepRecord>& records,
                     const Metadata& metadata) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write sweep log '" + path + "'");
    write_metadata_comment(out, metadata);
    out << "step,m,n,trial_state,accepted,P_b_dB,P_e_dB,score,best_score\n";
    for (const auto& rec : records) {
        out << rec.step << ',' << rec.m << ',' << rec.n << ',' << rec.trial_state << ','
            << (rec.accepted ? 1 : 0) << ',' << format_real(rec.p_bob_db) << ',' << format_real(rec.p_eve_db)
            << ',' << format_real(rec.score) << ',' << format_real(rec.best_score) << "\n";
    }
}

void write_pattern_csv(const std::string& path, const PatternMap& pattern, bool clamped_column,
                       const Metadata& metadata) {
    if (!pattern.dbi_filled) throw std::logic_error("write_pattern_csv: dBi layer not filled");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write pattern '" + path + "'");
    write_metadata_comment(out, metadata);
    out << "theta_deg,phi_deg,E_re,E_im,dbi";
    if (clamped_column) out << ",dbi_clamped";
    out << "\n";
    for (Eigen::Index i = 0; i < pattern.grid.elevation.size(); ++i) {
        for (Eigen::Index j = 0; j < pattern.grid.azimuth.size(); ++j) {
            out << format_real(pattern.grid.elevation[i] * 180.0 / kPi) << ','
                << format_real(pattern.grid.azimuth[j] * 180.0 / kPi) << ','
                << format_real(pattern.field(i, j).real()) << ',' << format_real(pattern.field(i, j).imag())
                << ',' << format_real(pattern.dbi(i, j));
            if (clamped_column) out << ',' << format_real(std::max<Real>(pattern.dbi(i, j), 0.0));
            out << "\n";
        }
    }
}

std::string stats_to_json(const RunStatistics& stats, const Metadata& metadata) {
    OrderedJson root = OrderedJson::object();
    root["meta"] = metadata_json(metadata);
    root["pb_db"] = box_series_json(stats.pb_db);
    root["pe_db"] = box_series_json(stats.pe_db);
    root["cs"] = box_series_json(stats.cs);
    return root.dump(2) + "\n";
}

void write_stats_json(const std::string& path, const RunStatistics& stats, const Metadata& metadata) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write stats '" + path + "'");
    out << stats_to_json(stats, metadata);
}

std::string ingest_to_json(const IngestReport& report, const Metadata& metadata) {
    OrderedJson root = OrderedJson::object();
    root["meta"] = metadata_json(metadata);
    if (report.noise) {
        OrderedJson noise = OrderedJson::object();
        noise["bob_mean_dbfs"] = report.noise->mean_bob_dbfs - report.fullscale_ref_db;
        noise["eve_mean_dbfs"] = report.noise->mean_eve_dbfs - report.fullscale_ref_db;
        noise["difference_db"] = report.noise->difference_db;
        noise["n_bob"] = report.noise->n_bob;
        noise["n_eve"] = report.noise->n_eve;
        root["noise"] = noise;
    }
    if (!report.cs.empty()) {
        OrderedJson secrecy = OrderedJson::object();
        secrecy["neglect_noise_difference"] = report.neglect_noise_difference;
        secrecy["cs"] = report.cs;
        root["secrecy"] = secrecy;
    }
    if (report.fullscale_ref_db != 0.0) root["fullscale_ref_db"] = report.fullscale_ref_db;
    return root.dump(2) + "\n";
}

void write_ingest_json(const std::string& path, const IngestReport& report, const Metadata& metadata) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report '" + path + "'");
    out << ingest_to_json(report, metadata);
}

}  // namespace rispls
