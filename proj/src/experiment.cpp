#include "rispls/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rispls/rng.hpp"

namespace rispls {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    // splitmix64 finalizer; decorrelates derived seeds from the base sequence
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

PlacementSample sample_placement(const PlacementConstraints& constraints, const RisGeometry& geometry,
                                 Real wavelength, std::uint64_t seed) {
    const Vec3& lo = constraints.region_min;
    const Vec3& hi = constraints.region_max;
    for (int a = 0; a < 3; ++a) {
        if (!(lo[a] < hi[a])) throw std::invalid_argument("sample_placement: degenerate region box");
    }
    if (hi.z() <= 0.0) {
        throw std::invalid_argument("sample_placement: region lies entirely behind the RIS (z <= 0)");
    }
    const Real boundary = fraunhofer_boundary(geometry, wavelength);

    // The region must be able to host a near-field Alice and far-field Bob/Eve.
    Vec3 closest{std::clamp<Real>(0.0, lo.x(), hi.x()), std::clamp<Real>(0.0, lo.y(), hi.y()),
                 std::clamp<Real>(0.0, std::max<Real>(lo.z(), 0.0), hi.z())};
    Real farthest_sq = 0.0;
    for (int corner = 0; corner < 8; ++corner) {
        Vec3 c{(corner & 1) ? hi.x() : lo.x(), (corner & 2) ? hi.y() : lo.y(),
               std::max<Real>((corner & 4) ? hi.z() : lo.z(), 0.0)};
        farthest_sq = std::max(farthest_sq, c.squaredNorm());
    }
    if (!(closest.norm() < boundary)) {
        std::ostringstream msg;
        msg << "sample_placement: region has no near-field points (closest distance " << closest.norm()
            << " m >= boundary " << boundary << " m)";
        throw std::invalid_argument(msg.str());
    }
    if (!(std::sqrt(farthest_sq) >= boundary)) {
        std::ostringstream msg;
        msg << "sample_placement: region has no far-field points (farthest distance "
            << std::sqrt(farthest_sq) << " m < boundary " << boundary << " m)";
        throw std::invalid_argument(msg.str());
    }

    Rng rng(seed);
    auto draw = [&]() {
        return Vec3{rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y()), rng.uniform(lo.z(), hi.z())};
    };
    auto near = [&](const Vec3& p) { return p.norm() < boundary; };

    std::string last_violation = "no draw attempted";
    const Real sep = constraints.min_separation_m;
    for (std::uint64_t attempt = 0; attempt < constraints.max_rejections; ++attempt) {
        const Vec3 alice = draw();
        if (alice.z() <= 0.0) { last_violation = "alice behind the RIS (z <= 0)"; continue; }
        if (!near(alice)) { last_violation = "alice outside the near-field region"; continue; }
        const Vec3 bob = draw();
        if (bob.z() <= 0.0) { last_violation = "bob behind the RIS (z <= 0)"; continue; }
        if (near(bob)) { last_violation = "bob inside the near-field region"; continue; }
        const Vec3 eve = draw();
        if (eve.z() <= 0.0) { last_violation = "eve behind the RIS (z <= 0)"; continue; }
        if (near(eve)) { last_violation = "eve inside the near-field region"; continue; }
        if ((alice - bob).norm() < sep || (alice - eve).norm() < sep || (bob - eve).norm() < sep) {
            last_violation = "terminals closer than the minimum separation";
            continue;
        }
        return PlacementSample{alice, bob, eve};
    }
    throw std::runtime_error("sample_placement: gave up after " + std::to_string(constraints.max_rejections) +
                             " rejections; last violation: " + last_violation);
}

namespace {

Real interpolated_quantile(const std::vector<Real>& sorted, Real q) {
    const std::size_t n = sorted.size();
    const Real h = static_cast<Real>(n - 1) * q;
    const std::size_t idx = static_cast<std::size_t>(h);
    if (idx + 1 >= n) return sorted[n - 1];
    const Real frac = h - static_cast<Real>(idx);
    return sorted[idx] + frac * (sorted[idx + 1] - sorted[idx]);
}

}  // namespace

BoxSeries aggregate_boxplot(const std::vector<RealVector>& values_per_run) {
    if (values_per_run.empty()) throw std::invalid_argument("aggregate_boxplot: no runs");
    const Eigen::Index iters = values_per_run.front().size();
    for (std::size_t r = 0; r < values_per_run.size(); ++r) {
        if (values_per_run[r].size() != iters) {
            throw std::invalid_argument("aggregate_boxplot: ragged input (run " + std::to_string(r) +
                                        " has " + std::to_string(values_per_run[r].size()) +
                                        " iterations, expected " + std::to_string(iters) + ")");
        }
    }
    BoxSeries out;
    out.min.resize(iters);
    out.q1.resize(iters);
    out.median.resize(iters);
    out.q3.resize(iters);
    out.max.resize(iters);
    out.mean.resize(iters);
    std::vector<Real> column(values_per_run.size());
    for (Eigen::Index t = 0; t < iters; ++t) {
        Real sum = 0.0;
        for (std::size_t r = 0; r < values_per_run.size(); ++r) {
            column[r] = values_per_run[r][t];
            sum += column[r];
        }
        std::sort(column.begin(), column.end());
        out.min[t] = column.front();
        out.q1[t] = interpolated_quantile(column, 0.25);
        out.median[t] = interpolated_quantile(column, 0.5);
        out.q3[t] = interpolated_quantile(column, 0.75);
        out.max[t] = column.back();
        out.mean[t] = sum / static_cast<Real>(column.size());
    }
    return out;
}

RunSeries kept_power_series(Real initial_pb_w, Real initial_pe_w, const std::vector<SweepRecord>& records) {
    RunSeries series;
    series.pb_w.resize(static_cast<Eigen::Index>(records.size()) + 1);
    series.pe_w.resize(static_cast<Eigen::Index>(records.size()) + 1);
    series.pb_w[0] = initial_pb_w;
    series.pe_w[0] = initial_pe_w;
    for (std::size_t t = 0; t < records.size(); ++t) {
        const Eigen::Index i = static_cast<Eigen::Index>(t) + 1;
        if (records[t].accepted) {
            series.pb_w[i] = records[t].p_bob_w;
            series.pe_w[i] = records[t].p_eve_w;
        } else {
            series.pb_w[i] = series.pb_w[i - 1];
            series.pe_w[i] = series.pe_w[i - 1];
        }
    }
    return series;
}

std::vector<ScenarioPreset> table1_presets() {
    Scenario base;
    base.carrier_hz = 5.2e9;
    base.tx_power_w = 1.0;
    base.noise_bob_w = 1e-15;
    base.noise_eve_w = 1e-15;
    base.reflection_amplitude = 1.0;

    std::vector<ScenarioPreset> presets(3);
    presets[0].name = "Loc1";
    presets[0].scenario = base;
    presets[0].scenario.alice = Vec3{0.00, -0.35, 0.80};
    presets[0].scenario.bob = Vec3{-0.54, -0.35, 2.70};
    presets[0].scenario.eve = Vec3{1.20, -0.35, 2.60};

    presets[1].name = "Loc2";
    presets[1].scenario = base;
    presets[1].scenario.alice = Vec3{0.00, -0.35, 0.80};
    presets[1].scenario.bob = Vec3{1.20, -0.35, 2.60};
    presets[1].scenario.eve = Vec3{-0.54, -0.35, 2.70};

    presets[2].name = "Loc3";
    presets[2].scenario = base;
    presets[2].scenario.alice = Vec3{-0.40, -0.35, 0.46};
    presets[2].scenario.bob = Vec3{-0.10, -0.35, 2.60};
    presets[2].scenario.eve = Vec3{0.80, -0.35, 3.80};
    return presets;
}

ScenarioPreset preset_by_name(const std::string& name) {
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (const auto& preset : table1_presets()) {
        std::string pl;
        for (char c : preset.name) pl.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (pl == lower) return preset;
    }
    throw std::invalid_argument("unknown preset '" + name + "' (expected loc1, loc2, or loc3)");
}

namespace {

struct RunOutcome {
    SweepResult sweep;
    Scenario scenario;
    RealVector pb_db;
    RealVector pe_db;
    RealVector cs;
    std::string error;  // empty on success
};

RunOutcome execute_run(const Scenario& base_scenario, const RisGeometry& geometry,
                       const CampaignConfig& config, int run_index) {
    RunOutcome out;
    const std::uint64_t run_seed = config.base_seed + static_cast<std::uint64_t>(run_index);
    Scenario scenario = base_scenario;
    if (config.sample_placements) {
        const PlacementSample sample =
            sample_placement(config.constraints, geometry, scenario.wavelength(), mix64(run_seed));
        scenario.alice = sample.alice;
        scenario.bob = sample.bob;
        scenario.eve = sample.eve;
    }
    SimulatedEvaluator evaluator(scenario, geometry, config.s_states);
    const auto [pb0, pe0] = evaluator.evaluate(RisConfiguration::zeros(geometry.active_count()));
    out.sweep = greedy_sweep(evaluator, geometry, config.objective, config.s_states, run_seed,
                             scenario.noise_bob_w, scenario.noise_eve_w);
    const RunSeries series = kept_power_series(pb0, pe0, out.sweep.records);
    const Eigen::Index len = series.pb_w.size();
    out.pb_db.resize(len);
    out.pe_db.resize(len);
    out.cs.resize(len);
    for (Eigen::Index t = 0; t < len; ++t) {
        out.pb_db[t] = watts_to_dbm(series.pb_w[t]);
        out.pe_db[t] = watts_to_dbm(series.pe_w[t]);
        out.cs[t] = secrecy_capacity(series.pb_w[t], series.pe_w[t], scenario.noise_bob_w,
                                     scenario.noise_eve_w);
    }
    out.scenario = scenario;
    return out;
}

}  // namespace

CampaignResult run_campaign(const Scenario& base_scenario, const RisGeometry& geometry,
                            const CampaignConfig& config) {
    if (config.n_runs < 1) throw std::invalid_argument("run_campaign: n_runs must be >= 1");
    const int jobs = std::max(1, config.jobs);

    std::vector<RunOutcome> outcomes(static_cast<std::size_t>(config.n_runs));
    if (jobs == 1) {
        for (int k = 0; k < config.n_runs; ++k) {
            try {
                outcomes[static_cast<std::size_t>(k)] = execute_run(base_scenario, geometry, config, k);
            } catch (const std::exception& e) {
                throw std::runtime_error("campaign run " + std::to_string(k) + " failed: " + e.what());
            }
        }
    } else {
        std::atomic<int> next{0};
        auto worker = [&]() {
            while (true) {
                const int k = next.fetch_add(1);
                if (k >= config.n_runs) break;
                try {
                    outcomes[static_cast<std::size_t>(k)] = execute_run(base_scenario, geometry, config, k);
                } catch (const std::exception& e) {
                    outcomes[static_cast<std::size_t>(k)].error = e.what();
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        for (int k = 0; k < config.n_runs; ++k) {
            if (!outcomes[static_cast<std::size_t>(k)].error.empty()) {
                throw std::runtime_error("campaign run " + std::to_string(k) +
                                         " failed: " + outcomes[static_cast<std::size_t>(k)].error);
            }
        }
    }

    CampaignResult result;
    std::vector<RealVector> pb, pe, cs;
    pb.reserve(outcomes.size());
    pe.reserve(outcomes.size());
    cs.reserve(outcomes.size());
    for (auto& o : outcomes) {
        pb.push_back(std::move(o.pb_db));
        pe.push_back(std::move(o.pe_db));
        cs.push_back(std::move(o.cs));
        result.sweeps.push_back(std::move(o.sweep));
        result.scenarios.push_back(o.scenario);
    }
    result.stats.pb_db = aggregate_boxplot(pb);
    result.stats.pe_db = aggregate_boxplot(pe);
    result.stats.cs = aggregate_boxplot(cs);
    return result;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        const auto begin = field.find_first_not_of(" \t\r");
        const auto end = field.find_last_not_of(" \t\r");
        fields.push_back(begin == std::string::npos ? "" : field.substr(begin, end - begin + 1));
    }
    return fields;
}

Real parse_number(const std::string& text, const std::string& path, std::size_t line_no) {
    std::size_t pos = 0;
    Real value = 0.0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": malformed number '" + text +
                                    "'");
    }
    if (pos != text.size()) {
        throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": malformed number '" + text +
                                    "'");
    }
    return value;
}

}  // namespace

MeasuredTrace ingest_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ingest_trace: cannot open '" + path + "'");

    MeasuredTrace trace;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    bool raw_format = false;
    std::vector<Complex> block;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;

        const std::vector<std::string> fields = split_csv_line(line);
        if (!header_seen) {
            if (fields.size() == 2 && fields[0] == "i" && fields[1] == "q") {
                raw_format = true;
            } else if (fields.size() == 2 && fields[0] == "pb_dbfs" && fields[1] == "pe_dbfs") {
                raw_format = false;
            } else {
                throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                            ": expected header 'i,q' or 'pb_dbfs,pe_dbfs'");
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != 2) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": expected 2 fields, got " +
                                        std::to_string(fields.size()));
        }
        const Real a = parse_number(fields[0], path, line_no);
        const Real b = parse_number(fields[1], path, line_no);
        if (raw_format) {
            if (!(a > -2047.0 && a <= 2048.0 && b > -2047.0 && b <= 2048.0)) {
                throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                            ": sample outside (-2047, 2048]");
            }
            block.emplace_back(a, b);
        } else {
            trace.readings_dbfs.emplace_back(a, b);
        }
    }
    if (!header_seen) throw std::invalid_argument(path + ": empty trace file");
    if (raw_format) {
        if (block.empty()) throw std::invalid_argument(path + ": raw trace has no samples");
        trace.blocks.push_back(std::move(block));
    } else if (trace.readings_dbfs.empty()) {
        throw std::invalid_argument(path + ": summary trace has no readings");
    }
    return trace;
}

std::vector<Real> trace_dbfs_values(const MeasuredTrace& trace, bool eve_column) {
    std::vector<Real> values;
    if (trace.is_raw()) {
        values.reserve(trace.blocks.size());
        for (const auto& block : trace.blocks) values.push_back(power_dbfs(block));
    } else {
        values.reserve(trace.readings_dbfs.size());
        for (const auto& [pb, pe] : trace.readings_dbfs) values.push_back(eve_column ? pe : pb);
    }
    return values;
}

NoiseFloorReport noise_floor_report(const std::vector<MeasuredTrace>& bob_traces,
                                    const std::vector<MeasuredTrace>& eve_traces) {
    auto mean_of = [](const std::vector<MeasuredTrace>& traces, bool eve, std::size_t& count) {
        Real sum = 0.0;
        count = 0;
        for (const auto& trace : traces) {
            for (Real v : trace_dbfs_values(trace, eve)) {
                sum += v;
                ++count;
            }
        }
        if (count == 0) throw std::invalid_argument("noise_floor_report: no readings for one terminal");
        return sum / static_cast<Real>(count);
    };
    NoiseFloorReport report;
    report.mean_bob_dbfs = mean_of(bob_traces, false, report.n_bob);
    report.mean_eve_dbfs = mean_of(eve_traces, true, report.n_eve);
    report.difference_db = report.mean_eve_dbfs - report.mean_bob_dbfs;
    return report;
}

Real secrecy_from_dbfs(Real pb_dbfs, Real pe_dbfs, Real noise_correction_db) {
    const Real cs = (pb_dbfs - pe_dbfs + noise_correction_db) / (10.0 * std::log10(2.0));
    return cs > 0.0 ? cs : 0.0;
}

}  // namespace rispls
