#include "rispls/optimizer.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "rispls/rng.hpp"

namespace rispls {

Real objective_score(Objective objective, Real p_bob, Real p_eve, Real noise_bob, Real noise_eve) {
    switch (objective) {
        case Objective::MaxSecrecy:
            return std::log2(p_bob) - std::log2(p_eve) + std::log2(noise_eve) - std::log2(noise_bob);
        case Objective::MaxBobPower:
            return p_bob;
        case Objective::MinEvePower:
            return -p_eve;
    }
    throw std::logic_error("objective_score: unknown objective");
}

const char* objective_name(Objective objective) {
    switch (objective) {
        case Objective::MaxSecrecy: return "max-secrecy";
        case Objective::MaxBobPower: return "max-bob";
        case Objective::MinEvePower: return "min-eve";
    }
    return "?";
}

SimulatedEvaluator::SimulatedEvaluator(ChannelSet channels, Scenario scenario, std::vector<Real> phase_table)
    : channels_(std::move(channels)), scenario_(std::move(scenario)), phase_table_(std::move(phase_table)) {}

SimulatedEvaluator::SimulatedEvaluator(const Scenario& scenario, const RisGeometry& geometry, int s_states)
    : channels_(build_channels(scenario, geometry)),
      scenario_(scenario),
      phase_table_(state_phase_table(s_states)) {}

std::pair<Real, Real> SimulatedEvaluator::evaluate(const RisConfiguration& config) {
    return received_powers(channels_, theta_matrix(config, phase_table_), scenario_);
}

TraceReplayEvaluator::TraceReplayEvaluator(std::vector<std::pair<Real, Real>> readings_w)
    : readings_(std::move(readings_w)) {}

std::pair<Real, Real> TraceReplayEvaluator::evaluate(const RisConfiguration&) {
    if (cursor_ >= readings_.size()) {
        throw std::runtime_error("trace replay: recording exhausted after " + std::to_string(cursor_) +
                                 " readings");
    }
    return readings_[cursor_++];
}

namespace {

std::pair<Real, Real> evaluate_at_step(PowerEvaluator& evaluator, const RisConfiguration& config, int step,
                                       int m, int n, int state) {
    try {
        return evaluator.evaluate(config);
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "evaluator failed at step " << step << " (element " << m << "," << n << " state " << state
            << "): " << e.what();
        throw std::runtime_error(msg.str());
    }
}

}  // namespace

SweepResult greedy_sweep(PowerEvaluator& evaluator, const RisGeometry& geometry, Objective objective,
                         int s_states, std::uint64_t seed, Real noise_bob, Real noise_eve, int repeats) {
    if (s_states < 1) throw std::invalid_argument("greedy_sweep: state count must be >= 1");
    if (repeats < 1) throw std::invalid_argument("greedy_sweep: repeat count must be >= 1");
    const int count = geometry.active_count();
    if (count == 0) throw std::invalid_argument("greedy_sweep: geometry has no active elements");

    SweepResult result;
    result.config = RisConfiguration::zeros(count);
    result.records.reserve(static_cast<std::size_t>(repeats * count * s_states));
    Real best = -std::numeric_limits<Real>::infinity();

    Rng rng(seed);
    std::vector<int> step_list(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) step_list[static_cast<std::size_t>(k)] = k;

    int step = 0;
    for (int pass = 0; pass < repeats; ++pass) {
        rng.shuffle(step_list);
        for (int element : step_list) {
            const auto [m, n] = geometry.active_elements[static_cast<std::size_t>(element)];
            int kept = result.config.states[element];
            for (int trial = 0; trial < s_states; ++trial) {
                ++step;
                result.config.states[element] = trial;
                const auto [pb, pe] = evaluate_at_step(evaluator, result.config, step, m, n, trial);
                const Real score = objective_score(objective, pb, pe, noise_bob, noise_eve);
                const bool accepted = score > best;
                if (accepted) {
                    best = score;
                    kept = trial;
                }
                SweepRecord rec;
                rec.step = step;
                rec.m = m;
                rec.n = n;
                rec.trial_state = trial;
                rec.accepted = accepted;
                rec.p_bob_w = pb;
                rec.p_eve_w = pe;
                rec.p_bob_db = watts_to_dbm(pb);
                rec.p_eve_db = watts_to_dbm(pe);
                rec.score = score;
                rec.best_score = best;
                result.records.push_back(rec);
            }
            result.config.states[element] = kept;
        }
    }
    result.best_score = best;
    return result;
}

namespace {

// Returns false (cap exceeded) or sets total = s_states^active_count.
bool configuration_count_within_cap(int s_states, int active_count, std::uint64_t cap, std::uint64_t& total) {
    total = 1;
    for (int k = 0; k < active_count; ++k) {
        if (total > cap / static_cast<std::uint64_t>(s_states)) return false;
        total *= static_cast<std::uint64_t>(s_states);
    }
    return total <= cap;
}

}  // namespace

std::pair<RisConfiguration, Real> exhaustive_search(PowerEvaluator& evaluator, const RisGeometry& geometry,
                                                    Objective objective, int s_states, std::uint64_t cap,
                                                    Real noise_bob, Real noise_eve) {
    if (s_states < 1) throw std::invalid_argument("exhaustive_search: state count must be >= 1");
    const int count = geometry.active_count();
    std::uint64_t total = 0;
    if (!configuration_count_within_cap(s_states, count, cap, total)) {
        std::ostringstream msg;
        msg << "exhaustive_search: " << s_states << "^" << count << " configurations exceed the cap of "
            << cap;
        throw SearchSpaceTooLarge(msg.str());
    }

    RisConfiguration config = RisConfiguration::zeros(count);
    RisConfiguration best_config = config;
    Real best = -std::numeric_limits<Real>::infinity();
    for (std::uint64_t i = 0; i < total; ++i) {
        const auto [pb, pe] = evaluator.evaluate(config);
        const Real score = objective_score(objective, pb, pe, noise_bob, noise_eve);
        if (score > best) {
            best = score;
            best_config = config;
        }
        // lexicographic increment: rightmost element varies fastest
        for (int k = count - 1; k >= 0; --k) {
            if (++config.states[k] < s_states) break;
            config.states[k] = 0;
        }
    }
    return {best_config, best};
}

std::pair<RisConfiguration, Real> random_search(PowerEvaluator& evaluator, const RisGeometry& geometry,
                                                Objective objective, int s_states, int trials,
                                                std::uint64_t seed, Real noise_bob, Real noise_eve) {
    if (trials < 1) throw std::invalid_argument("random_search: trial count must be >= 1");
    if (s_states < 1) throw std::invalid_argument("random_search: state count must be >= 1");
    Rng rng(seed);
    const int count = geometry.active_count();
    RisConfiguration best_config = RisConfiguration::zeros(count);
    Real best = -std::numeric_limits<Real>::infinity();
    RisConfiguration config = RisConfiguration::zeros(count);
    for (int t = 0; t < trials; ++t) {
        for (int k = 0; k < count; ++k) {
            config.states[k] = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(s_states)));
        }
        const auto [pb, pe] = evaluator.evaluate(config);
        const Real score = objective_score(objective, pb, pe, noise_bob, noise_eve);
        if (score > best) {
            best = score;
            best_config = config;
        }
    }
    return {best_config, best};
}

}  // namespace rispls
