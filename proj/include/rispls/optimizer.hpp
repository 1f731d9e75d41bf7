#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "rispls/channel.hpp"
#include "rispls/ris.hpp"
#include "rispls/types.hpp"

namespace rispls {

enum class Objective { MaxSecrecy, MaxBobPower, MinEvePower };

/// Score to maximize. MaxSecrecy uses the unclamped log2(Pb) - log2(Pe) +
/// log2(Ne) - log2(Nb): the clamp in the reported secrecy capacity is a
/// monotone transform that would only blind the search below zero, and
/// dropping it keeps the accepted-state sequence invariant under the constant
/// noise offset. Reported capacities still clamp at zero.
Real objective_score(Objective objective, Real p_bob, Real p_eve, Real noise_bob, Real noise_eve);

const char* objective_name(Objective objective);

/// One trialed state during a sweep.
struct SweepRecord {
    int step = 0;          // 1-based trial index
    int m = 0;
    int n = 0;
    int trial_state = 0;
    bool accepted = false;
    Real p_bob_w = 0.0;
    Real p_eve_w = 0.0;
    Real p_bob_db = 0.0;   // dBm
    Real p_eve_db = 0.0;   // dBm
    Real score = 0.0;
    Real best_score = 0.0;
};

/// Maps a configuration to measured or simulated received powers (Pb, Pe).
class PowerEvaluator {
public:
    virtual ~PowerEvaluator() = default;
    virtual std::pair<Real, Real> evaluate(const RisConfiguration& config) = 0;
};

/// Deterministic evaluator backed by the free-space channel model.
class SimulatedEvaluator final : public PowerEvaluator {
public:
    SimulatedEvaluator(ChannelSet channels, Scenario scenario, std::vector<Real> phase_table);
    SimulatedEvaluator(const Scenario& scenario, const RisGeometry& geometry, int s_states);

    std::pair<Real, Real> evaluate(const RisConfiguration& config) override;

    const Scenario& scenario() const { return scenario_; }

private:
    ChannelSet channels_;
    Scenario scenario_;
    std::vector<Real> phase_table_;
};

/// Replays a recorded sequence of (Pb, Pe) readings, one per evaluation,
/// ignoring the configuration. Throws when the recording is exhausted.
class TraceReplayEvaluator final : public PowerEvaluator {
public:
    explicit TraceReplayEvaluator(std::vector<std::pair<Real, Real>> readings_w);

    std::pair<Real, Real> evaluate(const RisConfiguration& config) override;

    std::size_t remaining() const { return readings_.size() - cursor_; }

private:
    std::vector<std::pair<Real, Real>> readings_;
    std::size_t cursor_ = 0;
};

struct SweepResult {
    RisConfiguration config;
    std::vector<SweepRecord> records;
    Real best_score = 0.0;
};

/// Iterative per-element greedy search. Starts from the all-zero
/// configuration with best score -inf, visits each active element exactly
/// once in a seed-determined shuffled order, trials states 0..S-1 in order,
/// and accepts only on strict score improvement. After its S trials an
/// element is left in its accepted best state (its previous state if none
/// was accepted). `repeats` > 1 runs additional full passes, reshuffling
/// each time.
SweepResult greedy_sweep(PowerEvaluator& evaluator, const RisGeometry& geometry, Objective objective,
                         int s_states, std::uint64_t seed, Real noise_bob = 1.0, Real noise_eve = 1.0,
                         int repeats = 1);

/// Thrown when an enumeration would exceed the configured cap.
struct SearchSpaceTooLarge : std::runtime_error {
    explicit SearchSpaceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::uint64_t kDefaultExhaustiveCap = 1u << 20;

/// Global optimum by enumeration in lexicographic state order (first-found
/// wins ties). Refuses if S^active_count exceeds the cap.
std::pair<RisConfiguration, Real> exhaustive_search(PowerEvaluator& evaluator, const RisGeometry& geometry,
                                                    Objective objective, int s_states,
                                                    std::uint64_t cap = kDefaultExhaustiveCap,
                                                    Real noise_bob = 1.0, Real noise_eve = 1.0);

/// Best of `trials` uniformly random configurations; seeded and deterministic.
std::pair<RisConfiguration, Real> random_search(PowerEvaluator& evaluator, const RisGeometry& geometry,
                                                Objective objective, int s_states, int trials,
                                                std::uint64_t seed, Real noise_bob = 1.0,
                                                Real noise_eve = 1.0);

}  // namespace rispls
