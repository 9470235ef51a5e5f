#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "streamdfg/graph.hpp"
#include "streamdfg/sources.hpp"

namespace streamdfg {

/// Random-walk process model. State i of the walk is: 0 the virtual start,
/// 1..N the activity with name activity_names[i-1], N+1 the virtual end.
/// weights[i][j] is the relative weight of stepping from state i to state j.
struct synthetic_model {
    std::vector<std::string> activity_names;
    /// (N+2) x (N+2); rows 0..N must have positive mass over columns
    /// 1..N+1, column 0 must be all zero (nothing re-enters the start), and
    /// weights[0][N+1] must be zero (a case emits at least one event).
    std::vector<std::vector<double>> weights;
    /// Number of cases kept open at once.
    std::uint32_t interleaving = 1;
    std::uint64_t seed = 0;
    /// When set, every case emits this extra activity as its final event,
    /// giving downstream consumers a uniform end marker.
    std::optional<std::string> sink_activity;
};

/// Throws std::invalid_argument when the model breaks the invariants above.
void validate(const synthetic_model& model);

/// Skewed model: from every state the successor weights follow a Zipf-like
/// decay (exponent `skew`), with the preference order rotated per state so
/// mass concentrates on a different successor each time. Mean trace length
/// is about `mean_trace_len`. With `with_sink`, cases end with an "END"
/// event usable as an end-activity marker.
synthetic_model skewed_model(std::uint32_t n_activities, std::uint64_t seed,
                             double skew = 1.6, double mean_trace_len = 10.0,
                             std::uint32_t interleaving = 50, bool with_sink = false);

/// All successors equally likely; mean trace length about `mean_trace_len`.
synthetic_model uniform_model(std::uint32_t n_activities, std::uint64_t seed,
                              double mean_trace_len = 8.0,
                              std::uint32_t interleaving = 20);

/// Lazy generator: walks up to n_events events, deterministically for a
/// given model (seed included). Timestamps increase by 1 ms per event.
class synthetic_source final : public event_source {
public:
    synthetic_source(synthetic_model model, std::uint64_t n_events);

    std::optional<event> next() override;

private:
    struct open_case {
        std::string id;
        std::uint32_t state = 0;
    };

    void open_new_case();
    std::uint32_t sample_successor(std::uint32_t state);

    synthetic_model model_;
    std::mt19937_64 rng_;
    std::vector<open_case> active_;
    std::uint64_t remaining_;
    std::uint64_t next_case_number_ = 0;
    std::int64_t clock_ms_ = 1'500'000'000'000;
};

/// A generated log together with its exact directly-follows graph, tallied
/// independently during generation.
struct generated_log {
    std::vector<event> events;
    frequency_graph exact;
};

/// Materialize n_events from the model and tally the ground truth.
generated_log generate(const synthetic_model& model, std::uint64_t n_events);

} // namespace streamdfg
