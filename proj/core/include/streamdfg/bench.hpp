#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "streamdfg/eval.hpp"
#include "streamdfg/event.hpp"
#include "streamdfg/graph.hpp"

namespace streamdfg {

/// One sweep: which techniques, at which budgets, over one log.
struct bench_config {
    std::vector<technique> techniques{technique::lcb, technique::lru, technique::lfu,
                                      technique::lfu_da};
    /// Explicit budget list; empty means a per-technique geometric sweep
    /// (powers of two from 2) capped at the technique's lossless bound,
    /// which is always included as the final point.
    std::vector<std::uint64_t> budgets;
    /// Running-case budget for the deletion-mechanism techniques; 0 means
    /// the number of distinct cases in the log (no case ever evicted).
    std::uint64_t case_budget = 0;
    std::vector<std::string> end_activities;
    std::optional<std::int64_t> case_ttl_ms;
    /// When false, ms_per_event is reported as 0 and the output depends
    /// only on the inputs, byte for byte.
    bool measure_time = true;
    /// Points run in parallel; timings are only meaningful at 1.
    unsigned jobs = 1;
};

/// One measured point. On failure the row's accuracy fields are NaN and
/// `error` carries the reason; the sweep continues.
struct bench_measurement {
    eval_report report;
    double p99_ms_per_event = 0.0;
    bool failed = false;
    std::string error;
};

/// Measure every (technique, budget) point over the log: fresh model per
/// point, accuracy against `oracle`, peak memory words checked after every
/// event, per-event wall time (update loop only, source excluded). Rows
/// come back sorted by technique then budget.
std::vector<bench_measurement> run_bench(const std::vector<event>& log,
                                         const frequency_graph& oracle,
                                         const bench_config& config);

/// One point on its own; used by run_bench and the evaluation command.
bench_measurement run_point(const std::vector<event>& log, const frequency_graph& oracle,
                            technique tech, std::uint64_t budget,
                            const bench_config& config);

/// The budget at which a technique becomes lossless for this log: the
/// directed bound over the distinct activity count for the deletion
/// mechanisms, and the total distinct item count (activities + relations +
/// cases) for the lossy-counting baseline.
std::uint64_t lossless_point(const std::vector<event>& log, technique tech);

/// BenchRow CSV (header line included, one row per measurement).
std::string to_csv(const std::vector<bench_measurement>& rows);

} // namespace streamdfg
