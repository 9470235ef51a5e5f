#include "streamdfg/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "streamdfg/interner.hpp"
#include "streamdfg/lcb.hpp"
#include "streamdfg/miner.hpp"

namespace streamdfg {

namespace {

using sv_set = std::unordered_set<std::string_view>;

std::uint64_t distinct_cases(const std::vector<event>& log) {
    sv_set cases;
    for (const event& ev : log) cases.insert(ev.case_id);
    return cases.size();
}

std::uint64_t distinct_activities(const std::vector<event>& log) {
    sv_set activities;
    for (const event& ev : log) activities.insert(ev.activity);
    return activities.size();
}

std::uint64_t distinct_relations(const std::vector<event>& log) {
    std::unordered_map<std::string_view, std::string_view> last;
    std::set<std::pair<std::string_view, std::string_view>> relations;
    for (const event& ev : log) {
        if (auto it = last.find(ev.case_id); it != last.end()) {
            relations.emplace(it->second, ev.activity);
            it->second = ev.activity;
        } else {
            last.emplace(ev.case_id, ev.activity);
        }
    }
    return relations.size();
}

double percentile_99(std::vector<double>& ms) {
    if (ms.empty()) return 0.0;
    std::sort(ms.begin(), ms.end());
    const auto rank = static_cast<std::size_t>(
        std::ceil(0.99 * static_cast<double>(ms.size())));
    return ms[std::min(ms.size(), std::max<std::size_t>(rank, 1)) - 1];
}

std::uint64_t resolve_case_budget(const std::vector<event>& log, const bench_config& config) {
    if (config.case_budget != 0) return config.case_budget;
    return std::max<std::uint64_t>(1, distinct_cases(log));
}

} // namespace

std::uint64_t lossless_point(const std::vector<event>& log, technique tech) {
    if (log.empty()) return 2;
    if (tech == technique::lcb)
        return distinct_activities(log) + distinct_relations(log) + distinct_cases(log);
    return lossless_budget_directed(distinct_activities(log));
}

bench_measurement run_point(const std::vector<event>& log, const frequency_graph& oracle,
                            technique tech, std::uint64_t budget,
                            const bench_config& config) {
    bench_measurement point;
    point.report.tech = tech;
    point.report.budget = budget;

    std::vector<double> per_event_ms;
    if (config.measure_time) per_event_ms.reserve(log.size());
    std::uint64_t peak_words = 0;
    std::uint64_t processed = 0;
    using clock = std::chrono::steady_clock;

    try {
        frequency_graph discovered;
        if (tech == technique::lcb) {
            lcb_state state(budget);
            for (const event& ev : log) {
                if (config.measure_time) {
                    const auto t0 = clock::now();
                    state.observe(ev);
                    per_event_ms.push_back(
                        std::chrono::duration<double, std::milli>(clock::now() - t0).count());
                } else {
                    state.observe(ev);
                }
                ++processed;
                peak_words = std::max(
                    peak_words, memory_words(tech, state.activity_count(),
                                             state.relation_count(), state.case_count()));
            }
            discovered = state.snapshot();
        } else {
            miner_config cfg;
            cfg.policy = policy_of(tech);
            cfg.map_budget = budget;
            cfg.case_budget = resolve_case_budget(log, config);
            cfg.end_activities = config.end_activities;
            cfg.case_ttl_ms = config.case_ttl_ms;
            stream_miner miner(cfg);
            // TTL keeps a first-seen timestamp per open case: one extra word
            // each, on top of the per-kind table costs.
            const std::uint64_t ttl_extra = config.case_ttl_ms ? 1 : 0;
            for (const event& ev : log) {
                if (config.measure_time) {
                    const auto t0 = clock::now();
                    miner.observe(ev);
                    per_event_ms.push_back(
                        std::chrono::duration<double, std::milli>(clock::now() - t0).count());
                } else {
                    miner.observe(ev);
                }
                ++processed;
                const std::uint64_t open = miner.cases().size();
                peak_words = std::max(peak_words,
                                      memory_words(tech, miner.map().node_count(),
                                                   miner.map().arc_count(), open) +
                                          ttl_extra * open);
            }
            discovered = to_frequency_graph(miner.map());
        }
        point.report.acc = accuracy(oracle, discovered);
    } catch (const std::exception& err) {
        point.failed = true;
        point.error = err.what();
        point.report.acc.accuracy = std::numeric_limits<double>::quiet_NaN();
        point.report.acc.raw_accuracy = std::numeric_limits<double>::quiet_NaN();
    }

    point.report.events_processed = processed;
    point.report.peak_memory_words = peak_words;
    point.report.peak_memory_bytes = peak_words * bytes_per_word;
    if (!per_event_ms.empty() && processed > 0) {
        double total = 0.0;
        for (double ms : per_event_ms) total += ms;
        point.report.ms_per_event = total / static_cast<double>(per_event_ms.size());
        point.p99_ms_per_event = percentile_99(per_event_ms);
    }
    return point;
}

std::vector<bench_measurement> run_bench(const std::vector<event>& log,
                                         const frequency_graph& oracle,
                                         const bench_config& config) {
    std::vector<std::pair<technique, std::uint64_t>> points;
    for (technique tech : config.techniques) {
        if (!config.budgets.empty()) {
            for (std::uint64_t b : config.budgets) points.emplace_back(tech, b);
            continue;
        }
        const std::uint64_t cap = std::max<std::uint64_t>(2, lossless_point(log, tech));
        for (std::uint64_t b = 2; b < cap; b *= 2) points.emplace_back(tech, b);
        points.emplace_back(tech, cap);
    }

    std::vector<bench_measurement> results(points.size());
    auto run_one = [&](std::size_t i) {
        results[i] = run_point(log, oracle, points[i].first, points[i].second, config);
    };
    if (config.jobs <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> workers;
        const unsigned n = std::min<unsigned>(config.jobs, points.size());
        workers.reserve(n);
        for (unsigned t = 0; t < n; ++t)
            workers.emplace_back([&] {
                for (std::size_t i = cursor.fetch_add(1); i < points.size();
                     i = cursor.fetch_add(1))
                    run_one(i);
            });
        for (auto& w : workers) w.join();
    }

    std::stable_sort(results.begin(), results.end(),
                     [](const bench_measurement& a, const bench_measurement& b) {
                         if (a.report.tech != b.report.tech)
                             return static_cast<int>(a.report.tech) <
                                    static_cast<int>(b.report.tech);
                         return a.report.budget < b.report.budget;
                     });
    return results;
}

std::string to_csv(const std::vector<bench_measurement>& rows) {
    std::string out(bench_csv_header);
    out.push_back('\n');
    for (const auto& row : rows) {
        out += to_csv_row(row.report);
        out.push_back('\n');
    }
    return out;
}

} // namespace streamdfg
