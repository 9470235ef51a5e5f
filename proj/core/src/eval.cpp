#include "streamdfg/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <unordered_map>

namespace streamdfg {

const char* to_string(technique t) {
    switch (t) {
    case technique::lcb: return "lcb";
    case technique::lru: return "lru";
    case technique::lfu: return "lfu";
    case technique::lfu_da: return "lfu-da";
    }
    throw unknown_technique("technique enum value out of range");
}

technique technique_from_string(std::string_view name) {
    if (name == "lcb") return technique::lcb;
    if (name == "lru") return technique::lru;
    if (name == "lfu") return technique::lfu;
    if (name == "lfu-da") return technique::lfu_da;
    throw unknown_technique("unknown technique: " + std::string(name));
}

policy_kind policy_of(technique t) {
    switch (t) {
    case technique::lru: return policy_kind::lru;
    case technique::lfu: return policy_kind::lfu;
    case technique::lfu_da: return policy_kind::lfu_da;
    case technique::lcb: break;
    }
    throw unknown_technique("the lossy-counting baseline has no deletion mechanism");
}

technique technique_of(policy_kind policy) {
    switch (policy) {
    case policy_kind::lru: return technique::lru;
    case policy_kind::lfu: return technique::lfu;
    case policy_kind::lfu_da: return technique::lfu_da;
    }
    throw unknown_technique("policy enum value out of range");
}

word_cost word_cost_of(technique t) {
    switch (t) {
    case technique::lcb: return {3, 4, 4};
    case technique::lru: return {3, 4, 3};
    case technique::lfu: return {2, 3, 3};
    case technique::lfu_da: return {3, 4, 3};
    }
    throw unknown_technique("technique enum value out of range");
}

std::uint64_t memory_words(technique t, std::uint64_t n_nodes, std::uint64_t n_arcs,
                           std::uint64_t n_cases) {
    const word_cost cost = word_cost_of(t);
    return cost.activity_words * n_nodes + cost.relation_words * n_arcs +
           cost.case_words * n_cases;
}

accuracy_result accuracy(const frequency_graph& complete, const frequency_graph& discovered) {
    accuracy_result result;
    for (const auto& [key, freq] : complete.arcs) result.total_frequency += freq;
    if (result.total_frequency == 0)
        throw zero_total_frequency("complete graph has no relation frequency");

    auto diff = [](std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; };
    for (const auto& [key, freq] : complete.arcs) {
        auto it = discovered.arcs.find(key);
        result.loss += diff(freq, it == discovered.arcs.end() ? 0 : it->second);
    }
    // Relations only the discovered graph has count in full as spurious mass.
    for (const auto& [key, freq] : discovered.arcs)
        if (!complete.arcs.contains(key)) result.loss += freq;

    result.raw_accuracy = 1.0 - static_cast<double>(result.loss) /
                                    static_cast<double>(result.total_frequency);
    result.accuracy = std::max(0.0, result.raw_accuracy);
    return result;
}

std::string to_csv_row(const eval_report& report) {
    char buffer[256];
    std::snprintf(buffer, sizeof buffer, "%s,%llu,%.6f,%llu,%llu,%.6f,%llu",
                  to_string(report.tech),
                  static_cast<unsigned long long>(report.budget), report.acc.accuracy,
                  static_cast<unsigned long long>(report.peak_memory_words),
                  static_cast<unsigned long long>(report.peak_memory_bytes),
                  report.ms_per_event,
                  static_cast<unsigned long long>(report.events_processed));
    return buffer;
}

process_map offline_dfg(const std::vector<event>& events) {
    std::vector<event> ordered(events);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const event& a, const event& b) {
                         return a.timestamp_ms < b.timestamp_ms;
                     });

    process_map map(std::numeric_limits<std::uint64_t>::max());
    std::unordered_map<std::string, activity_id, string_hash, std::equal_to<>> last;
    std::uint64_t idx = 0;
    for (const event& ev : ordered) {
        validate(ev);
        ++idx;
        const activity_id current = map.intern(ev.activity);
        if (map.touch_activity(current, idx) == touch_result::missing)
            map.insert_activity(current, idx, 0);
        if (auto it = last.find(ev.case_id); it != last.end()) {
            map.touch_or_insert_arc(it->second, current, idx, 0);
            it->second = current;
        } else {
            last.emplace(ev.case_id, current);
        }
    }
    return map;
}

} // namespace streamdfg
