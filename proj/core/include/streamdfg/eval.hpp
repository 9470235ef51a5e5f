#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "streamdfg/event.hpp"
#include "streamdfg/graph.hpp"
#include "streamdfg/policies.hpp"
#include "streamdfg/process_map.hpp"

namespace streamdfg {

/// All comparable mining techniques: the three deletion mechanisms plus the
/// lossy-counting baseline.
enum class technique : std::uint8_t { lcb, lru, lfu, lfu_da };

inline constexpr technique all_techniques[] = {technique::lcb, technique::lru,
                                               technique::lfu, technique::lfu_da};

const char* to_string(technique t);
technique technique_from_string(std::string_view name);
/// The deletion mechanism behind a technique; throws unknown_technique for
/// the baseline, which has none.
policy_kind policy_of(technique t);
technique technique_of(policy_kind policy);

/// Words of storage (4 bytes each) one element of each kind costs under a
/// technique.
struct word_cost {
    std::uint32_t activity_words = 0;
    std::uint32_t relation_words = 0;
    std::uint32_t case_words = 0;
};

word_cost word_cost_of(technique t);

/// Model footprint in 4-byte words: per-kind cost times element count.
std::uint64_t memory_words(technique t, std::uint64_t n_nodes, std::uint64_t n_arcs,
                           std::uint64_t n_cases);

inline constexpr std::uint64_t bytes_per_word = 4;

/// Outcome of comparing a discovered graph against the complete one.
struct accuracy_result {
    /// Sum of absolute relation-frequency differences over the key union.
    std::uint64_t loss = 0;
    /// Sum of the complete graph's relation frequencies.
    std::uint64_t total_frequency = 0;
    /// 1 - loss/total, clamped to 0 when spurious mass drives it negative.
    double accuracy = 0.0;
    /// Same ratio without the clamp; negative values signal heavy spurious
    /// mass in the discovered graph.
    double raw_accuracy = 0.0;
};

/// Relation-frequency similarity. Node frequencies do not enter; an
/// activity absent from one side contributes through its relations, which
/// count as frequency 0 on the side missing them. Throws
/// zero_total_frequency when `complete` has no relation mass to compare
/// against.
accuracy_result accuracy(const frequency_graph& complete, const frequency_graph& discovered);

/// One evaluated run, ready for CSV/JSON output.
struct eval_report {
    technique tech = technique::lfu;
    std::uint64_t budget = 0;
    accuracy_result acc;
    std::uint64_t peak_memory_words = 0;
    std::uint64_t peak_memory_bytes = 0;
    double ms_per_event = 0.0;
    std::uint64_t events_processed = 0;
};

inline constexpr std::string_view bench_csv_header =
    "technique,budget,accuracy,peak_memory_words,peak_memory_bytes,ms_per_event,"
    "events_processed";

/// One CSV row under bench_csv_header, no trailing newline. Numeric
/// formatting is locale-independent and stable across runs.
std::string to_csv_row(const eval_report& report);

/// Exact reference graph: stable-sort the log by timestamp, then count every
/// activity occurrence and every consecutive same-case pair. The returned
/// map has an effectively unlimited budget.
process_map offline_dfg(const std::vector<event>& events);

} // namespace streamdfg
