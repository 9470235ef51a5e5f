#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "streamdfg/eval.hpp"
#include "streamdfg/graph.hpp"
#include "streamdfg/miner.hpp"

namespace streamdfg {

/// Point-in-time model state as it is written to and read from disk.
/// start/end counts are meaningful only when has_start_end is set; the
/// miner tracks them only when end activities are configured.
struct snapshot_doc {
    std::string technique;
    std::uint64_t map_budget = 0;
    std::uint64_t case_budget = 0;
    std::uint64_t events_processed = 0;
    std::uint64_t open_cases = 0;
    frequency_graph graph;
    bool has_start_end = false;
    std::vector<std::pair<std::string, std::uint64_t>> start_counts;
    std::vector<std::pair<std::string, std::uint64_t>> end_counts;
};

snapshot_doc to_snapshot_doc(const miner_snapshot& snap);

/// JSON with alphabetically ordered keys and no volatile fields, so equal
/// states serialize to equal bytes.
std::string to_json(const snapshot_doc& doc);
/// Inverse of to_json. Malformed documents raise std::runtime_error.
snapshot_doc snapshot_from_json(const std::string& text);

std::string to_json(const eval_report& report);

/// Graphviz digraph: one box per activity labeled "name (frequency)", one
/// edge per relation labeled with its frequency, pen width scaled linearly
/// from 1 to 5 by frequency relative to the busiest relation. With
/// `with_start_end`, virtual start/end nodes are added from the recorded
/// per-activity case start/end counts; requires has_start_end.
std::string to_dot(const snapshot_doc& doc, bool with_start_end = false);

} // namespace streamdfg
