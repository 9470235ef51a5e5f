#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "streamdfg/process_map.hpp"

namespace streamdfg {

/// Text-keyed frequency-annotated directly-follows graph, detached from any
/// interner. Ordered maps so iteration (and serialization) is deterministic.
struct frequency_graph {
    std::map<std::string, std::uint64_t, std::less<>> nodes;
    std::map<std::pair<std::string, std::string>, std::uint64_t> arcs;

    bool operator==(const frequency_graph&) const = default;
};

/// Resolve a map's interned ids back to names.
inline frequency_graph to_frequency_graph(const process_map& map) {
    frequency_graph g;
    for (const auto& [id, stats] : map.nodes())
        g.nodes.emplace(std::string(map.name_of(id)), stats.frequency);
    for (const auto& [key, stats] : map.arcs())
        g.arcs.emplace(std::make_pair(std::string(map.name_of(key.source)),
                                      std::string(map.name_of(key.target))),
                       stats.frequency);
    return g;
}

} // namespace streamdfg
