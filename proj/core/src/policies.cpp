#include "streamdfg/policies.hpp"

#include <cassert>

namespace streamdfg {

const char* to_string(policy_kind policy) {
    switch (policy) {
        case policy_kind::lru: return "lru";
        case policy_kind::lfu: return "lfu";
        case policy_kind::lfu_da: return "lfu-da";
    }
    return "?";
}

std::uint64_t score(policy_kind policy, const entry_stats& stats) {
    switch (policy) {
        case policy_kind::lru: return stats.last_seen_idx;
        case policy_kind::lfu: return stats.frequency;
        case policy_kind::lfu_da: return stats.frequency + stats.aging_credit;
    }
    return 0;
}

void victim_index::on_insert(element_ref ref, const entry_stats& stats) {
    const std::uint64_t key = score(policy_, stats);
    if (ref.kind == element_kind::node)
        nodes_.emplace(key, stats.insert_seq, ref.id);
    else
        arcs_.emplace(key, stats.insert_seq, ref.as_arc());
}

void victim_index::on_update(element_ref ref, const entry_stats& before, const entry_stats& after) {
    const std::uint64_t old_key = score(policy_, before);
    const std::uint64_t new_key = score(policy_, after);
    if (ref.kind == element_kind::node) {
        nodes_.erase({old_key, before.insert_seq, ref.id});
        nodes_.emplace(new_key, after.insert_seq, ref.id);
    } else {
        arcs_.erase({old_key, before.insert_seq, ref.as_arc()});
        arcs_.emplace(new_key, after.insert_seq, ref.as_arc());
    }
}

void victim_index::on_remove(element_ref ref, const entry_stats& stats) {
    const std::uint64_t key = score(policy_, stats);
    if (ref.kind == element_kind::node) {
        [[maybe_unused]] auto erased = nodes_.erase({key, stats.insert_seq, ref.id});
        assert(erased == 1);
    } else {
        [[maybe_unused]] auto erased = arcs_.erase({key, stats.insert_seq, ref.as_arc()});
        assert(erased == 1);
    }
}

victim victim_index::select() const {
    if (nodes_.empty() && arcs_.empty())
        throw empty_map_error("victim selection on an empty map");
    if (nodes_.empty()) {
        const auto& [key, seq, arc] = *arcs_.begin();
        return {element_ref::arc(arc), key};
    }
    if (arcs_.empty()) {
        const auto& [key, seq, id] = *nodes_.begin();
        return {element_ref::node(id), key};
    }
    const auto& [node_key, node_seq, node_id] = *nodes_.begin();
    const auto& [arc_key_, arc_seq, arc] = *arcs_.begin();
    // Strictly larger node minimum picks the arc; equality keeps the node.
    if (node_key > arc_key_) return {element_ref::arc(arc), arc_key_};
    return {element_ref::node(node_id), node_key};
}

std::size_t evict_once(process_map& map, victim_index& index, aging_state& aging,
                       std::vector<removed_element>* removed) {
    const victim chosen = index.select();
    const std::size_t count = map.remove_element(chosen.ref, removed);
    if (index.policy() == policy_kind::lfu_da) {
        assert(chosen.key >= aging.level);
        aging.level = chosen.key;
    }
    return count;
}

} // namespace streamdfg
