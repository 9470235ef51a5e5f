#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "streamdfg/errors.hpp"
#include "streamdfg/process_map.hpp"

namespace streamdfg {

/// The three deletion mechanisms for the process-map partition.
enum class policy_kind : std::uint8_t { lru, lfu, lfu_da };

const char* to_string(policy_kind policy);

/// Dynamic aging level. Starts at zero; each eviction under LFU-DA raises it
/// to the evicted element's key, so it never decreases during a run.
struct aging_state {
    std::uint64_t level = 0;
};

/// Replacement key of one element under a policy:
///   LRU    -> last_seen_idx
///   LFU    -> frequency
///   LFU-DA -> frequency + the aging credit stamped at insertion
std::uint64_t score(policy_kind policy, const entry_stats& stats);

/// The element a deletion mechanism picked, with the key that made it minimal.
struct victim {
    element_ref ref;
    std::uint64_t key = 0;
};

/// Ordered victim-selection index kept in lock-step with one process_map via
/// the listener hook. Nodes and arcs are ranked separately because the
/// deletion mechanisms compare the two minima: the minimal arc is removed
/// only when its key is strictly below the minimal node's; any tie goes to
/// the node. Ties inside a set fall back to earliest insertion.
///
/// All maintenance is O(log n) per mutation and selection is O(1), so the
/// full-scan alternative is only needed as a cross-check.
class victim_index final : public map_listener {
public:
    explicit victim_index(policy_kind policy) : policy_(policy) {}

    policy_kind policy() const noexcept { return policy_; }

    /// Minimal-key element under the node/arc comparison rule above.
    /// Throws empty_map_error when the index tracks no elements.
    victim select() const;

    bool empty() const noexcept { return nodes_.empty() && arcs_.empty(); }
    std::size_t size() const noexcept { return nodes_.size() + arcs_.size(); }
    void clear() { nodes_.clear(); arcs_.clear(); }

    // map_listener
    void on_insert(element_ref ref, const entry_stats& stats) override;
    void on_update(element_ref ref, const entry_stats& before, const entry_stats& after) override;
    void on_remove(element_ref ref, const entry_stats& stats) override;

private:
    using node_rank = std::tuple<std::uint64_t, std::uint64_t, activity_id>; // key, seq, id
    using arc_rank = std::tuple<std::uint64_t, std::uint64_t, arc_key>;      // key, seq, arc

    policy_kind policy_;
    std::set<node_rank> nodes_;
    std::set<arc_rank> arcs_;
};

/// Run one round of the deletion mechanism: pick the victim, remove it (a
/// node removal cascades to its arcs), and under LFU-DA raise the aging
/// level to the victim's key. Returns the number of entries removed (>= 1).
/// `removed`, when given, receives the removal records.
///
/// The index must be attached to `map` as its listener.
std::size_t evict_once(process_map& map, victim_index& index, aging_state& aging,
                       std::vector<removed_element>* removed = nullptr);

} // namespace streamdfg
