#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "streamdfg/errors.hpp"
#include "streamdfg/interner.hpp"

namespace streamdfg {

/// Directed arc identity. Self-loops (source == target) are legal and (a, b)
/// is distinct from (b, a).
struct arc_key {
    activity_id source = 0;
    activity_id target = 0;
    auto operator<=>(const arc_key&) const = default;
};

struct arc_key_hash {
    std::size_t operator()(arc_key k) const noexcept {
        return std::hash<std::uint64_t>{}(
            (static_cast<std::uint64_t>(k.source) << 32) | k.target);
    }
};

/// Frequency and replacement-policy bookkeeping shared by nodes and arcs.
///
/// last_seen_idx feeds recency-based selection, aging_credit is the dynamic
/// aging level stamped at insertion time, and insert_seq is a map-wide
/// insertion counter used to break score ties deterministically.
struct entry_stats {
    std::uint64_t frequency = 0;
    std::uint64_t last_seen_idx = 0;
    std::uint64_t aging_credit = 0;
    std::uint64_t insert_seq = 0;
};

enum class element_kind : std::uint8_t { node, arc };

/// Reference to one map element. For a node only `id` is meaningful.
struct element_ref {
    element_kind kind = element_kind::node;
    activity_id id = 0; // node id, or arc source
    activity_id target = 0; // arc target

    static element_ref node(activity_id id) { return {element_kind::node, id, 0}; }
    static element_ref arc(arc_key k) { return {element_kind::arc, k.source, k.target}; }
    arc_key as_arc() const { return {id, target}; }
    bool operator==(const element_ref&) const = default;
};

/// One removed element, reported to callers interested in eviction cascades.
struct removed_element {
    element_ref ref;
    entry_stats stats;
};

/// Observer for map mutations. Victim-selection indices attach through this
/// so cascading removals keep them consistent without caller bookkeeping.
class map_listener {
public:
    virtual ~map_listener() = default;
    virtual void on_insert(element_ref ref, const entry_stats& stats) = 0;
    virtual void on_update(element_ref ref, const entry_stats& before,
                           const entry_stats& after) = 0;
    virtual void on_remove(element_ref ref, const entry_stats& stats) = 0;
};

enum class touch_result : std::uint8_t { incremented, missing };
enum class arc_update : std::uint8_t { incremented, inserted, needs_room };

/// Budgeted directly-follows graph: activity nodes plus directed relation
/// arcs, each carrying an observation frequency. The budget caps
/// node_count() + arc_count(); making room is the caller's job, via whatever
/// deletion mechanism is in force.
///
/// Activity names are interned to dense integer ids; every text-based entry
/// point has an id-based twin for the hot path. Copies are deep and detach
/// any listener, so a copy is a safe immutable snapshot.
class process_map {
public:
    explicit process_map(std::uint64_t budget);

    process_map(const process_map& other);
    process_map& operator=(const process_map& other);
    process_map(process_map&&) = default;
    process_map& operator=(process_map&&) = default;

    // -- interning ---------------------------------------------------------
    activity_id intern(std::string_view name) { return names_.intern(name); }
    std::optional<activity_id> find_id(std::string_view name) const { return names_.find(name); }
    std::string_view name_of(activity_id id) const { return names_.name_of(id); }
    const interner& names() const noexcept { return names_; }

    // -- per-event operations ---------------------------------------------
    /// Increment an existing activity's frequency and refresh its recency.
    /// Returns missing (map untouched) when the activity is not present.
    touch_result touch_activity(activity_id id, std::uint64_t idx);
    touch_result touch_activity(std::string_view name, std::uint64_t idx);

    /// Insert a new activity with frequency 1. The caller must have freed
    /// space beforehand; inserting into a full map is a programming error.
    void insert_activity(activity_id id, std::uint64_t idx, std::uint64_t aging_credit);
    void insert_activity(std::string_view name, std::uint64_t idx, std::uint64_t aging_credit);

    /// Increment the arc if present, insert it if there is room, or report
    /// needs_room (map unchanged) so the caller can evict and retry. Both
    /// endpoints must be present nodes.
    arc_update touch_or_insert_arc(activity_id source, activity_id target,
                                   std::uint64_t idx, std::uint64_t aging_credit);
    arc_update touch_or_insert_arc(std::string_view source, std::string_view target,
                                   std::uint64_t idx, std::uint64_t aging_credit);

    /// Remove one element. An arc removal removes exactly that arc; a node
    /// removal cascades to every arc touching the node. Returns the number
    /// of entries removed (>= 1). `removed`, when given, receives one record
    /// per entry in removal order.
    std::size_t remove_element(element_ref victim, std::vector<removed_element>* removed = nullptr);

    // -- queries -----------------------------------------------------------
    std::uint64_t budget() const noexcept { return budget_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t arc_count() const noexcept { return arcs_.size(); }
    std::size_t size() const noexcept { return nodes_.size() + arcs_.size(); }
    bool full() const noexcept { return size() >= budget_; }
    bool empty() const noexcept { return size() == 0; }

    const entry_stats* find_node(activity_id id) const;
    const entry_stats* find_node(std::string_view name) const;
    const entry_stats* find_arc(arc_key key) const;
    const entry_stats* find_arc(std::string_view source, std::string_view target) const;
    bool has_node(activity_id id) const { return nodes_.count(id) != 0; }

    const std::unordered_map<activity_id, entry_stats>& nodes() const noexcept { return nodes_; }
    const std::unordered_map<arc_key, entry_stats, arc_key_hash>& arcs() const noexcept { return arcs_; }

    void set_listener(map_listener* listener) noexcept { listener_ = listener; }

    /// Full structural check: budget respected, no dangling arcs, adjacency
    /// consistent, frequencies positive. Throws std::logic_error on the
    /// first violation. O(V + E); meant for tests and debugging.
    void validate() const;

private:
    void notify_insert(element_ref ref, const entry_stats& s) {
        if (listener_) listener_->on_insert(ref, s);
    }
    void notify_update(element_ref ref, const entry_stats& b, const entry_stats& a) {
        if (listener_) listener_->on_update(ref, b, a);
    }
    void notify_remove(element_ref ref, const entry_stats& s) {
        if (listener_) listener_->on_remove(ref, s);
    }
    std::size_t remove_node_cascade(activity_id id, std::vector<removed_element>* removed);
    void erase_arc_entry(arc_key key, std::vector<removed_element>* removed);

    interner names_;
    std::unordered_map<activity_id, entry_stats> nodes_;
    std::unordered_map<arc_key, entry_stats, arc_key_hash> arcs_;
    std::unordered_map<activity_id, std::unordered_set<activity_id>> out_;
    std::unordered_map<activity_id, std::unordered_set<activity_id>> in_;
    std::uint64_t budget_;
    std::uint64_t next_seq_ = 0;
    map_listener* listener_ = nullptr;
};

/// Element budget that makes streamed construction lossless for a log with
/// `n_activities` distinct activities, counting undirected pairs plus
/// self-loops plus nodes: N(N+1)/2 + N.
std::uint64_t lossless_budget(std::uint64_t n_activities);

/// Sufficient bound for a directed graph with self-loops: N^2 + N. A
/// directed graph over N activities can hold up to N^2 arcs, so this, not
/// lossless_budget(), is what guarantees eviction never fires.
std::uint64_t lossless_budget_directed(std::uint64_t n_activities);

} // namespace streamdfg
