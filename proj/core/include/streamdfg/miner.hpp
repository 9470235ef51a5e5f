#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "streamdfg/case_store.hpp"
#include "streamdfg/event.hpp"
#include "streamdfg/policies.hpp"
#include "streamdfg/process_map.hpp"

namespace streamdfg {

/// Tuning knobs for one mining run.
struct miner_config {
    policy_kind policy = policy_kind::lfu;
    /// Capacity of the map partition, counting nodes and arcs together.
    std::uint64_t map_budget = 0;
    /// Capacity of the running-case partition.
    std::uint64_t case_budget = 0;
    /// Activities that close a case the moment they are observed for it.
    std::vector<std::string> end_activities;
    /// When set, a case whose latest event is more than this many ms past
    /// its first event is closed right after the update.
    std::optional<std::int64_t> case_ttl_ms;
};

/// What a single observation did to the model. Cheap to return by value.
struct update_report {
    std::uint32_t evicted_map_entries = 0;
    std::uint32_t evicted_cases = 0;
    /// Set when the directly-follows arc (source, target) was counted.
    /// Views are valid as long as the miner (or lcb state) lives.
    std::optional<std::pair<std::string_view, std::string_view>> relation_recorded;
    /// True when the case had a predecessor but the arc could not be
    /// counted because an endpoint no longer existed after making room.
    bool relation_dropped = false;
    /// True when the case was closed (end activity or TTL) by this event.
    bool case_expired = false;
};

/// Everything a point-in-time export needs, detached from the live miner.
struct miner_snapshot {
    process_map map;
    std::uint64_t events_processed = 0;
    std::uint64_t open_cases = 0;
    policy_kind policy = policy_kind::lfu;
    std::uint64_t map_budget = 0;
    std::uint64_t case_budget = 0;
    /// Per-activity counts of case starts and case ends. Populated only
    /// when end activities are configured.
    std::vector<std::pair<std::string, std::uint64_t>> start_counts;
    std::vector<std::pair<std::string, std::uint64_t>> end_counts;
};

/// Single-pass miner that folds an event stream into a budgeted
/// frequency-annotated directly-follows graph plus a budgeted set of open
/// cases. Memory never exceeds the two budgets; accuracy degrades instead.
class stream_miner {
public:
    explicit stream_miner(miner_config config);

    stream_miner(const stream_miner&) = delete;
    stream_miner& operator=(const stream_miner&) = delete;

    /// Fold one event into the model. Events are expected in stream order;
    /// the caller sorts first when replay order should be by timestamp.
    update_report observe(const event& ev);

    std::uint64_t events_processed() const noexcept { return idx_; }
    const process_map& map() const noexcept { return map_; }
    const running_case_store& cases() const noexcept { return cases_; }
    const miner_config& config() const noexcept { return config_; }
    std::uint64_t aging_level() const noexcept { return aging_.level; }

    /// Deep copy of the current state, safe to keep while mining continues.
    miner_snapshot snapshot() const;

    /// When set, every observation appends one line describing what it did.
    void set_trace(std::ostream* sink) noexcept { trace_ = sink; }

private:
    /// Touch the node for this activity, inserting (after making room) when
    /// it is not present. Returns its id.
    activity_id record_activity(std::string_view name, update_report& report);
    /// Count the arc prev -> current, making room at most once. Skips the
    /// arc when an endpoint was itself evicted while making room.
    void record_relation(activity_id prev, activity_id current, update_report& report);
    bool is_expired(const event& ev, std::int64_t first_seen_ms, activity_id current) const;
    void write_trace(const event& ev, const update_report& report) const;

    miner_config config_;
    process_map map_;
    victim_index index_;
    aging_state aging_;
    running_case_store cases_;
    std::unordered_set<activity_id> end_ids_;
    std::unordered_map<activity_id, std::uint64_t> start_counts_;
    std::unordered_map<activity_id, std::uint64_t> end_counts_;
    std::uint64_t idx_ = 0;
    std::ostream* trace_ = nullptr;
};

} // namespace streamdfg
