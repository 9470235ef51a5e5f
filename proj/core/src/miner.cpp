#include "streamdfg/miner.hpp"

#include <algorithm>
#include <cassert>

namespace streamdfg {

namespace {

std::uint64_t insert_credit(policy_kind policy, const aging_state& aging) {
    // Only the aging policy seeds new entries with credit; the others score
    // from raw statistics alone.
    return policy == policy_kind::lfu_da ? aging.level : 0;
}

} // namespace

stream_miner::stream_miner(miner_config config)
    : config_(std::move(config)),
      map_((config_.map_budget >= 2)
               ? config_.map_budget
               : throw std::invalid_argument(
                     "map budget below 2 cannot hold an activity and a relation")),
      index_(config_.policy),
      cases_(config_.case_budget) {
    if (config_.case_ttl_ms && *config_.case_ttl_ms < 0)
        throw std::invalid_argument("case ttl must be non-negative");
    map_.set_listener(&index_);
    for (const auto& name : config_.end_activities)
        end_ids_.insert(map_.intern(name));
}

update_report stream_miner::observe(const event& ev) {
    validate(ev);
    ++idx_;
    update_report report;

    const activity_id current = record_activity(ev.activity, report);

    if (const case_entry* known = cases_.find(ev.case_id)) {
        const activity_id prev = known->last_activity;
        const std::int64_t first_seen = known->first_seen_ms;
        record_relation(prev, current, report);
        cases_.update(ev.case_id, current, idx_);
        if (is_expired(ev, first_seen, current)) {
            cases_.erase(ev.case_id);
            report.case_expired = true;
        }
    } else {
        if (!end_ids_.empty()) ++start_counts_[current];
        if (cases_.full()) {
            cases_.evict_case();
            ++report.evicted_cases;
        }
        cases_.insert(ev.case_id, current, idx_, ev.timestamp_ms);
        if (is_expired(ev, ev.timestamp_ms, current)) {
            cases_.erase(ev.case_id);
            report.case_expired = true;
        }
    }

    if (report.case_expired && end_ids_.contains(current)) ++end_counts_[current];

    if (trace_) write_trace(ev, report);
    return report;
}

activity_id stream_miner::record_activity(std::string_view name, update_report& report) {
    const activity_id id = map_.intern(name);
    if (map_.touch_activity(id, idx_) == touch_result::incremented) return id;
    if (map_.full())
        report.evicted_map_entries +=
            static_cast<std::uint32_t>(evict_once(map_, index_, aging_));
    map_.insert_activity(id, idx_, insert_credit(config_.policy, aging_));
    return id;
}

void stream_miner::record_relation(activity_id prev, activity_id current,
                                   update_report& report) {
    if (!map_.has_node(prev)) {
        // The predecessor's node was evicted since it was last seen, so the
        // arc has nowhere to hang; the observation is lost.
        report.relation_dropped = true;
        return;
    }
    const std::uint64_t credit = insert_credit(config_.policy, aging_);
    arc_update outcome = map_.touch_or_insert_arc(prev, current, idx_, credit);
    if (outcome == arc_update::needs_room) {
        report.evicted_map_entries +=
            static_cast<std::uint32_t>(evict_once(map_, index_, aging_));
        // Making room can cascade away either endpoint; only retry when the
        // arc can still be anchored.
        if (map_.has_node(prev) && map_.has_node(current)) {
            outcome = map_.touch_or_insert_arc(prev, current, idx_, credit);
            assert(outcome != arc_update::needs_room);
        } else {
            report.relation_dropped = true;
            return;
        }
    }
    report.relation_recorded.emplace(map_.name_of(prev), map_.name_of(current));
}

bool stream_miner::is_expired(const event& ev, std::int64_t first_seen_ms,
                              activity_id current) const {
    if (end_ids_.contains(current)) return true;
    return config_.case_ttl_ms && (ev.timestamp_ms - first_seen_ms > *config_.case_ttl_ms);
}

miner_snapshot stream_miner::snapshot() const {
    miner_snapshot snap{map_,
                        idx_,
                        cases_.size(),
                        config_.policy,
                        config_.map_budget,
                        config_.case_budget,
                        {},
                        {}};
    auto to_sorted = [this](const std::unordered_map<activity_id, std::uint64_t>& counts) {
        std::vector<std::pair<std::string, std::uint64_t>> out;
        out.reserve(counts.size());
        for (const auto& [id, n] : counts) out.emplace_back(std::string(map_.name_of(id)), n);
        std::sort(out.begin(), out.end());
        return out;
    };
    if (!end_ids_.empty()) {
        snap.start_counts = to_sorted(start_counts_);
        snap.end_counts = to_sorted(end_counts_);
    }
    return snap;
}

void stream_miner::write_trace(const event& ev, const update_report& report) const {
    auto& out = *trace_;
    out << "idx=" << idx_ << " case=" << ev.case_id << " activity=" << ev.activity;
    if (report.relation_recorded)
        out << " relation=" << report.relation_recorded->first << "->"
            << report.relation_recorded->second;
    else if (report.relation_dropped)
        out << " relation=dropped";
    if (report.evicted_map_entries) out << " evicted_map=" << report.evicted_map_entries;
    if (report.evicted_cases) out << " evicted_cases=" << report.evicted_cases;
    if (report.case_expired) out << " expired=1";
    out << '\n';
}

} // namespace streamdfg
