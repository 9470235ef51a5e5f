#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "streamdfg/errors.hpp"
#include "streamdfg/interner.hpp"

namespace streamdfg {

/// What the running-case partition remembers about one open case: the last
/// activity observed for it, the stream index of that observation, and the
/// timestamp of the case's first event (used only for TTL expiry).
struct case_entry {
    activity_id last_activity = 0;
    std::uint64_t last_update_idx = 0;
    std::int64_t first_seen_ms = 0;
};

/// Budgeted store of open cases, one entry per case id, holding only the
/// most recent activity. When full, the least-recently-updated case is the
/// one that gives way.
class running_case_store {
public:
    explicit running_case_store(std::uint64_t budget) : budget_(budget) {
        if (budget == 0) throw std::invalid_argument("case budget must be positive");
    }

    running_case_store(const running_case_store& other)
        : entries_(other.entries_), budget_(other.budget_) {
        rebuild_recency();
    }
    running_case_store& operator=(const running_case_store& other) {
        if (this != &other) {
            entries_ = other.entries_;
            budget_ = other.budget_;
            rebuild_recency();
        }
        return *this;
    }
    running_case_store(running_case_store&&) = default;
    running_case_store& operator=(running_case_store&&) = default;

    std::uint64_t budget() const noexcept { return budget_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool full() const noexcept { return entries_.size() >= budget_; }

    const case_entry* find(std::string_view case_id) const {
        auto it = entries_.find(case_id);
        return it == entries_.end() ? nullptr : &it->second;
    }

    /// Replace an existing case's last activity, refreshing its recency.
    void update(std::string_view case_id, activity_id activity, std::uint64_t idx) {
        auto it = entries_.find(case_id);
        if (it == entries_.end())
            throw element_not_found("case to update is not tracked");
        recency_.erase({it->second.last_update_idx, it->first});
        it->second.last_activity = activity;
        it->second.last_update_idx = idx;
        recency_.emplace(idx, it->first);
    }

    /// Track a new case. The caller makes room first; inserting into a full
    /// store is a programming error.
    void insert(std::string_view case_id, activity_id activity, std::uint64_t idx,
                std::int64_t first_seen_ms) {
        if (full())
            throw budget_violation("case insertion into a full store; evict first");
        auto [it, inserted] = entries_.emplace(std::string(case_id),
                                               case_entry{activity, idx, first_seen_ms});
        if (!inserted) throw std::logic_error("case already tracked");
        recency_.emplace(idx, it->first);
    }

    /// Drop a case. Returns false when it was not tracked.
    bool erase(std::string_view case_id) {
        auto it = entries_.find(case_id);
        if (it == entries_.end()) return false;
        recency_.erase({it->second.last_update_idx, it->first});
        entries_.erase(it);
        return true;
    }

    /// Remove and return the least-recently-updated case id.
    std::string evict_case() {
        if (entries_.empty()) throw empty_store_error("case eviction on an empty store");
        auto oldest = recency_.begin();
        std::string victim(oldest->second);
        recency_.erase(oldest);
        entries_.erase(entries_.find(victim));
        return victim;
    }

    const auto& entries() const noexcept { return entries_; }

private:
    void rebuild_recency() {
        recency_.clear();
        for (const auto& [case_id, entry] : entries_)
            recency_.emplace(entry.last_update_idx, case_id);
    }

    using entry_map =
        std::unordered_map<std::string, case_entry, string_hash, std::equal_to<>>;

    entry_map entries_;
    // (last_update_idx, view of the map key); node-based map keys are stable
    std::set<std::pair<std::uint64_t, std::string_view>> recency_;
    std::uint64_t budget_;
};

} // namespace streamdfg
