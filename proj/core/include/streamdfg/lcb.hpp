#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>

#include "streamdfg/event.hpp"
#include "streamdfg/graph.hpp"
#include "streamdfg/interner.hpp"
#include "streamdfg/miner.hpp"
#include "streamdfg/process_map.hpp"

namespace streamdfg {

/// Lossy-counting baseline over one shared item budget. Activities,
/// directly-follows relations, and running cases are all items of the same
/// pool: each carries an observed count f and the bucket index delta at
/// which it entered, and a bucket ends exactly when the pool is full.
class lcb_state {
public:
    /// Count plus maximal possible under-count for one tracked item.
    struct counted {
        std::uint64_t f = 0;
        std::uint64_t delta = 0;
    };
    /// A case item also remembers the case's latest activity.
    struct case_item {
        counted count;
        activity_id last_activity = 0;
    };

    explicit lcb_state(std::uint64_t budget) : budget_(budget) {
        if (budget == 0) throw std::invalid_argument("item budget must be positive");
    }

    /// Fold one event in: upsert the activity item, then the case item, then
    /// (when the case was already tracked) the relation item from the case's
    /// previous activity. Any insert finding the pool full sweeps first.
    update_report observe(const event& ev);

    /// Advance the bucket index and drop every item with f + delta <= w,
    /// relaxing (advancing w again) until at least one item goes. Counts land
    /// in `report` (cases separately from activities and relations).
    std::size_t cleanup(update_report& report);

    std::uint64_t budget() const noexcept { return budget_; }
    std::uint64_t bucket_index() const noexcept { return w_; }
    std::size_t item_count() const noexcept {
        return activities_.size() + relations_.size() + cases_.size();
    }
    bool full() const noexcept { return item_count() >= budget_; }
    std::size_t activity_count() const noexcept { return activities_.size(); }
    std::size_t relation_count() const noexcept { return relations_.size(); }
    std::size_t case_count() const noexcept { return cases_.size(); }

    const interner& names() const noexcept { return names_; }
    const std::unordered_map<activity_id, counted>& activities() const noexcept {
        return activities_;
    }
    const std::unordered_map<arc_key, counted, arc_key_hash>& relations() const noexcept {
        return relations_;
    }
    const std::unordered_map<std::string, case_item, string_hash, std::equal_to<>>&
    cases() const noexcept {
        return cases_;
    }

    /// Export as a plain graph: activity items become nodes, relation items
    /// arcs. A relation whose endpoint item was swept keeps its arc; the
    /// missing endpoint appears as a node with frequency 0 so downstream
    /// consumers always see a well-formed graph.
    frequency_graph snapshot() const;

private:
    void make_room(update_report& report) {
        if (full()) cleanup(report);
    }

    interner names_;
    std::unordered_map<activity_id, counted> activities_;
    std::unordered_map<arc_key, counted, arc_key_hash> relations_;
    std::unordered_map<std::string, case_item, string_hash, std::equal_to<>> cases_;
    std::uint64_t budget_;
    std::uint64_t w_ = 0;
};

} // namespace streamdfg
