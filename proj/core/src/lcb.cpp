#include "streamdfg/lcb.hpp"

#include <optional>

namespace streamdfg {

update_report lcb_state::observe(const event& ev) {
    validate(ev);
    update_report report;
    const activity_id current = names_.intern(ev.activity);

    // The case upsert below overwrites last_activity, so take the
    // predecessor first. A relation is due only when the case item existed
    // at arrival.
    std::optional<activity_id> prev;
    if (auto it = cases_.find(ev.case_id); it != cases_.end())
        prev = it->second.last_activity;

    if (auto it = activities_.find(current); it != activities_.end()) {
        ++it->second.f;
    } else {
        make_room(report);
        activities_.emplace(current, counted{1, w_});
    }

    if (auto it = cases_.find(ev.case_id); it != cases_.end()) {
        ++it->second.count.f;
        it->second.last_activity = current;
    } else {
        make_room(report);
        cases_.emplace(std::string(ev.case_id), case_item{{1, w_}, current});
    }

    if (prev) {
        const arc_key key{*prev, current};
        if (auto it = relations_.find(key); it != relations_.end()) {
            ++it->second.f;
        } else {
            make_room(report);
            relations_.emplace(key, counted{1, w_});
        }
        report.relation_recorded.emplace(names_.name_of(*prev), names_.name_of(current));
    }
    return report;
}

std::size_t lcb_state::cleanup(update_report& report) {
    std::size_t removed_total = 0;
    do {
        ++w_;
        const auto expired = [this](const counted& c) { return c.f + c.delta <= w_; };
        for (auto it = activities_.begin(); it != activities_.end();) {
            if (expired(it->second)) {
                it = activities_.erase(it);
                ++report.evicted_map_entries;
                ++removed_total;
            } else {
                ++it;
            }
        }
        for (auto it = relations_.begin(); it != relations_.end();) {
            if (expired(it->second)) {
                it = relations_.erase(it);
                ++report.evicted_map_entries;
                ++removed_total;
            } else {
                ++it;
            }
        }
        for (auto it = cases_.begin(); it != cases_.end();) {
            if (expired(it->second.count)) {
                it = cases_.erase(it);
                ++report.evicted_cases;
                ++removed_total;
            } else {
                ++it;
            }
        }
    } while (removed_total == 0);
    return removed_total;
}

frequency_graph lcb_state::snapshot() const {
    frequency_graph g;
    for (const auto& [id, item] : activities_)
        g.nodes.emplace(std::string(names_.name_of(id)), item.f);
    for (const auto& [key, item] : relations_) {
        std::string source(names_.name_of(key.source));
        std::string target(names_.name_of(key.target));
        // A swept endpoint resurfaces with frequency 0 so the arc stays
        // anchored.
        g.nodes.try_emplace(source, 0);
        g.nodes.try_emplace(target, 0);
        g.arcs.emplace(std::make_pair(std::move(source), std::move(target)), item.f);
    }
    return g;
}

} // namespace streamdfg
