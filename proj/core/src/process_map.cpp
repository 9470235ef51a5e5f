#include "streamdfg/process_map.hpp"

#include <cassert>
#include <string>

namespace streamdfg {

process_map::process_map(std::uint64_t budget) : budget_(budget) {
    if (budget == 0) throw std::invalid_argument("process map budget must be positive");
}

process_map::process_map(const process_map& other)
    : names_(other.names_),
      nodes_(other.nodes_),
      arcs_(other.arcs_),
      out_(other.out_),
      in_(other.in_),
      budget_(other.budget_),
      next_seq_(other.next_seq_),
      listener_(nullptr) {}

process_map& process_map::operator=(const process_map& other) {
    if (this != &other) {
        names_ = other.names_;
        nodes_ = other.nodes_;
        arcs_ = other.arcs_;
        out_ = other.out_;
        in_ = other.in_;
        budget_ = other.budget_;
        next_seq_ = other.next_seq_;
        listener_ = nullptr;
    }
    return *this;
}

touch_result process_map::touch_activity(activity_id id, std::uint64_t idx) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) return touch_result::missing;
    const entry_stats before = it->second;
    it->second.frequency += 1;
    if (idx > it->second.last_seen_idx) it->second.last_seen_idx = idx;
    notify_update(element_ref::node(id), before, it->second);
    return touch_result::incremented;
}

touch_result process_map::touch_activity(std::string_view name, std::uint64_t idx) {
    auto id = names_.find(name);
    if (!id) return touch_result::missing;
    return touch_activity(*id, idx);
}

void process_map::insert_activity(activity_id id, std::uint64_t idx, std::uint64_t aging_credit) {
    if (size() >= budget_)
        throw budget_violation("activity insertion into a full map (budget " +
                               std::to_string(budget_) + "); evict first");
    auto [it, inserted] = nodes_.try_emplace(id);
    if (!inserted)
        throw std::logic_error("insert_activity: activity already present");
    it->second = entry_stats{1, idx, aging_credit, next_seq_++};
    notify_insert(element_ref::node(id), it->second);
}

void process_map::insert_activity(std::string_view name, std::uint64_t idx,
                                  std::uint64_t aging_credit) {
    insert_activity(intern(name), idx, aging_credit);
}

arc_update process_map::touch_or_insert_arc(activity_id source, activity_id target,
                                            std::uint64_t idx, std::uint64_t aging_credit) {
    if (nodes_.count(source) == 0 || nodes_.count(target) == 0)
        throw dangling_endpoint("arc endpoint not present in the node set");
    const arc_key key{source, target};
    auto it = arcs_.find(key);
    if (it != arcs_.end()) {
        const entry_stats before = it->second;
        it->second.frequency += 1;
        if (idx > it->second.last_seen_idx) it->second.last_seen_idx = idx;
        notify_update(element_ref::arc(key), before, it->second);
        return arc_update::incremented;
    }
    if (size() >= budget_) return arc_update::needs_room;
    entry_stats stats{1, idx, aging_credit, next_seq_++};
    arcs_.emplace(key, stats);
    out_[source].insert(target);
    in_[target].insert(source);
    notify_insert(element_ref::arc(key), stats);
    return arc_update::inserted;
}

arc_update process_map::touch_or_insert_arc(std::string_view source, std::string_view target,
                                            std::uint64_t idx, std::uint64_t aging_credit) {
    auto s = names_.find(source);
    auto t = names_.find(target);
    if (!s || !t) throw dangling_endpoint("arc endpoint not present in the node set");
    return touch_or_insert_arc(*s, *t, idx, aging_credit);
}

void process_map::erase_arc_entry(arc_key key, std::vector<removed_element>* removed) {
    auto it = arcs_.find(key);
    assert(it != arcs_.end());
    const entry_stats stats = it->second;
    arcs_.erase(it);
    auto out_it = out_.find(key.source);
    if (out_it != out_.end()) {
        out_it->second.erase(key.target);
        if (out_it->second.empty()) out_.erase(out_it);
    }
    auto in_it = in_.find(key.target);
    if (in_it != in_.end()) {
        in_it->second.erase(key.source);
        if (in_it->second.empty()) in_.erase(in_it);
    }
    if (removed) removed->push_back({element_ref::arc(key), stats});
    notify_remove(element_ref::arc(key), stats);
}

std::size_t process_map::remove_node_cascade(activity_id id, std::vector<removed_element>* removed) {
    // Collect incident arcs first; a self-loop appears in both adjacency
    // sets and must be removed once.
    std::vector<arc_key> incident;
    if (auto it = out_.find(id); it != out_.end())
        for (activity_id t : it->second) incident.push_back({id, t});
    if (auto it = in_.find(id); it != in_.end())
        for (activity_id s : it->second)
            if (s != id) incident.push_back({s, id});

    for (arc_key key : incident) erase_arc_entry(key, removed);

    auto node_it = nodes_.find(id);
    const entry_stats stats = node_it->second;
    nodes_.erase(node_it);
    if (removed) removed->push_back({element_ref::node(id), stats});
    notify_remove(element_ref::node(id), stats);
    return incident.size() + 1;
}

std::size_t process_map::remove_element(element_ref victim, std::vector<removed_element>* removed) {
    if (victim.kind == element_kind::arc) {
        if (arcs_.count(victim.as_arc()) == 0)
            throw element_not_found("arc to remove is not present");
        erase_arc_entry(victim.as_arc(), removed);
        return 1;
    }
    if (nodes_.count(victim.id) == 0)
        throw element_not_found("activity to remove is not present");
    return remove_node_cascade(victim.id, removed);
}

const entry_stats* process_map::find_node(activity_id id) const {
    auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : &it->second;
}

const entry_stats* process_map::find_node(std::string_view name) const {
    auto id = names_.find(name);
    return id ? find_node(*id) : nullptr;
}

const entry_stats* process_map::find_arc(arc_key key) const {
    auto it = arcs_.find(key);
    return it == arcs_.end() ? nullptr : &it->second;
}

const entry_stats* process_map::find_arc(std::string_view source, std::string_view target) const {
    auto s = names_.find(source);
    auto t = names_.find(target);
    if (!s || !t) return nullptr;
    return find_arc({*s, *t});
}

void process_map::validate() const {
    if (size() > budget_)
        throw std::logic_error("budget exceeded: " + std::to_string(size()) + " > " +
                               std::to_string(budget_));
    std::size_t adjacency_arcs = 0;
    for (const auto& [source, targets] : out_) adjacency_arcs += targets.size();
    if (adjacency_arcs != arcs_.size())
        throw std::logic_error("adjacency out-sets disagree with the arc table");
    adjacency_arcs = 0;
    for (const auto& [target, sources] : in_) adjacency_arcs += sources.size();
    if (adjacency_arcs != arcs_.size())
        throw std::logic_error("adjacency in-sets disagree with the arc table");
    for (const auto& [key, stats] : arcs_) {
        if (nodes_.count(key.source) == 0 || nodes_.count(key.target) == 0)
            throw std::logic_error("dangling arc endpoint");
        if (stats.frequency == 0) throw std::logic_error("arc with zero frequency");
        auto out_it = out_.find(key.source);
        if (out_it == out_.end() || out_it->second.count(key.target) == 0)
            throw std::logic_error("arc missing from out adjacency");
        auto in_it = in_.find(key.target);
        if (in_it == in_.end() || in_it->second.count(key.source) == 0)
            throw std::logic_error("arc missing from in adjacency");
    }
    for (const auto& [id, stats] : nodes_)
        if (stats.frequency == 0) throw std::logic_error("node with zero frequency");
}

std::uint64_t lossless_budget(std::uint64_t n_activities) {
    if (n_activities == 0)
        throw std::invalid_argument("activity count must be positive");
    return n_activities * (n_activities + 1) / 2 + n_activities;
}

std::uint64_t lossless_budget_directed(std::uint64_t n_activities) {
    if (n_activities == 0)
        throw std::invalid_argument("activity count must be positive");
    return n_activities * n_activities + n_activities;
}

} // namespace streamdfg
