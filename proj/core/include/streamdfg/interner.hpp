#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace streamdfg {

using activity_id = std::uint32_t;

/// Transparent hashing so string_view lookups avoid temporary std::string.
struct string_hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
        return std::hash<std::string_view>{}(s);
    }
};

/// Bidirectional activity-name table. Ids are dense, assigned in first-seen
/// order, and never recycled: an activity keeps its id across evictions.
class interner {
public:
    activity_id intern(std::string_view name) {
        auto it = ids_.find(name);
        if (it != ids_.end()) return it->second;
        const activity_id id = static_cast<activity_id>(names_.size());
        names_.emplace_back(name);
        ids_.emplace(names_.back(), id);
        return id;
    }

    std::optional<activity_id> find(std::string_view name) const {
        auto it = ids_.find(name);
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    std::string_view name_of(activity_id id) const { return names_.at(id); }

    std::size_t size() const noexcept { return names_.size(); }

    interner() = default;
    interner(const interner& other) : names_(other.names_) { rebuild_index(); }
    interner& operator=(const interner& other) {
        if (this != &other) {
            names_ = other.names_;
            rebuild_index();
        }
        return *this;
    }
    interner(interner&&) = default;
    interner& operator=(interner&&) = default;

private:
    void rebuild_index() {
        ids_.clear();
        for (activity_id id = 0; id < names_.size(); ++id) ids_.emplace(names_[id], id);
    }

    // deque keeps string addresses stable; the index views point into it
    std::deque<std::string> names_;
    std::unordered_map<std::string_view, activity_id> ids_;
};

} // namespace streamdfg
