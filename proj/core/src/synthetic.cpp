#include "streamdfg/synthetic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "streamdfg/interner.hpp"

namespace streamdfg {

namespace {

// Uniform draw in [0, n) by rejection, so results depend only on the raw
// engine sequence and stay identical across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t raw;
    do {
        raw = rng();
    } while (raw >= limit);
    return raw % n;
}

// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

void validate(const synthetic_model& model) {
    const std::size_t n = model.activity_names.size();
    if (n == 0) throw std::invalid_argument("model needs at least one activity");
    if (model.interleaving == 0)
        throw std::invalid_argument("interleaving degree must be positive");
    if (model.weights.size() != n + 2)
        throw std::invalid_argument("weight matrix must have one row per state");
    for (std::size_t i = 0; i < model.weights.size(); ++i) {
        const auto& row = model.weights[i];
        if (row.size() != n + 2)
            throw std::invalid_argument("weight matrix must be square over the states");
        double total = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double w = row[j];
            if (!(w >= 0.0) || !std::isfinite(w))
                throw std::invalid_argument("weights must be finite and non-negative");
            if (j == 0 && w != 0.0)
                throw std::invalid_argument("no state may step back to the virtual start");
            total += w;
        }
        if (i <= n && total <= 0.0)
            throw std::invalid_argument("every non-end state needs outgoing weight");
    }
    if (model.weights[0][n + 1] != 0.0)
        throw std::invalid_argument("a case may not end before its first event");
    if (model.sink_activity) {
        if (model.sink_activity->empty())
            throw std::invalid_argument("sink activity name must be non-empty");
        for (const auto& name : model.activity_names)
            if (name == *model.sink_activity)
                throw std::invalid_argument("sink activity collides with a model activity");
    }
}

synthetic_model skewed_model(std::uint32_t n_activities, std::uint64_t seed, double skew,
                             double mean_trace_len, std::uint32_t interleaving,
                             bool with_sink) {
    if (mean_trace_len <= 1.0)
        throw std::invalid_argument("mean trace length must exceed 1");
    synthetic_model model;
    model.seed = seed;
    model.interleaving = interleaving;
    model.activity_names.reserve(n_activities);
    for (std::uint32_t i = 1; i <= n_activities; ++i)
        model.activity_names.push_back("a" + std::to_string(i));
    if (with_sink) model.sink_activity = "END";

    const std::size_t states = n_activities + 2;
    model.weights.assign(states, std::vector<double>(states, 0.0));
    for (std::uint32_t from = 0; from <= n_activities; ++from) {
        auto& row = model.weights[from];
        double activity_mass = 0.0;
        for (std::uint32_t to = 1; to <= n_activities; ++to) {
            // Rotate the preference order so each state favors a successor
            // of its own; ranks follow a Zipf-like decay.
            const std::uint32_t rank = (to - 1 + n_activities - from % n_activities) % n_activities;
            row[to] = 1.0 / std::pow(static_cast<double>(rank + 1), skew);
            activity_mass += row[to];
        }
        // One more state transition happens per emitted event; the walk ends
        // with probability p each step after the first, so the mean length
        // is 1/p. Start rows never end.
        if (from != 0)
            row[n_activities + 1] = activity_mass / (mean_trace_len - 1.0);
    }
    validate(model);
    return model;
}

synthetic_model uniform_model(std::uint32_t n_activities, std::uint64_t seed,
                              double mean_trace_len, std::uint32_t interleaving) {
    if (mean_trace_len <= 1.0)
        throw std::invalid_argument("mean trace length must exceed 1");
    synthetic_model model;
    model.seed = seed;
    model.interleaving = interleaving;
    model.activity_names.reserve(n_activities);
    for (std::uint32_t i = 1; i <= n_activities; ++i)
        model.activity_names.push_back("a" + std::to_string(i));

    const std::size_t states = n_activities + 2;
    model.weights.assign(states, std::vector<double>(states, 0.0));
    for (std::uint32_t from = 0; from <= n_activities; ++from) {
        auto& row = model.weights[from];
        for (std::uint32_t to = 1; to <= n_activities; ++to) row[to] = 1.0;
        if (from != 0)
            row[n_activities + 1] = static_cast<double>(n_activities) / (mean_trace_len - 1.0);
    }
    validate(model);
    return model;
}

synthetic_source::synthetic_source(synthetic_model model, std::uint64_t n_events)
    : model_(std::move(model)), rng_(model_.seed), remaining_(n_events) {
    validate(model_);
    active_.reserve(model_.interleaving);
    while (active_.size() < model_.interleaving) open_new_case();
}

void synthetic_source::open_new_case() {
    ++next_case_number_;
    active_.push_back({"c" + std::to_string(next_case_number_), 0});
}

std::uint32_t synthetic_source::sample_successor(std::uint32_t state) {
    const auto& row = model_.weights[state];
    double total = 0.0;
    for (double w : row) total += w;
    const double needle = unit(rng_) * total;
    double cumulative = 0.0;
    for (std::uint32_t j = 0; j < row.size(); ++j) {
        cumulative += row[j];
        if (needle < cumulative) return j;
    }
    // Rounding can leave the needle marginally past the last positive bin.
    for (std::uint32_t j = static_cast<std::uint32_t>(row.size()); j-- > 0;)
        if (row[j] > 0.0) return j;
    throw std::logic_error("weight row has no positive entry");
}

std::optional<event> synthetic_source::next() {
    if (remaining_ == 0) return std::nullopt;
    const auto end_state = static_cast<std::uint32_t>(model_.activity_names.size()) + 1;
    for (;;) {
        const std::uint64_t pick = bounded(rng_, active_.size());
        open_case& walker = active_[pick];
        const std::uint32_t successor = sample_successor(walker.state);
        if (successor == end_state) {
            if (model_.sink_activity) {
                event ev{walker.id, *model_.sink_activity, clock_ms_++};
                active_[pick] = active_.back();
                active_.pop_back();
                open_new_case();
                --remaining_;
                return ev;
            }
            // Closing without a sink emits nothing; replace the case and
            // draw again. Fresh cases cannot close immediately, so this
            // terminates.
            active_[pick] = active_.back();
            active_.pop_back();
            open_new_case();
            continue;
        }
        event ev{walker.id, model_.activity_names[successor - 1], clock_ms_++};
        walker.state = successor;
        --remaining_;
        return ev;
    }
}

generated_log generate(const synthetic_model& model, std::uint64_t n_events) {
    generated_log log;
    log.events.reserve(n_events);
    std::unordered_map<std::string, std::string, string_hash, std::equal_to<>> last;
    synthetic_source source(model, n_events);
    while (auto ev = source.next()) {
        ++log.exact.nodes[ev->activity];
        if (auto it = last.find(ev->case_id); it != last.end()) {
            ++log.exact.arcs[{it->second, ev->activity}];
            it->second = ev->activity;
        } else {
            last.emplace(ev->case_id, ev->activity);
        }
        log.events.push_back(std::move(*ev));
    }
    return log;
}

} // namespace streamdfg
