#include "streamdfg/graph_io.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace streamdfg {

namespace {

using nlohmann::json;

json counts_to_json(const std::vector<std::pair<std::string, std::uint64_t>>& counts) {
    json object = json::object();
    for (const auto& [name, n] : counts) object[name] = n;
    return object;
}

std::vector<std::pair<std::string, std::uint64_t>> counts_from_json(const json& object) {
    std::vector<std::pair<std::string, std::uint64_t>> counts;
    counts.reserve(object.size());
    for (const auto& [name, n] : object.items())
        counts.emplace_back(name, n.get<std::uint64_t>());
    std::sort(counts.begin(), counts.end());
    return counts;
}

// Graphviz double-quoted string escaping.
std::string dot_escape(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

snapshot_doc to_snapshot_doc(const miner_snapshot& snap) {
    snapshot_doc doc;
    doc.technique = to_string(technique_of(snap.policy));
    doc.map_budget = snap.map_budget;
    doc.case_budget = snap.case_budget;
    doc.events_processed = snap.events_processed;
    doc.open_cases = snap.open_cases;
    doc.graph = to_frequency_graph(snap.map);
    doc.has_start_end = !snap.start_counts.empty() || !snap.end_counts.empty();
    doc.start_counts = snap.start_counts;
    doc.end_counts = snap.end_counts;
    return doc;
}

std::string to_json(const snapshot_doc& doc) {
    json root;
    root["technique"] = doc.technique;
    root["map_budget"] = doc.map_budget;
    root["case_budget"] = doc.case_budget;
    root["events_processed"] = doc.events_processed;
    root["open_cases"] = doc.open_cases;

    json nodes = json::object();
    for (const auto& [name, freq] : doc.graph.nodes) nodes[name] = freq;
    root["nodes"] = nodes;

    json arcs = json::array();
    for (const auto& [key, freq] : doc.graph.arcs)
        arcs.push_back({{"source", key.first}, {"target", key.second}, {"frequency", freq}});
    root["arcs"] = arcs;

    if (doc.has_start_end) {
        root["start_counts"] = counts_to_json(doc.start_counts);
        root["end_counts"] = counts_to_json(doc.end_counts);
    }
    return root.dump(2) + "\n";
}

snapshot_doc snapshot_from_json(const std::string& text) {
    try {
        const json root = json::parse(text);
        snapshot_doc doc;
        doc.technique = root.at("technique").get<std::string>();
        doc.map_budget = root.at("map_budget").get<std::uint64_t>();
        doc.case_budget = root.at("case_budget").get<std::uint64_t>();
        doc.events_processed = root.at("events_processed").get<std::uint64_t>();
        doc.open_cases = root.at("open_cases").get<std::uint64_t>();
        for (const auto& [name, freq] : root.at("nodes").items())
            doc.graph.nodes.emplace(name, freq.get<std::uint64_t>());
        for (const auto& arc : root.at("arcs")) {
            auto key = std::make_pair(arc.at("source").get<std::string>(),
                                      arc.at("target").get<std::string>());
            doc.graph.arcs.emplace(std::move(key), arc.at("frequency").get<std::uint64_t>());
        }
        if (root.contains("start_counts")) {
            doc.has_start_end = true;
            doc.start_counts = counts_from_json(root.at("start_counts"));
            doc.end_counts = counts_from_json(root.at("end_counts"));
        }
        return doc;
    } catch (const json::exception& err) {
        throw std::runtime_error(std::string("malformed snapshot document: ") + err.what());
    }
}

std::string to_json(const eval_report& report) {
    json root;
    root["technique"] = to_string(report.tech);
    root["budget"] = report.budget;
    root["loss"] = report.acc.loss;
    root["total_frequency"] = report.acc.total_frequency;
    root["accuracy"] = report.acc.accuracy;
    root["raw_accuracy"] = report.acc.raw_accuracy;
    root["peak_memory_words"] = report.peak_memory_words;
    root["peak_memory_bytes"] = report.peak_memory_bytes;
    root["ms_per_event"] = report.ms_per_event;
    root["events_processed"] = report.events_processed;
    return root.dump(2) + "\n";
}

std::string to_dot(const snapshot_doc& doc, bool with_start_end) {
    if (with_start_end && !doc.has_start_end)
        throw std::invalid_argument(
            "snapshot carries no case start/end counts; mine with end activities "
            "configured to record them");

    std::uint64_t max_freq = 0;
    for (const auto& [key, freq] : doc.graph.arcs) max_freq = std::max(max_freq, freq);

    std::string out;
    out += "digraph process_map {\n";
    out += "  rankdir=LR;\n";
    out += "  node [shape=box, style=rounded];\n";
    for (const auto& [name, freq] : doc.graph.nodes) {
        out += "  \"" + dot_escape(name) + "\" [label=\"" + dot_escape(name) + " (" +
               std::to_string(freq) + ")\"];\n";
    }
    for (const auto& [key, freq] : doc.graph.arcs) {
        const double relative =
            max_freq == 0 ? 0.0
                          : static_cast<double>(freq) / static_cast<double>(max_freq);
        char penwidth[32];
        std::snprintf(penwidth, sizeof penwidth, "%.2f", 1.0 + 4.0 * relative);
        out += "  \"" + dot_escape(key.first) + "\" -> \"" + dot_escape(key.second) +
               "\" [label=\"" + std::to_string(freq) + "\", penwidth=" + penwidth + "];\n";
    }
    if (with_start_end) {
        out += "  __start [shape=circle, style=solid, label=\"start\"];\n";
        out += "  __end [shape=doublecircle, style=solid, label=\"end\"];\n";
        for (const auto& [name, n] : doc.start_counts)
            out += "  __start -> \"" + dot_escape(name) + "\" [label=\"" +
                   std::to_string(n) + "\", style=dashed];\n";
        for (const auto& [name, n] : doc.end_counts)
            out += "  \"" + dot_escape(name) + "\" -> __end [label=\"" +
                   std::to_string(n) + "\", style=dashed];\n";
    }
    out += "}\n";
    return out;
}

} // namespace streamdfg
