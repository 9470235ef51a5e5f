// Command-line front end: mine an event stream into a budgeted process map,
// evaluate a snapshot against the offline reference, sweep budgets into a
// benchmark CSV, export snapshots to DOT/JSON, and generate synthetic logs.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "streamdfg/bench.hpp"
#include "streamdfg/eval.hpp"
#include "streamdfg/event_io.hpp"
#include "streamdfg/graph_io.hpp"
#include "streamdfg/lcb.hpp"
#include "streamdfg/miner.hpp"
#include "streamdfg/sources.hpp"
#include "streamdfg/synthetic.hpp"

namespace {

using namespace streamdfg;

// Budgets are plain element counts, or helpers computed from an activity
// count: lossless<N> (undirected pair bound) and directed<N> (directed
// bound, the one that guarantees eviction-free runs).
std::uint64_t parse_count(const std::string& text) {
    std::size_t consumed = 0;
    const std::uint64_t value = std::stoull(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument(text);
    return value;
}

std::uint64_t parse_budget(const std::string& text) {
    try {
        if (text.starts_with("lossless")) return lossless_budget(parse_count(text.substr(8)));
        if (text.starts_with("directed"))
            return lossless_budget_directed(parse_count(text.substr(8)));
        return parse_count(text);
    } catch (const std::exception&) {
        throw CLI::ValidationError("budget", "expected <n>, lossless<n>, or directed<n>: " +
                                                 text);
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

parse_error_handler stderr_reporter(std::size_t& skipped) {
    return [&skipped](const parse_error& err) {
        ++skipped;
        std::cerr << "skipping line " << err.line() << ", column " << err.column() << ": "
                  << err.what() << "\n";
    };
}

struct source_options {
    std::string source = "file";
    std::string input;
    std::string order = "by-timestamp";
    bool strict = false;
};

std::unique_ptr<event_source> open_source(const source_options& opts,
                                          const parse_error_handler& on_error) {
    const replay_order order =
        opts.order == "as-is" ? replay_order::as_is : replay_order::by_timestamp;
    if (opts.source == "file") {
        if (opts.input.empty())
            throw std::runtime_error("--source file requires --input <path>");
        return std::make_unique<file_replay_source>(opts.input, order, opts.strict, on_error);
    }
    if (opts.source == "stdin") {
        if (order == replay_order::by_timestamp && opts.order != "by-timestamp")
            throw std::runtime_error("stdin cannot be replayed by timestamp");
        return std::make_unique<line_stream_source>(std::cin, opts.strict, on_error);
    }
    if (opts.source.starts_with("tcp:")) {
        const std::string endpoint = opts.source.substr(4);
        const std::size_t colon = endpoint.rfind(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == endpoint.size())
            throw std::runtime_error("expected tcp:<host:port>, got " + opts.source);
        std::string host = endpoint.substr(0, colon);
        if (host.size() >= 2 && host.front() == '[' && host.back() == ']')
            host = host.substr(1, host.size() - 2);
        const int port = std::stoi(endpoint.substr(colon + 1));
        if (port <= 0 || port > 65535)
            throw std::runtime_error("port out of range in " + opts.source);
        return std::make_unique<tcp_source>(host, static_cast<std::uint16_t>(port),
                                            opts.strict, on_error);
    }
    throw std::runtime_error("unknown source (expected file, stdin, or tcp:<host:port>): " +
                             opts.source);
}

// Unbounded sources replay as-is by definition; an explicit request to sort
// them cannot be honored.
void check_order(const source_options& opts, bool order_given) {
    if (opts.source != "file" && order_given && opts.order == "by-timestamp")
        throw std::runtime_error("--order by-timestamp requires --source file");
}

void trace_line(std::ostream& out, std::uint64_t idx, const event& ev,
                const update_report& report) {
    out << "idx=" << idx << " case=" << ev.case_id << " activity=" << ev.activity;
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

struct mine_options {
    source_options source;
    std::string policy = "lfu";
    std::string bpm;
    std::string brc = "1000";
    std::vector<std::string> end_activities;
    std::optional<std::int64_t> case_ttl_ms;
    std::uint64_t snapshot_every = 0;
    std::string out = "process_map";
    std::string trace_path;
};

int run_mine(const mine_options& opts) {
    const technique tech = technique_from_string(opts.policy);
    const std::uint64_t map_budget = parse_budget(opts.bpm);

    std::size_t skipped = 0;
    auto source = open_source(opts.source, stderr_reporter(skipped));

    std::ofstream trace_file;
    std::ostream* trace = nullptr;
    if (!opts.trace_path.empty()) {
        trace_file.open(opts.trace_path, std::ios::binary);
        if (!trace_file) throw std::runtime_error("cannot open for writing: " + opts.trace_path);
        trace = &trace_file;
    }

    std::uint64_t processed = 0;
    std::uint64_t peak_words = 0;

    auto write_snapshots = [&](const snapshot_doc& doc, bool final) {
        const std::string stem =
            final ? opts.out : opts.out + "." + std::to_string(processed);
        write_file(stem + ".json", to_json(doc));
        write_file(stem + ".dot", to_dot(doc, doc.has_start_end));
    };

    if (tech == technique::lcb) {
        // The baseline has one budget for everything; --bpm carries it and
        // --brc does not apply.
        lcb_state state(map_budget);
        while (auto ev = source->next()) {
            const update_report report = state.observe(*ev);
            ++processed;
            peak_words = std::max(peak_words,
                                  memory_words(tech, state.activity_count(),
                                               state.relation_count(), state.case_count()));
            if (trace) trace_line(*trace, processed, *ev, report);
            if (opts.snapshot_every && processed % opts.snapshot_every == 0) {
                snapshot_doc doc;
                doc.technique = to_string(tech);
                doc.map_budget = map_budget;
                doc.events_processed = processed;
                doc.open_cases = state.case_count();
                doc.graph = state.snapshot();
                write_snapshots(doc, false);
            }
        }
        snapshot_doc doc;
        doc.technique = to_string(tech);
        doc.map_budget = map_budget;
        doc.events_processed = processed;
        doc.open_cases = state.case_count();
        doc.graph = state.snapshot();
        write_snapshots(doc, true);
        std::cout << "events=" << processed << " skipped=" << skipped
                  << " nodes=" << doc.graph.nodes.size() << " arcs=" << doc.graph.arcs.size()
                  << " open_cases=" << doc.open_cases << " peak_memory_words=" << peak_words
                  << "\n";
        return 0;
    }

    miner_config config;
    config.policy = policy_of(tech);
    config.map_budget = map_budget;
    config.case_budget = parse_budget(opts.brc);
    config.end_activities = opts.end_activities;
    config.case_ttl_ms = opts.case_ttl_ms;
    stream_miner miner(config);
    const std::uint64_t ttl_extra = config.case_ttl_ms ? 1 : 0;

    while (auto ev = source->next()) {
        const update_report report = miner.observe(*ev);
        ++processed;
        const std::uint64_t open = miner.cases().size();
        peak_words = std::max(peak_words,
                              memory_words(tech, miner.map().node_count(),
                                           miner.map().arc_count(), open) +
                                  ttl_extra * open);
        if (trace) trace_line(*trace, processed, *ev, report);
        if (opts.snapshot_every && processed % opts.snapshot_every == 0)
            write_snapshots(to_snapshot_doc(miner.snapshot()), false);
    }
    const snapshot_doc doc = to_snapshot_doc(miner.snapshot());
    write_snapshots(doc, true);
    std::cout << "events=" << processed << " skipped=" << skipped
              << " nodes=" << doc.graph.nodes.size() << " arcs=" << doc.graph.arcs.size()
              << " open_cases=" << doc.open_cases << " peak_memory_words=" << peak_words
              << "\n";
    return 0;
}

struct evaluate_options {
    std::string log;
    std::string snapshot;
    bool strict = false;
};

int run_evaluate(const evaluate_options& opts) {
    std::size_t skipped = 0;
    const std::vector<event> events =
        read_log_file(opts.log, opts.strict, stderr_reporter(skipped));
    const frequency_graph oracle = to_frequency_graph(offline_dfg(events));

    std::ifstream in(opts.snapshot, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot: " + opts.snapshot);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const snapshot_doc doc = snapshot_from_json(text);

    eval_report report;
    report.tech = technique_from_string(doc.technique);
    report.budget = doc.map_budget;
    report.events_processed = doc.events_processed;
    report.acc = accuracy(oracle, doc.graph);
    // A snapshot is one point in time; its words are that state's, not a
    // peak over a run.
    report.peak_memory_words = memory_words(report.tech, doc.graph.nodes.size(),
                                            doc.graph.arcs.size(), doc.open_cases);
    report.peak_memory_bytes = report.peak_memory_words * bytes_per_word;

    std::cout << to_json(report);
    std::cout << bench_csv_header << "\n" << to_csv_row(report) << "\n";
    return 0;
}

struct bench_options {
    std::string log;
    std::vector<std::string> techniques;
    std::vector<std::string> budgets;
    std::string brc = "0";
    std::vector<std::string> end_activities;
    std::optional<std::int64_t> case_ttl_ms;
    unsigned jobs = 1;
    bool no_timing = false;
    bool strict = false;
    std::string out;
};

int run_bench_cmd(const bench_options& opts) {
    std::size_t skipped = 0;
    const std::vector<event> events =
        read_log_file(opts.log, opts.strict, stderr_reporter(skipped));
    const frequency_graph oracle = to_frequency_graph(offline_dfg(events));

    bench_config config;
    if (!opts.techniques.empty()) {
        config.techniques.clear();
        for (const auto& name : opts.techniques)
            config.techniques.push_back(technique_from_string(name));
    }
    for (const auto& text : opts.budgets) {
        if (text == "auto") continue; // auto == empty budget list
        config.budgets.push_back(parse_budget(text));
    }
    config.case_budget = parse_budget(opts.brc);
    config.end_activities = opts.end_activities;
    config.case_ttl_ms = opts.case_ttl_ms;
    config.measure_time = !opts.no_timing;
    config.jobs = opts.jobs;

    const auto rows = run_bench(events, oracle, config);
    for (const auto& row : rows)
        if (row.failed)
            std::cerr << "point " << to_string(row.report.tech) << "," << row.report.budget
                      << " failed: " << row.error << "\n";

    const std::string csv = to_csv(rows);
    if (opts.out.empty())
        std::cout << csv;
    else
        write_file(opts.out, csv);
    return 0;
}

struct export_options {
    std::string snapshot;
    std::string format = "dot";
    bool with_start_end = false;
    std::string out;
};

int run_export(const export_options& opts) {
    std::ifstream in(opts.snapshot, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot: " + opts.snapshot);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const snapshot_doc doc = snapshot_from_json(text);

    std::string rendered;
    if (opts.format == "dot")
        rendered = to_dot(doc, opts.with_start_end);
    else if (opts.format == "json")
        rendered = to_json(doc);
    else
        throw std::runtime_error("export format must be dot or json, got " + opts.format);

    if (opts.out.empty())
        std::cout << rendered;
    else
        write_file(opts.out, rendered);
    return 0;
}

struct generate_options {
    std::uint32_t activities = 10;
    std::uint64_t events = 10000;
    std::uint64_t seed = 1;
    std::uint32_t interleaving = 20;
    bool uniform = false;
    double skew = 1.6;
    double mean_trace_len = 10.0;
    bool with_sink = false;
    std::string out;
    std::string truth;
};

int run_generate(const generate_options& opts) {
    const synthetic_model model =
        opts.uniform
            ? uniform_model(opts.activities, opts.seed, opts.mean_trace_len,
                            opts.interleaving)
            : skewed_model(opts.activities, opts.seed, opts.skew, opts.mean_trace_len,
                           opts.interleaving, opts.with_sink);
    const generated_log log = generate(model, opts.events);

    std::string csv(csv_header);
    csv.push_back('\n');
    for (const event& ev : log.events) {
        csv += format_event(ev);
        csv.push_back('\n');
    }
    if (opts.out.empty())
        std::cout << csv;
    else
        write_file(opts.out, csv);

    if (!opts.truth.empty()) {
        snapshot_doc doc;
        doc.technique = "offline";
        doc.events_processed = log.events.size();
        doc.graph = log.exact;
        write_file(opts.truth, to_json(doc));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounded-memory process-map mining over event streams"};
    app.require_subcommand(1);

    mine_options mine;
    auto* mine_cmd = app.add_subcommand("mine", "Mine a stream into a process map");
    mine_cmd->add_option("--source", mine.source.source,
                         "Event source: file, stdin, or tcp:<host:port>");
    mine_cmd->add_option("--input", mine.source.input, "Log file for --source file");
    auto* order_opt = mine_cmd->add_option("--order", mine.source.order,
                                           "Replay order: as-is or by-timestamp")
                          ->check(CLI::IsMember({"as-is", "by-timestamp"}));
    mine_cmd->add_flag("--strict", mine.source.strict,
                       "Fail on malformed lines instead of skipping them");
    mine_cmd->add_option("--policy", mine.policy, "lru, lfu, lfu-da, or lcb")
        ->check(CLI::IsMember({"lru", "lfu", "lfu-da", "lcb"}));
    mine_cmd->add_option("--bpm", mine.bpm,
                         "Process-map budget (elements; or lossless<n>/directed<n>). "
                         "For lcb, the shared item budget")
        ->required();
    mine_cmd->add_option("--brc", mine.brc, "Running-case budget (ignored for lcb)");
    mine_cmd->add_option("--end-activity", mine.end_activities,
                         "Activity that ends its case (repeatable)");
    mine_cmd->add_option("--case-ttl", mine.case_ttl_ms,
                         "Close a case when its span exceeds this many ms");
    mine_cmd->add_option("--snapshot-every", mine.snapshot_every,
                         "Write <out>.<n>.json/.dot every n events");
    mine_cmd->add_option("--out", mine.out, "Output path stem (default process_map)");
    mine_cmd->add_option("--trace", mine.trace_path, "Write a per-event trace log here");

    evaluate_options evaluate;
    auto* evaluate_cmd =
        app.add_subcommand("evaluate", "Score a snapshot against the offline reference");
    evaluate_cmd->add_option("--log", evaluate.log, "Event log the reference is built from")
        ->required();
    evaluate_cmd->add_option("--snapshot", evaluate.snapshot, "Snapshot JSON to score")
        ->required();
    evaluate_cmd->add_flag("--strict", evaluate.strict,
                           "Fail on malformed log lines instead of skipping them");

    bench_options bench;
    auto* bench_cmd =
        app.add_subcommand("bench", "Sweep budgets and write accuracy/memory/time CSV");
    bench_cmd->add_option("--log", bench.log, "Event log to replay")->required();
    bench_cmd->add_option("--technique", bench.techniques,
                          "Technique to measure (repeatable; default all)")
        ->check(CLI::IsMember({"lcb", "lru", "lfu", "lfu-da"}));
    bench_cmd->add_option("--budget", bench.budgets,
                          "Budget point (repeatable), or auto for a geometric sweep");
    bench_cmd->add_option("--brc", bench.brc,
                          "Running-case budget (0 = distinct cases in the log)");
    bench_cmd->add_option("--end-activity", bench.end_activities,
                          "Activity that ends its case (repeatable)");
    bench_cmd->add_option("--case-ttl", bench.case_ttl_ms,
                          "Close a case when its span exceeds this many ms");
    bench_cmd->add_option("--jobs", bench.jobs, "Points measured in parallel");
    bench_cmd->add_flag("--no-timing", bench.no_timing,
                        "Skip wall-clock timing; output depends only on inputs");
    bench_cmd->add_flag("--strict", bench.strict,
                        "Fail on malformed log lines instead of skipping them");
    bench_cmd->add_option("--out", bench.out, "CSV path (default standard output)");

    export_options exp;
    auto* export_cmd = app.add_subcommand("export", "Render a snapshot as DOT or JSON");
    export_cmd->add_option("--snapshot", exp.snapshot, "Snapshot JSON to render")->required();
    export_cmd->add_option("--format", exp.format, "dot or json")
        ->check(CLI::IsMember({"dot", "json"}));
    export_cmd->add_flag("--with-start-end", exp.with_start_end,
                         "Add virtual start/end nodes from recorded case counts");
    export_cmd->add_option("--out", exp.out, "Output path (default standard output)");

    generate_options gen;
    auto* generate_cmd =
        app.add_subcommand("generate", "Produce a synthetic log (and optional ground truth)");
    generate_cmd->add_option("--activities", gen.activities, "Distinct activities");
    generate_cmd->add_option("--events", gen.events, "Events to emit");
    generate_cmd->add_option("--seed", gen.seed, "Generator seed");
    generate_cmd->add_option("--interleaving", gen.interleaving, "Concurrent open cases");
    generate_cmd->add_flag("--uniform", gen.uniform,
                           "Uniform successor weights instead of skewed");
    generate_cmd->add_option("--skew", gen.skew, "Zipf-like skew exponent");
    generate_cmd->add_option("--mean-trace-len", gen.mean_trace_len,
                             "Approximate mean events per case");
    generate_cmd->add_flag("--with-sink", gen.with_sink,
                           "End every case with an END event");
    generate_cmd->add_option("--out", gen.out, "Log path (default standard output)");
    generate_cmd->add_option("--truth", gen.truth, "Also write the exact graph JSON here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (mine_cmd->parsed()) {
            check_order(mine.source, order_opt->count() > 0);
            return run_mine(mine);
        }
        if (evaluate_cmd->parsed()) return run_evaluate(evaluate);
        if (bench_cmd->parsed()) return run_bench_cmd(bench);
        if (export_cmd->parsed()) return run_export(exp);
        if (generate_cmd->parsed()) return run_generate(gen);
    } catch (const zero_total_frequency& err) {
        std::cerr << "error: the reference graph has no relations to compare against ("
                  << err.what() << ")\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 0;
}
