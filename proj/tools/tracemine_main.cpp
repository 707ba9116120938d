// Command-line front end: ingest | enumerate | count | sample | mine | bench.
// Every run writes a manifest with the full parameter set so results can be
// reproduced bit for bit.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tracemine/count.hpp"
#include "tracemine/dag.hpp"
#include "tracemine/dag_io.hpp"
#include "tracemine/enumerate.hpp"
#include "tracemine/errors.hpp"
#include "tracemine/events.hpp"
#include "tracemine/frequent.hpp"
#include "tracemine/sample.hpp"
#include "tracemine/synthetic.hpp"
#include "tracemine/trace_hash.hpp"

namespace {

using nlohmann::json;
using namespace tracemine;

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct ManifestWriter {
    json doc;
    std::string path;
    std::chrono::steady_clock::time_point started =
        std::chrono::steady_clock::now();

    ManifestWriter(const std::string& subcommand, std::string manifest_path)
        : path(std::move(manifest_path)) {
        doc["subcommand"] = subcommand;
        doc["parameters"] = json::object();
        doc["stats"] = json::object();
    }

    void write() {
        auto elapsed = std::chrono::steady_clock::now() - started;
        doc["elapsed_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot open '" + path + "' for writing");
        out << doc.dump(2) << "\n";
        if (!out) throw Error("write to '" + path + "' failed");
    }
};

struct IngestArgs {
    std::string input;
    std::string output = "out.dag";
    std::string manifest = "tracemine.manifest.json";
    double delta = 10.0;
    bool allow_zero_gap = false;
};

int cmd_ingest(const IngestArgs& a) {
    ManifestWriter manifest("ingest", a.manifest);
    manifest.doc["input"] = a.input;
    manifest.doc["output"] = a.output;
    manifest.doc["parameters"] = {{"delta", a.delta},
                                  {"allow_zero_gap", a.allow_zero_gap}};

    std::vector<EventRecord> events = parse_events(a.input);
    IngestStats stats;
    LabeledDag dag = build_event_dag(events, a.delta, a.allow_zero_gap, &stats);
    save_dag(dag, a.output);

    std::cout << "|V|=" << stats.vertex_count << " |E|=" << stats.edge_count
              << "\n";
    if (stats.delta_gap_warnings > 0) {
        std::cerr << "warning: " << stats.delta_gap_warnings
                  << " merged reading run(s) bridge a gap above delta\n";
    }
    manifest.doc["stats"] = {{"raw_events", stats.raw_events},
                             {"overlap_merges", stats.overlap_merges},
                             {"dedup_merges", stats.dedup_merges},
                             {"delta_gap_warnings", stats.delta_gap_warnings},
                             {"vertices", stats.vertex_count},
                             {"edges", stats.edge_count}};
    manifest.write();
    return 0;
}

struct EnumerateArgs {
    std::string input;
    std::string manifest = "tracemine.manifest.json";
    std::uint32_t m = 5;
    std::uint64_t budget = 100'000'000;
    bool hashed_output = false;
};

int cmd_enumerate(const EnumerateArgs& a) {
    ManifestWriter manifest("enumerate", a.manifest);
    manifest.doc["input"] = a.input;
    manifest.doc["parameters"] = {{"m", a.m},
                                  {"budget", a.budget},
                                  {"hashed_output", a.hashed_output}};

    LabeledDag dag = load_dag(a.input);
    TraceMultiset traces = exact_frequencies(dag, a.m, a.budget);
    TraceHasher hasher;
    for (const auto& [trace, count] : traces.counts) {
        if (a.hashed_output) {
            std::cout << hash_hex(hasher.hash(trace)) << '\t' << count << '\n';
        } else {
            std::cout << format_trace(dag, trace) << '\t' << count << '\n';
        }
    }
    std::cerr << "total=" << traces.total << " distinct=" << traces.counts.size()
              << "\n";
    manifest.doc["stats"] = {{"total", traces.total},
                             {"distinct", traces.counts.size()},
                             {"hash_base", hasher.base()}};
    manifest.write();
    return 0;
}

struct CountArgs {
    std::string input;
    std::string manifest = "tracemine.manifest.json";
    std::uint32_t m = 5;
    bool dump_counts = false;
};

int cmd_count(const CountArgs& a) {
    ManifestWriter manifest("count", a.manifest);
    manifest.doc["input"] = a.input;
    manifest.doc["parameters"] = {{"m", a.m}};

    LabeledDag dag = load_dag(a.input);
    PathCountTable table = count_traces(dag, a.m);
    std::uint64_t total = total_traces(table);
    std::cout << "total=" << total << "\n";
    if (a.dump_counts) dump_counts(table, std::cout);

    manifest.doc["stats"] = {{"total", total},
                             {"vertices", dag.vertex_count()},
                             {"edges", dag.edge_count()}};
    manifest.write();
    return 0;
}

struct SampleArgs {
    std::string input;
    std::string manifest = "tracemine.manifest.json";
    std::uint32_t m = 5;
    double epsilon = 0.1;
    double oversample_c = 10.0;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    bool hashed_output = false;
};

int cmd_sample(const SampleArgs& a) {
    ManifestWriter manifest("sample", a.manifest);
    manifest.doc["input"] = a.input;
    manifest.doc["parameters"] = {{"m", a.m},
                                  {"epsilon", a.epsilon},
                                  {"oversample_c", a.oversample_c},
                                  {"seed", a.seed},
                                  {"workers", a.workers},
                                  {"hashed_output", a.hashed_output}};

    LabeledDag dag = load_dag(a.input);
    PathCountTable table = count_traces(dag, a.m);
    std::uint64_t total = total_traces(table);

    SampleConfig cfg;
    cfg.epsilon = a.epsilon;
    cfg.oversample_c = a.oversample_c;
    cfg.m = a.m;
    cfg.seed = a.seed;
    cfg.p = choose_p(a.epsilon, a.oversample_c, total);

    SampleStats stats = sample_traces(
        dag, table, cfg,
        [&](std::span<const Label> trace, TraceHash h) {
            if (a.hashed_output) {
                std::cout << hash_hex(h) << '\n';
            } else {
                std::cout << format_trace(dag, trace) << '\n';
            }
        },
        a.workers);
    std::cout << "# samples: " << stats.emitted << "\n";

    json by_length = json::array();
    for (std::uint64_t c : stats.emitted_by_length) by_length.push_back(c);
    manifest.doc["stats"] = {{"total", total},
                             {"p", cfg.p},
                             {"emitted", stats.emitted},
                             {"roots_entered", stats.roots_entered},
                             {"emitted_by_length", by_length},
                             {"hash_base", TraceHasher(cfg.hash_seed).base()}};
    manifest.write();
    return 0;
}

struct MineArgs {
    std::string input;
    std::string manifest = "tracemine.manifest.json";
    std::uint32_t m = 5;
    double epsilon = 0.1;
    double oversample_c = 10.0;
    std::uint64_t seed = 1;
    VerifyMode mode = VerifyMode::same_seed;
    unsigned workers = 1;
};

int cmd_mine(const MineArgs& a) {
    ManifestWriter manifest("mine", a.manifest);
    const char* mode_name = a.mode == VerifyMode::same_seed ? "same-seed" : "fresh";
    manifest.doc["input"] = a.input;
    manifest.doc["parameters"] = {{"m", a.m},
                                  {"epsilon", a.epsilon},
                                  {"oversample_c", a.oversample_c},
                                  {"seed", a.seed},
                                  {"mode", mode_name},
                                  {"workers", a.workers}};

    LabeledDag dag = load_dag(a.input);
    MiningStats stats;
    CandidateReport report = mine_frequent(dag, a.m, a.epsilon, a.oversample_c,
                                           a.seed, a.mode, a.workers, &stats);

    std::cout << "trace\tsample_count\test_relative_frequency\n";
    for (const CandidateRow& row : report.rows) {
        std::cout << format_trace(dag, row.trace) << '\t' << row.sample_count
                  << '\t' << fmt_double(row.est_frequency) << '\n';
    }
    std::cerr << "{epsilon=" << fmt_double(a.epsilon)
              << ", C=" << fmt_double(a.oversample_c)
              << ", p=" << fmt_double(stats.p) << ", total=" << stats.total
              << ", sample_size=" << stats.pass1_sample_size
              << ", seed=" << a.seed << ", mode=" << mode_name << "}\n";

    manifest.doc["stats"] = {{"total", stats.total},
                             {"p", stats.p},
                             {"summary_capacity", stats.capacity},
                             {"pass1_sample_size", stats.pass1_sample_size},
                             {"pass2_sample_size", stats.pass2_sample_size},
                             {"candidates", stats.candidates},
                             {"reported", stats.reported},
                             {"peak_state_words", stats.peak_state_words}};
    manifest.write();
    return 0;
}

struct BenchArgs {
    std::string manifest = "tracemine.manifest.json";
    std::vector<double> deltas = {10.0};
    std::vector<std::uint32_t> ms = {5};
    std::size_t tags = 4;
    std::size_t steps = 50;
    std::size_t zones = 10;
    double gap = 5.0;
    double epsilon = 0.1;
    double oversample_c = 10.0;
    std::uint64_t seed = 1;
    std::uint64_t budget = 100'000'000;
    unsigned workers = 1;
};

int cmd_bench(const BenchArgs& a) {
    ManifestWriter manifest("bench", a.manifest);
    manifest.doc["parameters"] = {{"deltas", a.deltas}, {"ms", a.ms},
                                  {"tags", a.tags},     {"steps", a.steps},
                                  {"zones", a.zones},   {"gap", a.gap},
                                  {"epsilon", a.epsilon},
                                  {"oversample_c", a.oversample_c},
                                  {"seed", a.seed},     {"budget", a.budget}};

    EventStreamSpec spec;
    spec.tags = a.tags;
    spec.steps = a.steps;
    spec.zones = a.zones;
    spec.gap = a.gap;
    spec.seed = a.seed;
    std::vector<EventRecord> events = generate_events(spec);

    std::cout << "delta\tm\ttotal\tdistinct\ttop100th\tratio\tsamples\n";
    json rows = json::array();
    for (double delta : a.deltas) {
        LabeledDag dag = build_event_dag(events, delta);
        for (std::uint32_t m : a.ms) {
            PathCountTable table = count_traces(dag, m);
            std::uint64_t total = total_traces(table);
            if (total == 0) {
                std::cout << fmt_double(delta) << '\t' << m
                          << "\t0\t0\t0\t0\t0\n";
                continue;
            }
            TraceMultiset traces = exact_frequencies(dag, m, a.budget);
            std::vector<std::uint64_t> counts;
            counts.reserve(traces.counts.size());
            for (const auto& [trace, count] : traces.counts) {
                counts.push_back(count);
            }
            std::sort(counts.rbegin(), counts.rend());
            double top100th =
                static_cast<double>(counts[std::min<std::size_t>(99, counts.size() - 1)]) /
                static_cast<double>(total);

            SampleConfig cfg;
            cfg.epsilon = a.epsilon;
            cfg.oversample_c = a.oversample_c;
            cfg.m = m;
            cfg.seed = a.seed;
            cfg.p = choose_p(a.epsilon, a.oversample_c, total);
            std::size_t k = summary_capacity(a.epsilon);
            SampleStats stats = sample_traces(
                dag, table, cfg, [](std::span<const Label>, TraceHash) {},
                a.workers);
            double ratio = static_cast<double>(traces.counts.size()) /
                           static_cast<double>(k);

            std::cout << fmt_double(delta) << '\t' << m << '\t' << total << '\t'
                      << traces.counts.size() << '\t' << fmt_double(top100th)
                      << '\t' << fmt_double(ratio) << '\t' << stats.emitted
                      << '\n';
            rows.push_back({{"delta", delta},
                            {"m", m},
                            {"total", total},
                            {"distinct", traces.counts.size()},
                            {"top100th", top100th},
                            {"ratio", ratio},
                            {"samples", stats.emitted}});
        }
    }
    manifest.doc["stats"]["rows"] = rows;
    manifest.write();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"frequent trace mining over labeled DAGs"};
    app.require_subcommand(1);

    IngestArgs ingest;
    auto* ingest_cmd =
        app.add_subcommand("ingest", "build a DAG from a timestamped event CSV");
    ingest_cmd->add_option("input", ingest.input, "event CSV file")->required();
    ingest_cmd->add_option("-o,--output", ingest.output, "DAG output path");
    ingest_cmd->add_option("--delta", ingest.delta,
                           "maximum gap in minutes for an edge");
    ingest_cmd->add_flag("--allow-zero-gap", ingest.allow_zero_gap,
                         "link same-timestamp readings too");
    ingest_cmd->add_option("--manifest", ingest.manifest, "manifest path");

    EnumerateArgs enumerate;
    auto* enumerate_cmd =
        app.add_subcommand("enumerate", "list every trace with its multiplicity");
    enumerate_cmd->add_option("input", enumerate.input, "DAG file")->required();
    enumerate_cmd->add_option("-m,--max-len", enumerate.m, "maximum path length");
    enumerate_cmd->add_option("--budget", enumerate.budget,
                              "abort beyond this many emitted traces");
    enumerate_cmd->add_flag("--hashed-output", enumerate.hashed_output,
                            "print trace hashes instead of label sequences");
    enumerate_cmd->add_option("--manifest", enumerate.manifest, "manifest path");

    CountArgs count;
    auto* count_cmd =
        app.add_subcommand("count", "count the traces of length <= m");
    count_cmd->add_option("input", count.input, "DAG file")->required();
    count_cmd->add_option("-m,--max-len", count.m, "maximum path length");
    count_cmd->add_flag("--dump-counts", count.dump_counts,
                        "dump the per-vertex count table");
    count_cmd->add_option("--manifest", count.manifest, "manifest path");

    SampleArgs sample;
    auto* sample_cmd =
        app.add_subcommand("sample", "draw each trace independently with probability p");
    sample_cmd->add_option("input", sample.input, "DAG file")->required();
    sample_cmd->add_option("-m,--max-len", sample.m, "maximum path length");
    sample_cmd->add_option("--epsilon", sample.epsilon,
                           "relative frequency threshold");
    sample_cmd->add_option("--oversample-c", sample.oversample_c,
                           "oversampling constant C");
    sample_cmd->add_option("--seed", sample.seed, "RNG seed");
    sample_cmd->add_option("--workers", sample.workers, "sampling threads");
    sample_cmd->add_flag("--hashed-output", sample.hashed_output,
                         "print trace hashes instead of label sequences");
    sample_cmd->add_option("--manifest", sample.manifest, "manifest path");

    MineArgs mine;
    auto* mine_cmd =
        app.add_subcommand("mine", "report traces with relative frequency >= epsilon");
    mine_cmd->add_option("input", mine.input, "DAG file")->required();
    mine_cmd->add_option("-m,--max-len", mine.m, "maximum path length");
    mine_cmd->add_option("--epsilon", mine.epsilon, "relative frequency threshold");
    mine_cmd->add_option("--oversample-c", mine.oversample_c,
                         "oversampling constant C");
    mine_cmd->add_option("--seed", mine.seed, "RNG seed");
    mine_cmd
        ->add_option("--mode", mine.mode, "verification pass: same-seed|fresh")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, VerifyMode>{
                {"same-seed", VerifyMode::same_seed},
                {"fresh", VerifyMode::fresh}},
            CLI::ignore_case));
    mine_cmd->add_option("--workers", mine.workers, "sampling threads");
    mine_cmd->add_option("--manifest", mine.manifest, "manifest path");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand(
        "bench", "sweep synthetic data over delta and m, print the stats table");
    bench_cmd->add_option("--delta", bench.deltas, "delta values to sweep");
    bench_cmd->add_option("-m,--max-len", bench.ms, "m values to sweep");
    bench_cmd->add_option("--tags", bench.tags, "synthetic tags");
    bench_cmd->add_option("--steps", bench.steps, "readings per tag");
    bench_cmd->add_option("--zones", bench.zones, "distinct zones");
    bench_cmd->add_option("--gap", bench.gap, "minutes between readings");
    bench_cmd->add_option("--epsilon", bench.epsilon,
                          "relative frequency threshold");
    bench_cmd->add_option("--oversample-c", bench.oversample_c,
                          "oversampling constant C");
    bench_cmd->add_option("--seed", bench.seed, "RNG seed");
    bench_cmd->add_option("--budget", bench.budget, "enumeration budget");
    bench_cmd->add_option("--workers", bench.workers, "sampling threads");
    bench_cmd->add_option("--manifest", bench.manifest, "manifest path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1; // bad usage is a domain error
    }

    try {
        if (app.got_subcommand(ingest_cmd)) return cmd_ingest(ingest);
        if (app.got_subcommand(enumerate_cmd)) return cmd_enumerate(enumerate);
        if (app.got_subcommand(count_cmd)) return cmd_count(count);
        if (app.got_subcommand(sample_cmd)) return cmd_sample(sample);
        if (app.got_subcommand(mine_cmd)) return cmd_mine(mine);
        if (app.got_subcommand(bench_cmd)) return cmd_bench(bench);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CycleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const OverflowError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
