// Command-line front-end: build graphs from flow traces, compute their
// statistics, sweep the locality window, run threshold detection, and
// generate labeled synthetic traces.

#include "tlcn/anomaly.hpp"
#include "tlcn/build.hpp"
#include "tlcn/error.hpp"
#include "tlcn/export.hpp"
#include "tlcn/manifest.hpp"
#include "tlcn/metrics.hpp"
#include "tlcn/synth.hpp"
#include "tlcn/trace.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace tlcn;

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct BuildFlags {
    std::string window;
    std::string mode = "2tuple";
    std::string ports;
    int proto = -1;
    std::uint64_t min_freq = 0;
    std::string edge_filter = "we";
};

void add_filter_flags(CLI::App* cmd, BuildFlags& f) {
    cmd->add_option("--mode", f.mode, "node key granularity: 2tuple or 5tuple")
        ->check(CLI::IsMember({"2tuple", "5tuple"}));
    cmd->add_option("--port", f.ports, "admit records whose src or dst port is in this comma list");
    cmd->add_option("--proto", f.proto, "admit records with this IP protocol number")
        ->check(CLI::Range(0, 255));
    cmd->add_option("--min-freq", f.min_freq, "admit records whose flow key occurs at least this often");
    cmd->add_option("--edge-filter", f.edge_filter, "uwe or we")
        ->check(CLI::IsMember({"uwe", "we"}));
}

void add_build_flags(CLI::App* cmd, BuildFlags& f) {
    cmd->add_option("--window", f.window, "temporal locality window in seconds")->required();
    add_filter_flags(cmd, f);
}

Ticks parse_window(const std::string& text) {
    Ticks w;
    try {
        w = parse_seconds(text);
    } catch (const ParseError& e) {
        throw UsageError(std::string("--window: ") + e.what());
    }
    if (w < 1)
        throw UsageError("--window must be at least 0.000001 seconds");
    return w;
}

KeyMode parse_mode(const BuildFlags& f) {
    return f.mode == "5tuple" ? KeyMode::five_tuple : KeyMode::two_tuple;
}

EdgeFilter parse_edge_filter(const BuildFlags& f) {
    return f.edge_filter == "uwe" ? EdgeFilter::uwe : EdgeFilter::we;
}

NodeFilter parse_node_filter(const BuildFlags& f) {
    int given = (!f.ports.empty() ? 1 : 0) + (f.proto >= 0 ? 1 : 0) + (f.min_freq > 0 ? 1 : 0);
    if (given > 1)
        throw UsageError("--port, --proto and --min-freq are mutually exclusive");
    if (!f.ports.empty()) {
        std::vector<std::uint16_t> ports;
        std::stringstream ss(f.ports);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                int p = std::stoi(item);
                if (p < 0 || p > 65535)
                    throw std::out_of_range(item);
                ports.push_back(static_cast<std::uint16_t>(p));
            } catch (const std::exception&) {
                throw UsageError("--port: invalid port '" + item + "'");
            }
        }
        if (ports.empty())
            throw UsageError("--port: empty port list");
        return NodeFilter::port(std::move(ports));
    }
    if (f.proto >= 0)
        return NodeFilter::protocol(static_cast<std::uint8_t>(f.proto));
    if (f.min_freq > 0)
        return NodeFilter::min_frequency(f.min_freq);
    return NodeFilter::all();
}

void record_filter_params(RunManifest& m, const BuildFlags& f) {
    m.add("mode", f.mode);
    m.add("node_filter", parse_node_filter(f).describe());
    m.add("edge_filter", f.edge_filter);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write output file '" + path + "'");
    return out;
}

void write_manifest_file(const RunManifest& m, const std::string& out_path) {
    auto out = open_out(out_path + ".manifest");
    write_manifest(m, out);
}

// Distinguishes trace CSV from edge CSV by the header line.
enum class InputKind { trace, graph };

InputKind sniff_input(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open input file '" + path + "'");
    std::string header;
    std::getline(in, header);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header.rfind("ts,src_ip,dst_ip", 0) == 0)
        return InputKind::trace;
    if (header == "src_key,dst_key,weight")
        return InputKind::graph;
    throw ParseError("unrecognized input header in '" + path + "'");
}

Tlcn load_graph(const std::string& path) {
    std::ifstream edges(path);
    if (!edges)
        throw ValidationError("cannot open input file '" + path + "'");
    const std::string nodes_path = path + ".nodes.csv";
    if (std::filesystem::exists(nodes_path)) {
        std::ifstream nodes(nodes_path);
        return import_edge_csv(edges, &nodes);
    }
    return import_edge_csv(edges, nullptr);
}

void export_to(const Tlcn& net, const std::string& format, const std::string& out_path) {
    ExportOptions opts;
    if (format == "dot") {
        opts.format = ExportFormat::dot;
        auto out = open_out(out_path);
        export_dot(net, opts, out);
    } else if (format == "graphml") {
        opts.format = ExportFormat::graphml;
        auto out = open_out(out_path);
        export_graphml(net, opts, out);
    } else {
        opts.format = ExportFormat::edge_csv;
        auto edges = open_out(out_path);
        auto nodes = open_out(out_path + ".nodes.csv");
        export_edge_csv(net, opts, edges, nodes);
    }
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int run_build(const std::string& trace_path, const BuildFlags& flags,
              const std::string& format, const std::string& out_path) {
    const Ticks window = parse_window(flags.window);
    Trace trace = parse_trace_file(trace_path);
    Tlcn net = build_tlcn(trace, window, parse_mode(flags), parse_node_filter(flags),
                          parse_edge_filter(flags));
    export_to(net, format, out_path);

    RunManifest m;
    m.command = "build";
    m.input_digest = digest_file(trace_path);
    m.add("trace", trace_path);
    m.add("window", flags.window);
    record_filter_params(m, flags);
    m.add("format", format);
    m.add("out", out_path);
    m.add("node_count", std::to_string(net.node_count()));
    m.add("edge_count", std::to_string(net.edge_count()));
    write_manifest_file(m, out_path);
    return 0;
}

int run_metrics(const std::string& input_path, const BuildFlags& flags,
                unsigned sw_realizations, std::uint64_t seed, const std::string& out_path) {
    Tlcn net;
    if (sniff_input(input_path) == InputKind::graph) {
        net = load_graph(input_path);
    } else {
        if (flags.window.empty())
            throw UsageError("--window is required for trace inputs");
        Trace trace = parse_trace_file(input_path);
        net = build_tlcn(trace, parse_window(flags.window), parse_mode(flags),
                         parse_node_filter(flags), parse_edge_filter(flags));
    }

    MetricsOptions opts;
    opts.small_world_realizations = sw_realizations;
    opts.seed = seed;
    MetricsReport rep = compute_metrics(net, opts);
    if (sw_realizations > 0 && !rep.small_world)
        std::cerr << "note: small_world absent (no finite path, zero clustering, or "
                     "degenerate random references)\n";

    {
        auto out = open_out(out_path);
        out << metrics_csv_header() << '\n' << metrics_csv_row(rep) << '\n';
    }
    {
        auto out = open_out(out_path + ".txt");
        write_metrics_text(rep, out);
    }
    {
        auto out = open_out(out_path + ".richclub.csv");
        write_curve_csv(rep.rich_club, "k", "phi", out);
    }
    {
        auto out = open_out(out_path + ".degdist.csv");
        std::vector<std::pair<std::size_t, double>> curve;
        for (const DegreePoint& p : rep.degree_dist)
            curve.emplace_back(p.k, p.p);
        write_curve_csv(curve, "k", "p", out);
    }

    RunManifest m;
    m.command = "metrics";
    m.input_digest = digest_file(input_path);
    m.add("input", input_path);
    if (!flags.window.empty()) {
        m.add("window", flags.window);
        record_filter_params(m, flags);
    }
    m.add("small_world_realizations", std::to_string(sw_realizations));
    m.add("seed", std::to_string(seed));
    m.add("out", out_path);
    write_manifest_file(m, out_path);
    return 0;
}

int run_sweep(const std::string& trace_path, const BuildFlags& flags,
              const std::string& windows_arg, const std::string& out_path) {
    std::vector<Ticks> windows;
    std::vector<std::string> window_texts;
    {
        std::stringstream ss(windows_arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
            window_texts.push_back(item);
            windows.push_back(parse_window(item));
        }
    }
    if (windows.empty())
        throw UsageError("--windows requires at least one window");

    Trace trace = parse_trace_file(trace_path);
    auto rows = sweep_delta_w(trace, windows, parse_mode(flags), parse_node_filter(flags),
                              parse_edge_filter(flags));

    std::optional<double> pps;
    {
        Trace filtered = apply_node_filter(trace, parse_node_filter(flags), parse_mode(flags));
        if (!filtered.empty())
            pps = trace_stats(filtered).pps;
    }

    std::vector<double> w_secs, edge_counts, mean_degrees;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        w_secs.push_back(double(rows[i].delta_w) / kTicksPerSecond);
        edge_counts.push_back(double(rows[i].report.edge_count));
        mean_degrees.push_back(rows[i].report.mean_degree.value_or(0.0));
    }

    {
        auto out = open_out(out_path);
        out << "delta_w,pps," << metrics_csv_header() << '\n';
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out << window_texts[i] << ',';
            if (pps) out << fmt_double(*pps);
            out << ',' << metrics_csv_row(rows[i].report) << '\n';
        }
        auto r_edge = pearson(w_secs, edge_counts);
        auto r_md = pearson(w_secs, mean_degrees);
        out << "# pearson,delta_w_vs_edge_count," << (r_edge ? fmt_double(*r_edge) : "") << '\n';
        out << "# pearson,delta_w_vs_mean_degree," << (r_md ? fmt_double(*r_md) : "") << '\n';
    }

    RunManifest m;
    m.command = "sweep";
    m.input_digest = digest_file(trace_path);
    m.add("trace", trace_path);
    m.add("windows", windows_arg);
    record_filter_params(m, flags);
    m.add("out", out_path);
    write_manifest_file(m, out_path);
    return 0;
}

int run_detect(const std::string& trace_path, const BuildFlags& flags,
               const std::string& interval_text, const std::string& metric,
               const std::string& train_span, double epsilon, const std::string& direction_arg,
               const std::string& out_path) {
    Ticks interval;
    try {
        interval = parse_seconds(interval_text);
    } catch (const ParseError& e) {
        throw UsageError(std::string("--interval: ") + e.what());
    }
    if (interval < 1)
        throw UsageError("--interval must be at least 0.000001 seconds");
    if (!is_scalar_metric(metric))
        throw UsageError("--metric: unknown metric '" + metric + "'");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw UsageError("--epsilon must lie in (0, 1)");

    std::size_t train_begin = 0, train_end = 0;
    {
        auto colon = train_span.find(':');
        if (colon == std::string::npos)
            throw UsageError("--train-span must have the form BEGIN:END");
        try {
            train_begin = std::stoull(train_span.substr(0, colon));
            train_end = std::stoull(train_span.substr(colon + 1));
        } catch (const std::exception&) {
            throw UsageError("--train-span must have the form BEGIN:END");
        }
        if (train_begin >= train_end)
            throw UsageError("--train-span is empty");
    }

    Direction direction;
    if (direction_arg == "upper")
        direction = Direction::upper;
    else if (direction_arg == "lower")
        direction = Direction::lower;
    else
        direction = default_direction(metric);

    const Ticks window = parse_window(flags.window);
    Trace trace = parse_trace_file(trace_path);
    CharacteristicSeries series =
        characteristic_series(trace, interval, window, parse_mode(flags),
                              parse_node_filter(flags), parse_edge_filter(flags), metric);
    ThresholdModel model = fit_threshold(series, train_begin, train_end, epsilon, direction);
    DetectionResult result = detect(series, model);

    {
        auto out = open_out(out_path);
        write_series_csv(series, &result, out);
    }
    {
        auto out = open_out(out_path + ".model.txt");
        write_threshold_text(model, &result, out);
    }

    RunManifest m;
    m.command = "detect";
    m.input_digest = digest_file(trace_path);
    m.add("trace", trace_path);
    m.add("interval", interval_text);
    m.add("metric", metric);
    m.add("window", flags.window);
    record_filter_params(m, flags);
    m.add("train_span", train_span);
    m.add("epsilon", fmt_double(epsilon));
    {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%.4f", model.lambda_q);
        m.add("lambda", buf);
    }
    m.add("direction", model.direction == Direction::upper ? "upper" : "lower");
    m.add("psi", fmt_double(model.psi));
    if (result.accuracy)
        m.add("accuracy", fmt_double(*result.accuracy));
    m.add("out", out_path);
    write_manifest_file(m, out_path);
    return 0;
}

int run_gen(const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& out_path) {
    ScenarioConfig config = load_scenario_file(config_path);
    if (seed)
        config.seed = *seed;
    Trace trace = generate(config);
    {
        auto out = open_out(out_path);
        serialize_trace(trace, out);
    }

    RunManifest m;
    m.command = "gen";
    m.input_digest = digest_file(config_path);
    m.add("config", config_path);
    m.add("seed", std::to_string(config.seed));
    m.add("records", std::to_string(trace.size()));
    m.add("out", out_path);
    write_manifest_file(m, out_path);
    return 0;
}

void apply_thread_cap() {
#ifdef _OPENMP
    if (const char* env = std::getenv("TLCN_THREADS")) {
        int threads = std::atoi(env);
        if (threads >= 1)
            omp_set_num_threads(threads);
    }
#endif
}

} // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"temporal-locality flow graph toolkit"};
    app.require_subcommand(1);

    std::string trace_path, out_path, format = "edge_csv";
    BuildFlags flags;

    auto* build_cmd = app.add_subcommand("build", "build a flow graph from a trace");
    build_cmd->add_option("trace", trace_path, "trace CSV file")->required();
    add_build_flags(build_cmd, flags);
    build_cmd->add_option("--format", format, "dot, graphml or edge_csv")
        ->check(CLI::IsMember({"dot", "graphml", "edge_csv"}));
    build_cmd->add_option("--out", out_path, "output path")->required();

    unsigned sw_realizations = 0;
    std::uint64_t seed = 0;
    auto* metrics_cmd = app.add_subcommand("metrics", "compute graph characteristics");
    metrics_cmd->add_option("input", trace_path, "trace CSV or edge CSV file")->required();
    metrics_cmd->add_option("--window", flags.window, "temporal locality window in seconds");
    add_filter_flags(metrics_cmd, flags);
    metrics_cmd->add_option("--small-world-realizations", sw_realizations,
                            "random reference graphs for the small-world coefficient");
    metrics_cmd->add_option("--seed", seed, "random seed");
    metrics_cmd->add_option("--out", out_path, "output path")->required();

    std::string windows_arg;
    auto* sweep_cmd = app.add_subcommand("sweep", "metrics across a list of windows");
    sweep_cmd->add_option("trace", trace_path, "trace CSV file")->required();
    sweep_cmd->add_option("--windows", windows_arg, "comma list of windows in seconds")
        ->required();
    add_filter_flags(sweep_cmd, flags);
    sweep_cmd->add_option("--out", out_path, "output path")->required();

    std::string interval_text, metric, train_span, direction_arg = "auto";
    double epsilon = 0.05;
    auto* detect_cmd = app.add_subcommand("detect", "threshold detection over a metric series");
    detect_cmd->add_option("trace", trace_path, "trace CSV file")->required();
    detect_cmd->add_option("--interval", interval_text, "sampling interval in seconds")
        ->required();
    std::string metric_help = "series metric, one of:";
    for (const char* name : scalar_metric_names())
        metric_help += std::string(" ") + name;
    detect_cmd->add_option("--metric", metric, metric_help)->required();
    detect_cmd->add_option("--train-span", train_span, "training tick range BEGIN:END")
        ->required();
    detect_cmd->add_option("--epsilon", epsilon, "detection confidence parameter");
    detect_cmd->add_option("--direction", direction_arg, "upper, lower or auto")
        ->check(CLI::IsMember({"upper", "lower", "auto"}));
    add_build_flags(detect_cmd, flags);
    detect_cmd->add_option("--out", out_path, "output path")->required();

    std::string config_path;
    std::optional<std::uint64_t> gen_seed;
    auto* gen_cmd = app.add_subcommand("gen", "generate a labeled synthetic trace");
    gen_cmd->add_option("config", config_path, "scenario config file")->required();
    gen_cmd->add_option("--seed", [&gen_seed](const std::vector<std::string>& v) {
        gen_seed = std::stoull(v[0]);
        return true;
    }, "seed override");
    gen_cmd->add_option("--out", out_path, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (build_cmd->parsed())
            return run_build(trace_path, flags, format, out_path);
        if (metrics_cmd->parsed())
            return run_metrics(trace_path, flags, sw_realizations, seed, out_path);
        if (sweep_cmd->parsed())
            return run_sweep(trace_path, flags, windows_arg, out_path);
        if (detect_cmd->parsed())
            return run_detect(trace_path, flags, interval_text, metric, train_span, epsilon,
                              direction_arg, out_path);
        if (gen_cmd->parsed())
            return run_gen(config_path, gen_seed, out_path);
    } catch (const UsageError& e) {
        std::cerr << "error: usage: " << e.what() << '\n';
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: input: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return 3;
    }
    return 3;
}
