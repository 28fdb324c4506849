#include "psearch/harness/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "json.hpp"

#include "psearch/core/domains.hpp"
#include "psearch/core/topology_io.hpp"
#include "psearch/engine/runner.hpp"
#include "psearch/harness/bench.hpp"
#include "psearch/harness/csv.hpp"
#include "psearch/harness/report.hpp"
#include "psearch/oracle/bts.hpp"
#include "psearch/oracle/hwm.hpp"

namespace psearch {

namespace {

struct DomainFlags {
    std::string input;
    std::string kind = "plateau-synthetic";
    std::uint64_t seed = 0;
    int depth = 4, width = 3;
    StateId states = 20;
    double edge_density = 0.15;
    HValue h_max = 8;
    int goals = 1;
    int rows = 8, cols = 8;
    double obstacle_density = 0.2;
    int tile_rows = 3, tile_cols = 3, scramble = 12;
    StateId cap = 200000; // materialization bound for implicit spaces
};

void add_domain_options(CLI::App *cmd, DomainFlags &f) {
    cmd->add_option("--input", f.input, "topology file (overrides --domain)");
    cmd->add_option("--domain", f.kind, "domain family")
        ->check(CLI::IsMember(
            {"plateau-synthetic", "random-graph", "grid-nav", "sliding-tile"}));
    cmd->add_option("--seed", f.seed, "domain seed");
    cmd->add_option("--depth", f.depth, "plateau: chain length");
    cmd->add_option("--width", f.width, "plateau: dead-end siblings per chain state");
    cmd->add_option("--states", f.states, "random graph: number of states");
    cmd->add_option("--edge-density", f.edge_density, "random graph: edge probability");
    cmd->add_option("--h-max", f.h_max, "random graph: largest non-goal h");
    cmd->add_option("--goals", f.goals, "random graph: number of goal states");
    cmd->add_option("--rows", f.rows, "grid: rows");
    cmd->add_option("--cols", f.cols, "grid: columns");
    cmd->add_option("--obstacle-density", f.obstacle_density, "grid: obstacle probability");
    cmd->add_option("--tile-rows", f.tile_rows, "sliding tile: rows");
    cmd->add_option("--tile-cols", f.tile_cols, "sliding tile: columns");
    cmd->add_option("--scramble", f.scramble, "sliding tile: random walk length");
    cmd->add_option("--cap", f.cap, "state cap when materializing an implicit space");
}

DomainSpec resolve_domain(const DomainFlags &f) {
    DomainSpec d;
    if (!f.input.empty()) {
        d.kind = DomainKind::ExplicitFile;
        d.path = f.input;
        return d;
    }
    d.kind = domain_kind_from_string(f.kind);
    d.seed = f.seed;
    d.plateau_depth = f.depth;
    d.plateau_width = f.width;
    d.random_states = f.states;
    d.edge_density = f.edge_density;
    d.h_max = f.h_max;
    d.goal_count = f.goals;
    d.grid_rows = f.rows;
    d.grid_cols = f.cols;
    d.obstacle_density = f.obstacle_density;
    d.tile_rows = f.tile_rows;
    d.tile_cols = f.tile_cols;
    d.tile_scramble = f.scramble;
    return d;
}

// The oracle and the generator need vector-backed topologies; natively
// explicit families are taken as built, implicit ones are materialized
// (which renumbers ids in discovery order).
ExplicitTopology resolve_explicit(const DomainFlags &f) {
    const DomainSpec d = resolve_domain(f);
    switch (d.kind) {
    case DomainKind::ExplicitFile:
        return load_topology_file(d.path);
    case DomainKind::PlateauSynthetic:
        return gen_plateau(d.plateau_depth, d.plateau_width);
    case DomainKind::RandomGraph:
        return gen_random(d.random_states, d.edge_density, d.h_max, d.goal_count, d.seed);
    default:
        return materialize_explicit(*make_domain(d), f.cap);
    }
}

struct EngineFlags {
    std::string engine = "gbfs";
    std::string constraint = "none";
    bool sge = false;
    int threads = 1;
    std::string scheduler = "det";
    std::uint64_t sched_seed = 0;
    double delay_us = 50.0;
    double time_limit_s = 0.0;
    double mem_limit_mb = 0.0;
};

void add_engine_options(CLI::App *cmd, EngineFlags &f) {
    cmd->add_option("--engine", f.engine, "search engine")
        ->check(CLI::IsMember({"gbfs", "kpgbfs", "cpgbfs"}));
    cmd->add_option("--constraint", f.constraint, "expansion constraint (cpgbfs)")
        ->check(CLI::IsMember({"none", "inflight-minh"}));
    cmd->add_flag("--sge", f.sge, "evaluate successors via the shared queue");
    cmd->add_option("--threads,-k", f.threads, "worker count");
    cmd->add_option("--scheduler", f.scheduler, "det (simulated time) or real (OS threads)")
        ->check(CLI::IsMember({"det", "real"}));
    cmd->add_option("--sched-seed", f.sched_seed, "deterministic scheduler seed");
    cmd->add_option("--heuristic-delay-us", f.delay_us, "evaluation cost in microseconds");
    cmd->add_option("--time-limit-s", f.time_limit_s, "wall-time limit (0 = none)");
    cmd->add_option("--mem-limit-mb", f.mem_limit_mb, "approximate memory limit (0 = none)");
}

EngineConfig resolve_engine(const EngineFlags &f) {
    EngineConfig cfg;
    cfg.algorithm = algorithm_from_string(f.engine);
    cfg.constraint = constraint_kind_from_string(f.constraint);
    cfg.sge = f.sge;
    cfg.k = f.threads;
    cfg.scheduler = scheduler_kind_from_string(f.scheduler);
    cfg.sched_seed = f.sched_seed;
    cfg.heuristic_delay_ns = static_cast<std::int64_t>(std::llround(f.delay_us * 1e3));
    cfg.time_limit_ns = static_cast<std::int64_t>(std::llround(f.time_limit_s * 1e9));
    cfg.mem_limit_bytes = static_cast<std::int64_t>(std::llround(f.mem_limit_mb * 1048576.0));
    cfg.validate();
    return cfg;
}

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write '" + path + "'");
    out << text;
}

nlohmann::json bts_to_json(const BtsResult &r) {
    nlohmann::json j;
    j["method"] = r.method;
    j["members"] = r.members;
    j["member_count"] = r.members.size();
    j["conclusive"] = r.conclusive;
    j["fingerprint"] = r.topology_fingerprint;
    if (r.method == "enumerate") {
        j["steps"] = r.steps;
        j["budget"] = r.budget;
    }
    return j;
}

int cmd_solve(const DomainFlags &df, const EngineFlags &ef, const std::string &out_path,
              const std::string &trace_path) {
    const auto space = make_domain(resolve_domain(df));
    const EngineConfig cfg = resolve_engine(ef);
    const SearchResult result = run_search(*space, cfg);
    write_text(out_path, result_to_json(result, *space, cfg) + "\n");
    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out)
            throw ValidationError("cannot write '" + trace_path + "'");
        dump_trace(result.trace, out);
    }
    return result.solved() ? 0 : 1;
}

int cmd_bench(const std::string &suite, const std::string &csv_path, double delay_us,
              std::uint64_t sched_seed, bool quiet) {
    std::vector<BenchJob> jobs;
    const auto delay_ns = static_cast<std::int64_t>(std::llround(delay_us * 1e3));
    if (suite == "desk")
        jobs = desk_suite(delay_ns, sched_seed);
    else
        jobs = plateau_suite(delay_ns, sched_seed);

    BenchOptions opts;
    opts.csv_path = csv_path;
    opts.progress = quiet ? nullptr : &std::cerr;
    const auto records = run_benchmark(jobs, opts);
    std::cout << report_to_markdown(aggregate(records));
    return 0;
}

int cmd_oracle(const DomainFlags &df, const std::string &method, std::uint64_t budget,
               const std::string &out_path) {
    const ExplicitTopology topo = resolve_explicit(df);
    nlohmann::json j;
    j["topology"] = topo.name();
    j["states"] = topo.num_states();
    j["fingerprint"] = topo.fingerprint();

    int rc = 0;
    if (method == "enumerate" || method == "both")
        j["enumerate"] = bts_to_json(bts_enumerate(topo, budget));
    if (method == "hwm" || method == "both")
        j["hwm"] = bts_to_json(bts_via_hwm(topo));
    if (method == "both") {
        const bool conclusive = j["enumerate"]["conclusive"].get<bool>();
        if (conclusive) {
            const bool agree = j["enumerate"]["members"] == j["hwm"]["members"];
            j["agree"] = agree;
            if (!agree)
                rc = 1;
        } else {
            j["agree"] = nullptr; // the enumeration bound certifies nothing
        }
    }
    if (method == "hwm" || method == "both")
        j["high_water_marks"] = [&] {
            auto hwm = high_water_marks(topo);
            nlohmann::json arr = nlohmann::json::array();
            for (HValue v : hwm)
                arr.push_back(v == kHInfinity ? nlohmann::json() : nlohmann::json(v));
            return arr;
        }();
    write_text(out_path, j.dump(2) + "\n");
    return rc;
}

int cmd_gen(const DomainFlags &df, const std::string &out_path) {
    const ExplicitTopology topo = resolve_explicit(df);
    if (out_path.empty() || out_path == "-")
        std::cout << topology_to_string(topo);
    else
        save_topology_file(topo, out_path);
    return 0;
}

int cmd_report(const std::string &csv_path, const std::string &json_path,
               const std::string &md_path, const std::string &plot_path,
               const std::string &metric) {
    const auto records = read_csv_file(csv_path);
    if (records.empty()) {
        std::cerr << "error: '" << csv_path << "' holds no records\n";
        return 2;
    }
    const AggregateReport rep = aggregate(records);
    bool wrote = false;
    if (!json_path.empty()) {
        write_text(json_path, report_to_json(rep) + "\n");
        wrote = true;
    }
    if (!md_path.empty()) {
        write_text(md_path, report_to_markdown(rep));
        wrote = true;
    }
    if (!plot_path.empty()) {
        write_text(plot_path, emit_plot_data(records, metric));
        wrote = true;
    }
    if (!wrote)
        std::cout << report_to_markdown(rep);
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string> &args) {
    CLI::App app{"greedy best-first search workbench: parallel engines, membership oracles, "
                 "benchmark harness"};
    app.require_subcommand(1);

    DomainFlags solve_domain, oracle_domain, gen_domain;
    EngineFlags solve_engine;
    std::string solve_out, solve_trace;
    std::string bench_suite = "desk", bench_csv;
    double bench_delay_us = 50.0;
    std::uint64_t bench_seed = 0;
    bool bench_quiet = false;
    std::string oracle_method = "both", oracle_out;
    std::uint64_t oracle_budget = 10'000'000;
    std::string gen_out;
    std::string report_csv, report_json, report_md, report_plot, report_metric = "wall_s";

    CLI::App *solve = app.add_subcommand("solve", "run one search and print the result record");
    add_domain_options(solve, solve_domain);
    add_engine_options(solve, solve_engine);
    solve->add_option("--out", solve_out, "result path (default stdout)");
    solve->add_option("--dump-trace", solve_trace, "write the event trace here");

    CLI::App *bench = app.add_subcommand("bench", "run a built-in suite and summarize it");
    bench->add_option("--suite", bench_suite, "desk or plateau")
        ->check(CLI::IsMember({"desk", "plateau"}));
    bench->add_option("--csv", bench_csv, "append rows here as runs finish");
    bench->add_option("--heuristic-delay-us", bench_delay_us, "evaluation cost in microseconds");
    bench->add_option("--sched-seed", bench_seed, "deterministic scheduler seed");
    bench->add_flag("--quiet", bench_quiet, "suppress per-run progress on stderr");

    CLI::App *oracle =
        app.add_subcommand("oracle", "compute the pop-membership set of a topology");
    add_domain_options(oracle, oracle_domain);
    oracle->add_option("--method", oracle_method, "enumerate, hwm, or both")
        ->check(CLI::IsMember({"enumerate", "hwm", "both"}));
    oracle->add_option("--budget", oracle_budget, "enumeration step budget");
    oracle->add_option("--out", oracle_out, "output path (default stdout)");

    CLI::App *gen = app.add_subcommand("gen", "write a domain instance as a topology file");
    add_domain_options(gen, gen_domain);
    gen->add_option("--out", gen_out, "topology file path (default stdout)");

    CLI::App *report = app.add_subcommand("report", "aggregate a benchmark CSV");
    report->add_option("--csv", report_csv, "benchmark CSV to read")->required();
    report->add_option("--json", report_json, "write the JSON summary here");
    report->add_option("--markdown", report_md, "write the markdown summary here");
    report->add_option("--plot", report_plot, "write per-instance scatter data here");
    report->add_option("--metric", report_metric, "scatter metric")
        ->check(CLI::IsMember({"wall_s", "expansions", "evaluations"}));

    std::vector<const char *> argv;
    argv.push_back("psearch");
    for (const auto &a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e); // prints help, exits 0
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e); // prints the complaint
        return 2;
    }

    try {
        if (solve->parsed())
            return cmd_solve(solve_domain, solve_engine, solve_out, solve_trace);
        if (bench->parsed())
            return cmd_bench(bench_suite, bench_csv, bench_delay_us, bench_seed, bench_quiet);
        if (oracle->parsed())
            return cmd_oracle(oracle_domain, oracle_method, oracle_budget, oracle_out);
        if (gen->parsed())
            return cmd_gen(gen_domain, gen_out);
        if (report->parsed())
            return cmd_report(report_csv, report_json, report_md, report_plot, report_metric);
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2; // no subcommand (require_subcommand should have thrown)
}

} // namespace psearch
