#include "psearch/harness/bench.hpp"

#include <fstream>
#include <ostream>

#include "psearch/engine/runner.hpp"
#include "psearch/harness/csv.hpp"

namespace psearch {

std::vector<RunRecord> run_benchmark(const std::vector<BenchJob> &jobs,
                                     const BenchOptions &opts) {
    std::ofstream csv;
    if (!opts.csv_path.empty()) {
        csv.open(opts.csv_path);
        if (!csv)
            throw ValidationError("cannot write '" + opts.csv_path + "'");
        write_csv_header(csv);
        csv.flush();
    }

    std::vector<RunRecord> records;
    records.reserve(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const BenchJob &job = jobs[i];
        const auto space = make_domain(job.domain);
        const SearchResult result = run_search(*space, job.engine);
        RunRecord rec = make_record(job.domain, job.engine, result);
        if (csv.is_open()) {
            write_csv_row(csv, rec);
            csv.flush();
        }
        if (opts.progress)
            *opts.progress << "[" << (i + 1) << "/" << jobs.size() << "] " << rec.domain << " "
                           << rec.engine << " " << (rec.solved ? "solved" : rec.fail_cause)
                           << " wall=" << rec.wall_s << "s expansions=" << rec.expansions
                           << "\n";
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<EngineConfig> engine_grid(const std::vector<int> &ks, std::int64_t delay_ns,
                                      SchedulerKind scheduler, std::uint64_t sched_seed) {
    std::vector<EngineConfig> out;

    EngineConfig base;
    base.heuristic_delay_ns = delay_ns;
    base.scheduler = scheduler;
    base.sched_seed = sched_seed;

    EngineConfig gbfs = base;
    gbfs.algorithm = Algorithm::Gbfs;
    gbfs.k = 1;
    out.push_back(gbfs);

    for (bool sge : {false, true})
        for (int k : ks) {
            EngineConfig e = base;
            e.algorithm = Algorithm::Kpgbfs;
            e.k = k;
            e.sge = sge;
            out.push_back(e);
        }
    for (bool sge : {false, true})
        for (int k : ks) {
            EngineConfig e = base;
            e.algorithm = Algorithm::Cpgbfs;
            e.constraint = ConstraintKind::InflightMinH;
            e.k = k;
            e.sge = sge;
            out.push_back(e);
        }
    return out;
}

namespace {

std::vector<BenchJob> cross(const std::vector<DomainSpec> &domains,
                            const std::vector<EngineConfig> &engines) {
    std::vector<BenchJob> jobs;
    jobs.reserve(domains.size() * engines.size());
    for (const auto &d : domains)
        for (const auto &e : engines)
            jobs.push_back({d, e});
    return jobs;
}

} // namespace

std::vector<BenchJob> desk_suite(std::int64_t delay_ns, std::uint64_t sched_seed) {
    std::vector<DomainSpec> domains;

    for (auto [depth, width] : {std::pair{4, 3}, {5, 7}, {6, 4}}) {
        DomainSpec d;
        d.kind = DomainKind::PlateauSynthetic;
        d.plateau_depth = depth;
        d.plateau_width = width;
        domains.push_back(d);
    }
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        DomainSpec d;
        d.kind = DomainKind::RandomGraph;
        d.random_states = 25;
        d.edge_density = 0.12;
        d.h_max = 6;
        d.goal_count = 1;
        d.seed = seed;
        domains.push_back(d);
    }
    for (std::uint64_t seed : {1u, 2u}) {
        DomainSpec d;
        d.kind = DomainKind::GridNav;
        d.grid_rows = 8;
        d.grid_cols = 8;
        d.obstacle_density = 0.25;
        d.seed = seed;
        domains.push_back(d);
    }
    for (auto [scramble, seed] : {std::pair{8, 1}, {12, 2}}) {
        DomainSpec d;
        d.kind = DomainKind::SlidingTile;
        d.tile_rows = 3;
        d.tile_cols = 3;
        d.tile_scramble = scramble;
        d.seed = static_cast<std::uint64_t>(seed);
        domains.push_back(d);
    }

    return cross(domains,
                 engine_grid({2, 4, 8}, delay_ns, SchedulerKind::Deterministic, sched_seed));
}

std::vector<BenchJob> plateau_suite(std::int64_t delay_ns, std::uint64_t sched_seed) {
    // Deep chains: long enough that a per-successor-inserting engine
    // fills its expansion pipeline, so throughput differences reflect
    // steady-state behavior rather than ramp-up.
    std::vector<DomainSpec> domains;
    for (auto [depth, width] :
         {std::pair{48, 7}, {64, 7}, {80, 7}, {64, 5}, {96, 7}, {56, 9}}) {
        DomainSpec d;
        d.kind = DomainKind::PlateauSynthetic;
        d.plateau_depth = depth;
        d.plateau_width = width;
        domains.push_back(d);
    }
    return cross(domains,
                 engine_grid({8}, delay_ns, SchedulerKind::Deterministic, sched_seed));
}

} // namespace psearch
