#include "psearch/harness/report.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace psearch {

std::string report_to_json(const AggregateReport &rep) {
    nlohmann::json j;
    j["instances"] = rep.instances;
    j["common_solved"] = rep.common_solved;
    j["baseline"] = rep.baseline;
    j["engines"] = nlohmann::json::array();
    for (const auto &row : rep.rows) {
        nlohmann::json e;
        e["engine"] = row.engine;
        e["k"] = row.k;
        e["runs"] = row.runs;
        e["solved"] = row.solved;
        e["geo_expansions"] = row.geo_expansions;
        e["geo_evaluations"] = row.geo_evaluations;
        e["geo_wall_s"] = row.geo_wall_s;
        e["geo_eval_rate"] = row.geo_eval_rate;
        e["mean_speedup"] = row.mean_speedup;
        e["wasted_evals"] = row.wasted_evals;
        j["engines"].push_back(e);
    }
    j["pairwise_solved_vs"] = rep.pairwise;
    return j.dump(2);
}

namespace {

std::string fmt(double v, int precision = 3) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(precision);
    os << v;
    return os.str();
}

} // namespace

std::string report_to_markdown(const AggregateReport &rep) {
    std::ostringstream os;
    os << "# Benchmark summary\n\n";
    os << "Instances: " << rep.instances << "  \n";
    os << "Solved by every engine: " << rep.common_solved << "  \n";
    os << "Speedup baseline: `" << rep.baseline << "`\n\n";

    os << "Geometric means are over the instances every engine solved.\n\n";
    os << "| engine | k | solved | geo expansions | geo evaluations | geo wall (s) "
          "| geo eval rate (1/s) | mean speedup | wasted evals |\n";
    os << "|---|---:|---:|---:|---:|---:|---:|---:|---:|\n";
    for (const auto &row : rep.rows)
        os << "| `" << row.engine << "` | " << row.k << " | " << row.solved << "/" << row.runs
           << " | " << fmt(row.geo_expansions, 1) << " | " << fmt(row.geo_evaluations, 1) << " | "
           << fmt(row.geo_wall_s, 6) << " | " << fmt(row.geo_eval_rate, 0) << " | "
           << fmt(row.mean_speedup, 2) << " | " << row.wasted_evals << " |\n";

    os << "\n## Instances solved by row engine but not column engine\n\n";
    auto axis_label = [](const EngineAggregate &row) {
        return row.engine + " k=" + std::to_string(row.k);
    };
    os << "| |";
    for (const auto &row : rep.rows)
        os << " `" << axis_label(row) << "` |";
    os << "\n|---|";
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        os << "---:|";
    os << "\n";
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        os << "| `" << axis_label(rep.rows[i]) << "` |";
        for (std::size_t j = 0; j < rep.rows.size(); ++j) {
            if (i == j)
                os << " – |";
            else
                os << " " << rep.pairwise[i][j] << " |";
        }
        os << "\n";
    }
    return os.str();
}

std::string emit_plot_data(const std::vector<RunRecord> &records, const std::string &metric) {
    if (records.empty())
        throw std::invalid_argument("no records to plot");

    auto value_of = [&metric](const RunRecord &r) -> double {
        if (metric == "wall_s")
            return r.wall_s;
        if (metric == "expansions")
            return static_cast<double>(r.expansions);
        if (metric == "evaluations")
            return static_cast<double>(r.evaluations);
        throw std::invalid_argument("unknown metric '" + metric + "'");
    };
    value_of(records.front()); // validate the metric before any output

    const AggregateReport rep = aggregate(records);
    // Group token: label@kN keeps one-token-per-column output while
    // separating worker counts.
    auto group_of = [](const RunRecord &r) { return r.engine + "@k" + std::to_string(r.k); };
    std::map<std::string, std::map<std::string, const RunRecord *>> by_engine;
    std::string baseline_group;
    for (const auto &r : records) {
        by_engine[group_of(r)].emplace(
            r.domain + "/" + std::to_string(r.seed) + "/" + std::to_string(r.sched_seed), &r);
        if (baseline_group.empty() && r.engine == rep.baseline)
            baseline_group = group_of(r);
    }

    std::ostringstream os;
    os << "# scatter data: x = " << metric << " of baseline `" << rep.baseline
       << "`, y = same metric per engine\n";
    os << "# failed runs are plotted at " << -1 << "\n";
    os << "# reference diagonals: y = 0.1*x, y = x, y = 10*x\n";
    os << "# columns: engine instance x y\n";

    const auto &base = by_engine[baseline_group];
    for (const auto &[engine, runs] : by_engine) {
        if (engine == baseline_group)
            continue;
        os << "\n# engine " << engine << "\n";
        for (const auto &[key, r] : runs) {
            auto b = base.find(key);
            if (b == base.end())
                continue;
            const double x = b->second->solved ? value_of(*b->second) : -1.0;
            const double y = r->solved ? value_of(*r) : -1.0;
            os << engine << " " << key << " " << x << " " << y << "\n";
        }
    }
    return os.str();
}

} // namespace psearch
