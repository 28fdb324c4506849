#include "psearch/harness/metrics.hpp"

#include "psearch/engine/constraint.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace psearch {

RunRecord make_record(const DomainSpec &spec, const EngineConfig &cfg,
                      const SearchResult &result) {
    RunRecord r;
    r.domain = spec.label();
    r.kind = to_string(spec.kind);
    r.seed = spec.seed;
    r.engine = cfg.engine_label();
    r.constraint = cfg.effective_constraint() == ConstraintKind::Custom && cfg.custom_constraint
                       ? cfg.custom_constraint->label()
                       : to_string(cfg.effective_constraint());
    r.sge = cfg.sge;
    r.k = cfg.k;
    r.scheduler = to_string(cfg.scheduler);
    r.sched_seed = cfg.sched_seed;
    r.solved = result.solved();
    r.fail_cause = r.solved ? "" : to_string(result.status);
    r.expansions = result.expansions;
    r.evaluations = result.evaluations;
    r.wasted_evals = result.wasted_evaluations;
    r.wall_s = result.wall_seconds();
    r.eval_rate = result.eval_rate();
    r.peak_open = result.peak_open;
    return r;
}

double geometric_mean(const std::vector<double> &values) {
    if (values.empty())
        throw std::invalid_argument("geometric mean of an empty sample");
    double log_sum = 0.0;
    for (double v : values)
        log_sum += std::log(std::max(v, 1.0));
    return std::exp(log_sum / static_cast<double>(values.size()));
}

namespace {

std::string instance_key(const RunRecord &r) {
    return r.domain + "/" + std::to_string(r.seed) + "/" + std::to_string(r.sched_seed);
}

} // namespace

AggregateReport aggregate(const std::vector<RunRecord> &records) {
    if (records.empty())
        throw std::invalid_argument("no records to aggregate");

    // One row per (engine label, worker count); first record wins when
    // a (instance, row) pair was run twice.
    using RowKey = std::pair<std::string, int>;
    std::map<RowKey, std::map<std::string, const RunRecord *>> by_engine;
    std::set<std::string> instance_set;
    for (const auto &r : records) {
        by_engine[{r.engine, r.k}].emplace(instance_key(r), &r);
        instance_set.insert(instance_key(r));
    }

    AggregateReport rep;
    rep.instances = instance_set.size();

    std::vector<RowKey> engines;
    for (const auto &[key, _] : by_engine)
        engines.push_back(key);
    RowKey baseline_key = engines.front();
    for (const auto &key : engines)
        if (key.first == "gbfs") {
            baseline_key = key;
            break;
        }
    rep.baseline = baseline_key.first;

    // Instances with a solved record from every row.
    std::vector<std::string> common;
    for (const auto &key : instance_set) {
        bool ok = true;
        for (const auto &e : engines) {
            auto it = by_engine[e].find(key);
            if (it == by_engine[e].end() || !it->second->solved) {
                ok = false;
                break;
            }
        }
        if (ok)
            common.push_back(key);
    }
    rep.common_solved = common.size();

    for (const auto &e : engines) {
        EngineAggregate row;
        row.engine = e.first;
        row.k = e.second;
        row.runs = by_engine[e].size();
        for (const auto &[_, r] : by_engine[e]) {
            if (r->solved)
                ++row.solved;
            row.wasted_evals += r->wasted_evals;
        }
        if (!common.empty()) {
            std::vector<double> ex, ev, wall, rate;
            double speedup_sum = 0.0;
            for (const auto &key : common) {
                const RunRecord *r = by_engine[e][key];
                const RunRecord *base = by_engine[baseline_key][key];
                ex.push_back(static_cast<double>(r->expansions));
                ev.push_back(static_cast<double>(r->evaluations));
                wall.push_back(r->wall_s);
                rate.push_back(r->eval_rate);
                if (r->wall_s > 0)
                    speedup_sum += base->wall_s / r->wall_s;
            }
            row.geo_expansions = geometric_mean(ex);
            row.geo_evaluations = geometric_mean(ev);
            row.geo_eval_rate = geometric_mean(rate);
            // wall times are fractions of a second; the count floor
            // would erase them, so feed the mean in nanoseconds (where
            // every run is far above 1) and scale back.
            std::vector<double> wall_ns;
            wall_ns.reserve(wall.size());
            for (double wv : wall)
                wall_ns.push_back(wv * 1e9);
            row.geo_wall_s = geometric_mean(wall_ns) * 1e-9;
            row.mean_speedup = speedup_sum / static_cast<double>(common.size());
        }
        rep.rows.push_back(std::move(row));
    }

    rep.pairwise.assign(engines.size(), std::vector<std::size_t>(engines.size(), 0));
    for (std::size_t i = 0; i < engines.size(); ++i)
        for (std::size_t j = 0; j < engines.size(); ++j) {
            if (i == j)
                continue;
            for (const auto &key : instance_set) {
                auto ii = by_engine[engines[i]].find(key);
                auto jj = by_engine[engines[j]].find(key);
                if (ii != by_engine[engines[i]].end() && ii->second->solved &&
                    jj != by_engine[engines[j]].end() && !jj->second->solved)
                    ++rep.pairwise[i][j];
            }
        }

    return rep;
}

} // namespace psearch
