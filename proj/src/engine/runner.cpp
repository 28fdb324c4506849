#include "psearch/engine/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <deque>
#include <memory>
#include <utility>

#include "json.hpp"

#include "psearch/core/solution.hpp"
#include "psearch/engine/closed_set.hpp"
#include "psearch/engine/constraint.hpp"
#include "psearch/engine/context.hpp"
#include "psearch/engine/open_list.hpp"
#include "psearch/engine/sibling.hpp"

namespace psearch {

const char *to_string(RunStatus s) {
    switch (s) {
    case RunStatus::Solved: return "solved";
    case RunStatus::Exhausted: return "exhausted";
    case RunStatus::TimeLimit: return "time-limit";
    case RunStatus::MemLimit: return "mem-limit";
    }
    return "?";
}

namespace {

constexpr std::int64_t kOpNs = DeterministicContext::kOpCostNs;
constexpr int kRunning = -1;

// Coarse per-entry footprints for the memory limit; monotone by design
// (nothing is ever credited back), so the limit reads as an allocation
// high-water mark.
constexpr std::int64_t kOpenEntryBytes = 48;
constexpr std::int64_t kAdmitBytes = 32;
constexpr std::int64_t kUnevalItemBytes = 64;

const ExpansionConstraint &resolve_constraint(const EngineConfig &cfg) {
    switch (cfg.effective_constraint()) {
    case ConstraintKind::None: return no_constraint();
    case ConstraintKind::InflightMinH: return inflight_minh_constraint();
    case ConstraintKind::Custom: return *cfg.custom_constraint;
    }
    return no_constraint();
}

// Everything the workers share.  Section ownership:
//   Open   — open, registry
//   Closed — closed, parents
//   Uneval — uneval, groups, eval_claimed
//   Result — goal_state, stop_time_ns, stop transition
// The only nesting ever taken is Open -> Closed (batch insertion).
struct SearchCore {
    const StateSpace &space;
    const EngineConfig &cfg;
    const ExpansionConstraint &constraint;
    WorkerContext &ctx;

    OpenList open;
    InflightRegistry registry;
    StateSet closed;
    ParentMap parents;
    StateSet eval_claimed;
    UnevaluatedQueue uneval;
    std::deque<SiblingGroup> groups;

    std::atomic<std::uint64_t> expansions{0};
    std::atomic<std::uint64_t> evaluations{0};
    std::atomic<std::uint64_t> wasted{0};
    std::atomic<std::int64_t> approx_bytes{0};
    std::atomic<std::uint64_t> event_seq{0};

    std::atomic<int> stop{kRunning};
    StateId goal_state = kNoState;
    std::int64_t stop_time_ns = 0;

    std::vector<std::vector<TraceEvent>> worker_events;

    // Siblings enter Open as one atomic batch (constrained engines and
    // separate evaluation); otherwise each successor is inserted the
    // moment its evaluation finishes, which is the classic unconstrained
    // behaviour.
    bool batching;

    SearchCore(const StateSpace &sp, const EngineConfig &c, WorkerContext &cx)
        : space(sp), cfg(c), constraint(resolve_constraint(c)), ctx(cx),
          closed(sp.id_bound()), parents(sp.id_bound()), eval_claimed(sp.id_bound()),
          worker_events(static_cast<std::size_t>(c.k)),
          batching(c.sge || c.effective_constraint() != ConstraintKind::None) {}

    void emit(int worker, std::int64_t t, EventKind kind, StateId state, std::int64_t a = 0,
              std::int64_t b = 0) {
        worker_events[static_cast<std::size_t>(worker)].push_back(
            {event_seq.fetch_add(1, std::memory_order_relaxed), t, worker, kind, state, a, b});
    }

    void bump() { ctx.structure_version.fetch_add(1, std::memory_order_release); }

    // First caller wins and freezes the outcome; the winner's clock
    // becomes the run's wall time.
    bool try_stop(int worker, RunStatus status, StateId goal) {
        ctx.lock(LockId::Result);
        ctx.charge(worker, kOpNs);
        const bool won = stop.load(std::memory_order_relaxed) == kRunning;
        if (won) {
            goal_state = goal;
            stop_time_ns = ctx.now_ns(worker);
            stop.store(static_cast<int>(status), std::memory_order_release);
        }
        ctx.unlock(LockId::Result);
        bump();
        return won;
    }

    bool stopped() const { return stop.load(std::memory_order_acquire) != kRunning; }
};

/*
  The one worker loop, shared by every parallel configuration and both
  drivers.  Suspension points sit before each exclusive-section
  acquisition and between successor evaluations; no suspension happens
  with a section held.
*/
WorkerTask worker_loop(SearchCore &core, int w) {
    WorkerContext &ctx = core.ctx;
    const EngineConfig &cfg = core.cfg;
    const std::int64_t delay = cfg.heuristic_delay_ns;

    bool idle = false;
    std::vector<StateId> succs;
    std::vector<std::pair<StateId, HValue>> kept;

    auto begin_idle = [&] {
        if (!idle) {
            core.emit(w, ctx.now_ns(w), EventKind::IdleStart, kNoState);
            idle = true;
        }
    };
    auto end_idle = [&] {
        if (idle) {
            core.emit(w, ctx.now_ns(w), EventKind::IdleEnd, kNoState);
            idle = false;
        }
    };

    for (;;) {
        if (core.stopped())
            break;
        if (cfg.time_limit_ns > 0 && ctx.now_ns(w) >= cfg.time_limit_ns) {
            if (core.try_stop(w, RunStatus::TimeLimit, kNoState))
                core.emit(w, ctx.now_ns(w), EventKind::LimitHit, kNoState, 0);
            break;
        }
        if (cfg.mem_limit_bytes > 0 &&
            core.approx_bytes.load(std::memory_order_relaxed) >= cfg.mem_limit_bytes) {
            if (core.try_stop(w, RunStatus::MemLimit, kNoState))
                core.emit(w, ctx.now_ns(w), EventKind::LimitHit, kNoState, 1);
            break;
        }

        if (cfg.sge) {
            // Evaluation work takes precedence over expansion.
            co_await ctx.yield(w);
            ctx.lock(LockId::Uneval);
            ctx.charge(w, kOpNs);
            if (!core.uneval.empty()) {
                const UnevaluatedQueue::Item item = core.uneval.pop();
                ctx.unlock(LockId::Uneval);
                end_idle();

                SiblingGroup *g = item.group;
                SiblingMember &m = g->members[item.member];
                core.emit(w, ctx.now_ns(w), EventKind::EvalStart, m.state);
                ctx.busy_work(w, delay);
                m.h = core.space.heuristic(m.state);
                m.computed = true;
                core.emit(w, ctx.now_ns(w), EventKind::EvalEnd, m.state, m.h);
                core.evaluations.fetch_add(1, std::memory_order_relaxed);

                co_await ctx.yield(w);
                ctx.lock(LockId::Open);
                ctx.charge(w, kOpNs);
                core.registry.note_known_h(g->parent, m.h);
                ctx.unlock(LockId::Open);

                co_await ctx.yield(w);
                ctx.lock(LockId::Uneval);
                ctx.charge(w, kOpNs);
                const bool last = --g->remaining == 0;
                ctx.unlock(LockId::Uneval);

                if (last) {
                    // Whole sibling group evaluated: insert it as one
                    // atomic batch, discarding members that lost the
                    // Closed race since generation.
                    co_await ctx.yield(w);
                    ctx.lock(LockId::Open);
                    ctx.charge(w, kOpNs);
                    ctx.lock(LockId::Closed);
                    ctx.charge(w, kOpNs);
                    std::int64_t inserted = 0, discarded = 0;
                    for (const SiblingMember &mem : g->members) {
                        if (core.closed.insert(mem.state)) {
                            core.parents.set(mem.state, g->parent);
                            core.approx_bytes.fetch_add(kAdmitBytes + kOpenEntryBytes,
                                                        std::memory_order_relaxed);
                            const OpenEntry &en = core.open.insert(mem.state, mem.h);
                            core.emit(w, ctx.now_ns(w), EventKind::OpenInsert, mem.state, mem.h,
                                      static_cast<std::int64_t>(en.seq));
                            ++inserted;
                        } else {
                            ++discarded;
                        }
                    }
                    ctx.unlock(LockId::Closed);
                    if (discarded > 0)
                        core.wasted.fetch_add(static_cast<std::uint64_t>(discarded),
                                              std::memory_order_relaxed);
                    core.emit(w, ctx.now_ns(w), EventKind::BatchInsert, g->parent, inserted,
                              discarded);
                    core.registry.finish(g->parent);
                    core.bump();
                    ctx.unlock(LockId::Open);
                }
                continue;
            }
            ctx.unlock(LockId::Uneval);
            core.emit(w, ctx.now_ns(w), EventKind::UnevalEmpty, kNoState);
        }

        co_await ctx.yield(w);
        ctx.lock(LockId::Open);
        ctx.charge(w, kOpNs);
        if (core.open.empty()) {
            const bool exhausted = core.registry.empty();
            ctx.unlock(LockId::Open);
            if (exhausted) {
                // Nothing queued and nothing in flight anywhere: no
                // batch can ever refill Open.
                if (core.try_stop(w, RunStatus::Exhausted, kNoState))
                    core.emit(w, ctx.now_ns(w), EventKind::Exhausted, kNoState);
                break;
            }
            begin_idle();
            ctx.idle_backoff(w);
            continue;
        }
        if (!core.constraint.satisfies(core.open.top(), core.registry)) {
            ctx.unlock(LockId::Open);
            begin_idle();
            ctx.idle_backoff(w);
            continue;
        }
        const OpenEntry e = core.open.pop();
        // Every pop occupies the registry until resolved — including a
        // goal pop, which otherwise could race an exhaustion claim.
        core.registry.start(e.state, e.h);
        core.emit(w, ctx.now_ns(w), EventKind::PopOpen, e.state, e.h,
                  static_cast<std::int64_t>(e.seq));
        core.bump();
        ctx.unlock(LockId::Open);
        end_idle();

        if (core.space.is_goal(e.state)) {
            if (core.try_stop(w, RunStatus::Solved, e.state))
                core.emit(w, ctx.now_ns(w), EventKind::GoalFound, e.state);
            break;
        }

        succs.clear();
        core.space.successors(e.state, succs);
        ctx.charge(w, kOpNs);
        core.emit(w, ctx.now_ns(w), EventKind::Generate, e.state,
                  static_cast<std::int64_t>(succs.size()));
        core.expansions.fetch_add(1, std::memory_order_relaxed);

        if (cfg.sge) {
            // Hand the whole sibling group to the shared evaluation
            // queue.  Successors already claimed by an earlier group
            // are dropped here: their heuristic is computed (at most)
            // once, elsewhere, and that group's batch owns insertion.
            co_await ctx.yield(w);
            ctx.lock(LockId::Uneval);
            ctx.charge(w, kOpNs);
            SiblingGroup &g = core.groups.emplace_back();
            g.parent = e.state;
            g.parent_h = e.h;
            for (StateId sid : succs)
                if (core.eval_claimed.insert(sid))
                    g.members.push_back({sid, -1, false});
            g.remaining = static_cast<int>(g.members.size());
            for (std::size_t i = 0; i < g.members.size(); ++i) {
                core.uneval.push(&g, i);
                core.approx_bytes.fetch_add(kUnevalItemBytes, std::memory_order_relaxed);
            }
            const bool nothing_to_do = g.members.empty();
            core.bump();
            ctx.unlock(LockId::Uneval);

            if (nothing_to_do) {
                // Dead end (or all successors claimed elsewhere): the
                // expansion resolves immediately.
                co_await ctx.yield(w);
                ctx.lock(LockId::Open);
                ctx.charge(w, kOpNs);
                core.emit(w, ctx.now_ns(w), EventKind::BatchInsert, e.state, 0, 0);
                core.registry.finish(e.state);
                core.bump();
                ctx.unlock(LockId::Open);
            }
            continue;
        }

        // Inline evaluation: this worker computes each fresh successor
        // itself.  With batching the results are parked and inserted
        // together; otherwise each goes straight into Open.
        kept.clear();
        std::int64_t discarded = 0;
        for (StateId sid : succs) {
            if (core.stopped())
                break;
            co_await ctx.yield(w);
            ctx.lock(LockId::Closed);
            ctx.charge(w, kOpNs);
            const bool fresh = core.closed.insert(sid);
            if (fresh)
                core.parents.set(sid, e.state);
            ctx.unlock(LockId::Closed);
            if (!fresh) {
                ++discarded;
                continue;
            }
            core.approx_bytes.fetch_add(kAdmitBytes, std::memory_order_relaxed);

            core.emit(w, ctx.now_ns(w), EventKind::EvalStart, sid);
            ctx.busy_work(w, delay);
            const HValue h = core.space.heuristic(sid);
            core.emit(w, ctx.now_ns(w), EventKind::EvalEnd, sid, h);
            core.evaluations.fetch_add(1, std::memory_order_relaxed);

            co_await ctx.yield(w);
            ctx.lock(LockId::Open);
            ctx.charge(w, kOpNs);
            if (core.batching) {
                core.registry.note_known_h(e.state, h);
                kept.emplace_back(sid, h);
            } else {
                const OpenEntry &en = core.open.insert(sid, h);
                core.emit(w, ctx.now_ns(w), EventKind::OpenInsert, sid, h,
                          static_cast<std::int64_t>(en.seq));
                core.approx_bytes.fetch_add(kOpenEntryBytes, std::memory_order_relaxed);
                core.bump();
            }
            ctx.unlock(LockId::Open);
        }
        if (core.stopped())
            break; // mid-expansion cut-off: the run's outcome is already fixed

        co_await ctx.yield(w);
        ctx.lock(LockId::Open);
        ctx.charge(w, kOpNs);
        std::int64_t inserted = static_cast<std::int64_t>(kept.size());
        for (const auto &[sid, h] : kept) {
            const OpenEntry &en = core.open.insert(sid, h);
            core.emit(w, ctx.now_ns(w), EventKind::OpenInsert, sid, h,
                      static_cast<std::int64_t>(en.seq));
            core.approx_bytes.fetch_add(kOpenEntryBytes, std::memory_order_relaxed);
        }
        if (!core.batching)
            inserted = static_cast<std::int64_t>(succs.size()) - discarded;
        core.emit(w, ctx.now_ns(w), EventKind::BatchInsert, e.state, inserted, discarded);
        core.registry.finish(e.state);
        core.bump();
        ctx.unlock(LockId::Open);
    }
    co_return;
}

// Evaluate and enqueue the initial state before any worker runs; its
// evaluation occupies worker 0's clock from 0 to the heuristic delay,
// which is also where every worker's clock starts.
void seed_initial_state(SearchCore &core) {
    const StateId init = core.space.initial();
    core.emit(0, 0, EventKind::EvalStart, init);
    const HValue h0 = core.space.heuristic(init);
    const std::int64_t t = core.cfg.heuristic_delay_ns;
    core.emit(0, t, EventKind::EvalEnd, init, h0);
    core.evaluations.store(1, std::memory_order_relaxed);

    core.closed.insert(init);
    core.parents.set(init, kNoState);
    if (core.cfg.sge)
        core.eval_claimed.insert(init);
    const OpenEntry &en = core.open.insert(init, h0);
    core.emit(0, t, EventKind::OpenInsert, init, h0, static_cast<std::int64_t>(en.seq));
    core.emit(0, t, EventKind::BatchInsert, kNoState, 1, 0);
    core.approx_bytes.store(kAdmitBytes + kOpenEntryBytes, std::memory_order_relaxed);
}

SearchResult collect_result(SearchCore &core) {
    SearchResult out;
    assert(core.stop.load() != kRunning);
    out.status = static_cast<RunStatus>(core.stop.load());
    out.wall_ns = core.stop_time_ns;
    out.expansions = core.expansions.load();
    out.evaluations = core.evaluations.load();
    out.wasted_evaluations = core.wasted.load();
    out.peak_open = core.open.peak_size();

    std::vector<TraceEvent> all;
    std::size_t total = 0;
    for (const auto &v : core.worker_events)
        total += v.size();
    all.reserve(total);
    for (auto &v : core.worker_events)
        all.insert(all.end(), v.begin(), v.end());
    std::sort(all.begin(), all.end(),
              [](const TraceEvent &x, const TraceEvent &y) { return x.seq < y.seq; });

    out.trace.topology_fingerprint = core.space.fingerprint();
    out.trace.engine_label = core.cfg.engine_label();
    out.trace.events = std::move(all);

    out.worker_idle_ns.assign(static_cast<std::size_t>(core.cfg.k), 0);
    std::vector<std::int64_t> span_start(static_cast<std::size_t>(core.cfg.k), -1);
    for (const auto &e : out.trace.events) {
        const auto w = static_cast<std::size_t>(e.worker);
        if (e.kind == EventKind::IdleStart) {
            span_start[w] = e.t_ns;
        } else if (e.kind == EventKind::IdleEnd && span_start[w] >= 0) {
            out.worker_idle_ns[w] += e.t_ns - span_start[w];
            span_start[w] = -1;
        }
    }
    for (std::size_t w = 0; w < span_start.size(); ++w)
        if (span_start[w] >= 0 && out.wall_ns > span_start[w])
            out.worker_idle_ns[w] += out.wall_ns - span_start[w];

    if (out.status == RunStatus::Solved)
        out.path = reconstruct_path(core.parents, core.goal_state);
    return out;
}

SearchResult run_parallel(const StateSpace &space, const EngineConfig &cfg) {
    std::unique_ptr<DeterministicContext> det;
    std::unique_ptr<RealContext> real;
    WorkerContext *ctx;
    if (cfg.scheduler == SchedulerKind::Deterministic) {
        det = std::make_unique<DeterministicContext>(cfg.k, cfg.sched_seed,
                                                     cfg.heuristic_delay_ns);
        ctx = det.get();
    } else {
        real = std::make_unique<RealContext>();
        ctx = real.get();
    }

    SearchCore core(space, cfg, *ctx);
    seed_initial_state(core);

    std::vector<WorkerTask> tasks;
    tasks.reserve(static_cast<std::size_t>(cfg.k));
    for (int w = 0; w < cfg.k; ++w)
        tasks.push_back(worker_loop(core, w));

    if (det)
        det->drive(tasks);
    else
        real->drive(tasks);

    return collect_result(core);
}

/*
  Sequential reference: one worker, one plain loop, no registry and no
  evaluation queue.  Kept deliberately independent of the parallel
  template so the two corroborate each other; shares only the passive
  containers and the cost/clock model supplied by the context.
*/
SearchResult run_sequential(const StateSpace &space, const EngineConfig &cfg) {
    std::unique_ptr<DeterministicContext> det;
    std::unique_ptr<RealContext> real;
    WorkerContext *ctx_ptr;
    if (cfg.scheduler == SchedulerKind::Deterministic) {
        det = std::make_unique<DeterministicContext>(1, cfg.sched_seed, cfg.heuristic_delay_ns);
        ctx_ptr = det.get();
    } else {
        real = std::make_unique<RealContext>();
        ctx_ptr = real.get();
    }
    WorkerContext &ctx = *ctx_ptr;
    const std::int64_t delay = cfg.heuristic_delay_ns;

    OpenList open;
    StateSet closed(space.id_bound());
    ParentMap parents(space.id_bound());

    SearchResult out;
    out.trace.topology_fingerprint = space.fingerprint();
    out.trace.engine_label = cfg.engine_label();
    auto &events = out.trace.events;
    std::uint64_t seq = 0;
    auto emit = [&](std::int64_t t, EventKind kind, StateId s, std::int64_t a = 0,
                    std::int64_t b = 0) { events.push_back({seq++, t, 0, kind, s, a, b}); };

    std::uint64_t evaluations = 1, expansions = 0;
    std::int64_t approx_bytes = kAdmitBytes + kOpenEntryBytes;

    const StateId init = space.initial();
    emit(0, EventKind::EvalStart, init);
    const HValue h0 = space.heuristic(init);
    emit(delay, EventKind::EvalEnd, init, h0);
    closed.insert(init);
    parents.set(init, kNoState);
    {
        const OpenEntry &en = open.insert(init, h0);
        emit(delay, EventKind::OpenInsert, init, h0, static_cast<std::int64_t>(en.seq));
        emit(delay, EventKind::BatchInsert, kNoState, 1, 0);
    }

    StateId goal = kNoState;
    std::vector<StateId> succs;
    for (;;) {
        if (cfg.time_limit_ns > 0 && ctx.now_ns(0) >= cfg.time_limit_ns) {
            out.status = RunStatus::TimeLimit;
            emit(ctx.now_ns(0), EventKind::LimitHit, kNoState, 0);
            break;
        }
        if (cfg.mem_limit_bytes > 0 && approx_bytes >= cfg.mem_limit_bytes) {
            out.status = RunStatus::MemLimit;
            emit(ctx.now_ns(0), EventKind::LimitHit, kNoState, 1);
            break;
        }
        if (open.empty()) {
            out.status = RunStatus::Exhausted;
            emit(ctx.now_ns(0), EventKind::Exhausted, kNoState);
            break;
        }
        ctx.charge(0, kOpNs);
        const OpenEntry e = open.pop();
        emit(ctx.now_ns(0), EventKind::PopOpen, e.state, e.h, static_cast<std::int64_t>(e.seq));
        if (space.is_goal(e.state)) {
            out.status = RunStatus::Solved;
            goal = e.state;
            emit(ctx.now_ns(0), EventKind::GoalFound, e.state);
            break;
        }

        succs.clear();
        space.successors(e.state, succs);
        ctx.charge(0, kOpNs);
        emit(ctx.now_ns(0), EventKind::Generate, e.state,
             static_cast<std::int64_t>(succs.size()));
        ++expansions;

        std::int64_t discarded = 0;
        std::vector<std::pair<StateId, HValue>> kept;
        for (StateId sid : succs) {
            ctx.charge(0, kOpNs);
            if (!closed.insert(sid)) {
                ++discarded;
                continue;
            }
            parents.set(sid, e.state);
            approx_bytes += kAdmitBytes;
            emit(ctx.now_ns(0), EventKind::EvalStart, sid);
            ctx.busy_work(0, delay);
            const HValue h = space.heuristic(sid);
            emit(ctx.now_ns(0), EventKind::EvalEnd, sid, h);
            ++evaluations;
            kept.emplace_back(sid, h);
        }
        ctx.charge(0, kOpNs);
        for (const auto &[sid, h] : kept) {
            const OpenEntry &en = open.insert(sid, h);
            emit(ctx.now_ns(0), EventKind::OpenInsert, sid, h,
                 static_cast<std::int64_t>(en.seq));
            approx_bytes += kOpenEntryBytes;
        }
        emit(ctx.now_ns(0), EventKind::BatchInsert, e.state,
             static_cast<std::int64_t>(kept.size()), discarded);
    }

    out.wall_ns = events.empty() ? 0 : events.back().t_ns;
    out.expansions = expansions;
    out.evaluations = evaluations;
    out.wasted_evaluations = 0;
    out.peak_open = open.peak_size();
    out.worker_idle_ns.assign(1, 0);
    if (out.status == RunStatus::Solved)
        out.path = reconstruct_path(parents, goal);
    return out;
}

} // namespace

SearchResult run_search(const StateSpace &space, const EngineConfig &cfg) {
    cfg.validate();
    if (cfg.algorithm == Algorithm::Gbfs)
        return run_sequential(space, cfg);
    return run_parallel(space, cfg);
}

std::string result_to_json(const SearchResult &result, const StateSpace &space,
                           const EngineConfig &cfg) {
    nlohmann::json j;
    j["status"] = to_string(result.status);
    j["solved"] = result.solved();
    j["engine"] = cfg.engine_label();
    j["constraint"] = cfg.effective_constraint() == ConstraintKind::Custom &&
                              cfg.custom_constraint
                          ? cfg.custom_constraint->label()
                          : to_string(cfg.effective_constraint());
    j["sge"] = cfg.sge;
    j["k"] = cfg.k;
    j["scheduler"] = to_string(cfg.scheduler);
    j["sched_seed"] = cfg.sched_seed;
    j["heuristic_delay_ns"] = cfg.heuristic_delay_ns;
    j["topology"] = space.name();
    j["fingerprint"] = space.fingerprint();
    j["expansions"] = result.expansions;
    j["evaluations"] = result.evaluations;
    j["wasted_evaluations"] = result.wasted_evaluations;
    j["wall_ns"] = result.wall_ns;
    j["wall_s"] = result.wall_seconds();
    j["eval_rate"] = result.eval_rate();
    j["peak_open"] = result.peak_open;
    j["worker_idle_ns"] = result.worker_idle_ns;
    j["path"] = result.path;
    j["path_length"] = result.path.size();
    return j.dump(2);
}

} // namespace psearch
