#pragma once

#include <atomic>
#include <cassert>
#include <chrono>
#include <coroutine>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "psearch/core/rng.hpp"

namespace psearch {

enum class LockId : int { Open = 0, Closed = 1, Uneval = 2, Result = 3 };
inline constexpr int kLockCount = 4;

/*
  The worker loop is written once, as a coroutine, against this
  interface.  Two drivers exist:

   - RealScheduler runs each worker coroutine on its own OS thread;
     yields are no-ops, locks are real mutexes, evaluation delay is a
     busy wait, time is the monotonic clock.

   - DeterministicScheduler runs all workers on the calling thread and
     resumes, at every yield point, the worker with the smallest
     simulated clock (seeded RNG breaking ties).  Locks only assert
     discipline (atomicity is a fact of cooperative stepping), cheap
     operations advance the simulated clock by a fixed cost plus seeded
     jitter, evaluation advances it by the configured delay.  Identical
     (topology, config, seed) replays an identical schedule.

  Yield points sit before every exclusive-section acquisition and
  between successor evaluations, and never inside a critical section —
  a worker holding a lock runs to the matching unlock without
  suspending, which both drivers rely on.
*/
class WorkerContext {
public:
    virtual ~WorkerContext() = default;

    virtual void lock(LockId id) = 0;
    virtual void unlock(LockId id) = 0;

    // Simulated-time cost of a cheap operation (real driver: free).
    virtual void charge(int worker, std::int64_t ns) = 0;
    // Heuristic computation delay.
    virtual void busy_work(int worker, std::int64_t ns) = 0;
    // Back off after a poll that found nothing to do.
    virtual void idle_backoff(int worker) = 0;

    virtual std::int64_t now_ns(int worker) = 0;

    // Awaiter plumbing: when yield_ready() is false the worker suspends
    // and hands its continuation to the driver.
    virtual bool yield_ready() const = 0;
    virtual void on_suspend(int worker, std::coroutine_handle<> h) = 0;

    // Bumped by the engine whenever shared search state changes; lets
    // the deterministic driver skip idle re-polls that cannot succeed.
    std::atomic<std::uint64_t> structure_version{0};

    struct Yield {
        WorkerContext &ctx;
        int worker;
        bool await_ready() const noexcept { return ctx.yield_ready(); }
        void await_suspend(std::coroutine_handle<> h) { ctx.on_suspend(worker, h); }
        void await_resume() const noexcept {}
    };

    Yield yield(int worker) { return Yield{*this, worker}; }
};

// Move-only coroutine handle for one worker's run of the search loop.
struct WorkerTask {
    struct promise_type {
        std::exception_ptr error;

        WorkerTask get_return_object() {
            return WorkerTask{std::coroutine_handle<promise_type>::from_promise(*this)};
        }
        std::suspend_always initial_suspend() noexcept { return {}; }
        std::suspend_always final_suspend() noexcept { return {}; }
        void return_void() {}
        void unhandled_exception() { error = std::current_exception(); }
    };

    std::coroutine_handle<promise_type> handle;

    explicit WorkerTask(std::coroutine_handle<promise_type> h = {}) : handle(h) {}
    WorkerTask(WorkerTask &&other) noexcept : handle(other.handle) { other.handle = {}; }
    WorkerTask &operator=(WorkerTask &&other) noexcept {
        if (this != &other) {
            if (handle)
                handle.destroy();
            handle = other.handle;
            other.handle = {};
        }
        return *this;
    }
    WorkerTask(const WorkerTask &) = delete;
    WorkerTask &operator=(const WorkerTask &) = delete;
    ~WorkerTask() {
        if (handle)
            handle.destroy();
    }

    bool done() const { return handle.done(); }
    void resume() { handle.resume(); }
    void rethrow_if_failed() const {
        if (handle.promise().error)
            std::rethrow_exception(handle.promise().error);
    }
};

class RealContext final : public WorkerContext {
public:
    RealContext() : start_(std::chrono::steady_clock::now()) {}

    void lock(LockId id) override { mutexes_[static_cast<int>(id)].lock(); }
    void unlock(LockId id) override { mutexes_[static_cast<int>(id)].unlock(); }
    void charge(int, std::int64_t) override {}

    void busy_work(int, std::int64_t ns) override {
        if (ns <= 0)
            return;
        const auto until = std::chrono::steady_clock::now() + std::chrono::nanoseconds(ns);
        while (std::chrono::steady_clock::now() < until) {
            // burn cycles; this stands in for heuristic computation
        }
    }

    void idle_backoff(int) override {
        // Be polite to whoever holds actual work, especially when
        // workers outnumber cores.
        std::this_thread::yield();
    }

    std::int64_t now_ns(int) override {
        return std::chrono::duration_cast<std::chrono::nanoseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

    bool yield_ready() const override { return true; }
    void on_suspend(int, std::coroutine_handle<>) override {
        assert(false && "real driver never suspends");
    }

    // Runs every task to completion on its own thread, then rethrows
    // the first worker failure, if any.
    void drive(std::vector<WorkerTask> &tasks) {
        std::vector<std::thread> threads;
        threads.reserve(tasks.size());
        for (auto &task : tasks)
            threads.emplace_back([&task] {
                while (!task.done())
                    task.resume();
            });
        for (auto &t : threads)
            t.join();
        for (auto &task : tasks)
            task.rethrow_if_failed();
    }

private:
    std::chrono::steady_clock::time_point start_;
    std::mutex mutexes_[kLockCount];
};

class DeterministicContext final : public WorkerContext {
public:
    static constexpr std::int64_t kOpCostNs = 1000;
    static constexpr std::int64_t kPollCostNs = 1000;

    DeterministicContext(int workers, std::uint64_t seed, std::int64_t start_clock_ns)
        : rng_(seed * 0x9e3779b97f4a7c15ull + 0x6a09e667f3bcc909ull), workers_(workers) {
        clocks_.assign(static_cast<std::size_t>(workers), start_clock_ns);
        handles_.assign(static_cast<std::size_t>(workers), {});
        last_poll_version_.assign(static_cast<std::size_t>(workers), UINT64_MAX);
    }

    void lock(LockId id) override {
        assert(!held_[static_cast<int>(id)]);
        held_[static_cast<int>(id)] = true;
    }
    void unlock(LockId id) override {
        assert(held_[static_cast<int>(id)]);
        held_[static_cast<int>(id)] = false;
    }

    void charge(int worker, std::int64_t ns) override {
        clocks_[static_cast<std::size_t>(worker)] += ns + jitter();
    }

    void busy_work(int worker, std::int64_t ns) override {
        if (ns > 0)
            clocks_[static_cast<std::size_t>(worker)] += ns;
    }

    void idle_backoff(int worker) override {
        const auto w = static_cast<std::size_t>(worker);
        const std::uint64_t version = structure_version.load(std::memory_order_relaxed);
        std::int64_t next = clocks_[w] + kPollCostNs + jitter();
        if (last_poll_version_[w] == version) {
            // Nothing changed since the last failed poll: re-polling
            // before any other worker acts cannot succeed, so jump to
            // just after the earliest other worker.
            std::int64_t earliest = std::numeric_limits<std::int64_t>::max();
            for (std::size_t v = 0; v < clocks_.size(); ++v)
                if (v != w && !finished(v))
                    earliest = std::min(earliest, clocks_[v]);
            if (earliest != std::numeric_limits<std::int64_t>::max())
                next = std::max(next, earliest + 1);
        }
        last_poll_version_[w] = version;
        clocks_[w] = next;
    }

    std::int64_t now_ns(int worker) override { return clocks_[static_cast<std::size_t>(worker)]; }

    bool yield_ready() const override { return false; }

    void on_suspend(int worker, std::coroutine_handle<> h) override {
        for (int i = 0; i < kLockCount; ++i)
            assert(!held_[i] && "suspending inside a critical section");
        handles_[static_cast<std::size_t>(worker)] = h;
    }

    // Cooperative loop: always resume the earliest-clock live worker,
    // breaking exact ties with the seeded RNG.
    void drive(std::vector<WorkerTask> &tasks) {
        tasks_ = &tasks;
        for (auto &task : tasks)
            if (task.handle.promise().error)
                task.rethrow_if_failed();
        while (true) {
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            int ties = 0;
            int pick = -1;
            for (int w = 0; w < workers_; ++w) {
                if (finished(static_cast<std::size_t>(w)))
                    continue;
                const std::int64_t c = clocks_[static_cast<std::size_t>(w)];
                if (c < best) {
                    best = c;
                    ties = 1;
                    pick = w;
                } else if (c == best) {
                    ++ties;
                    if (uniform_below(rng_, static_cast<std::uint64_t>(ties)) == 0)
                        pick = w;
                }
            }
            if (pick < 0)
                break;
            auto &task = tasks[static_cast<std::size_t>(pick)];
            if (auto h = handles_[static_cast<std::size_t>(pick)]; h) {
                handles_[static_cast<std::size_t>(pick)] = {};
                h.resume();
            } else {
                task.resume(); // first step
            }
            if (task.done())
                task.rethrow_if_failed();
        }
        tasks_ = nullptr;
    }

private:
    bool finished(std::size_t w) const {
        return tasks_ && (*tasks_)[w].done();
    }

    std::int64_t jitter() { return static_cast<std::int64_t>(rng_() & 0xff); }

    std::mt19937_64 rng_;
    int workers_;
    std::vector<std::int64_t> clocks_;
    std::vector<std::coroutine_handle<>> handles_;
    std::vector<std::uint64_t> last_poll_version_;
    std::vector<WorkerTask> *tasks_ = nullptr;
    bool held_[kLockCount] = {};
};

} // namespace psearch
