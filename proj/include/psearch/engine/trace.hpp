#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "psearch/core/topology.hpp"

namespace psearch {

/*
  Event stream of one run, merged across workers in engine
  serialization order (the global emission sequence `seq`, assigned
  while the relevant exclusive section is held).  Simulated timestamps
  of different workers may interleave across that order — a worker
  whose clock lags can serialize after one whose clock is ahead — so
  consumers that care about overlap sort by t_ns themselves.
  Deterministic runs dump to byte-identical logs for equal (topology,
  config, seed).

  Payload fields by kind:
    PopOpen      state popped, a = h, b = open insertion seq
    Generate     state expanded, a = number of successors
    EvalStart    state being evaluated
    EvalEnd      state evaluated, a = h
    OpenInsert   state inserted, a = h, b = open insertion seq
    BatchInsert  a = inserted count, b = discarded count; state = parent
    UnevalEmpty  separate-evaluation mode: the empty poll that licensed
                 the immediately following PopOpen of the same worker
    IdleStart/IdleEnd   bounds of a span with no work acquired
    GoalFound    state = goal popped
    Exhausted    open empty with nothing in flight: no solution
    LimitHit     a = 0 for time, 1 for memory
*/
enum class EventKind : std::uint8_t {
    PopOpen,
    Generate,
    EvalStart,
    EvalEnd,
    OpenInsert,
    BatchInsert,
    UnevalEmpty,
    IdleStart,
    IdleEnd,
    GoalFound,
    Exhausted,
    LimitHit,
};

const char *to_string(EventKind kind);

struct TraceEvent {
    std::uint64_t seq = 0; // global emission order
    std::int64_t t_ns = 0;
    std::int32_t worker = 0;
    EventKind kind = EventKind::PopOpen;
    StateId state = kNoState;
    std::int64_t a = 0;
    std::int64_t b = 0;
};

struct SearchTrace {
    std::uint64_t topology_fingerprint = 0;
    std::string engine_label;
    std::vector<TraceEvent> events;

    // States of Generate events, in order: what the run actually expanded.
    std::vector<StateId> expanded_sequence() const;
    // States of PopOpen events, in order (includes a popped goal).
    std::vector<StateId> popped_sequence() const;
};

// Line-delimited dump; byte-stable given a stable event list.
void dump_trace(const SearchTrace &trace, std::ostream &out);
std::string trace_to_string(const SearchTrace &trace);

// Largest number of evaluation intervals overlapping at one instant.
int peak_simultaneous_evaluations(const SearchTrace &trace);

// No state is ever the subject of two EvalStart events.
bool check_eval_uniqueness(const SearchTrace &trace, std::string *why = nullptr);

// Every OpenInsert sits inside its group's batch: between a batch's
// first OpenInsert and its BatchInsert marker no other worker pops or
// inserts.  Meaningful on deterministic traces, where event order is a
// faithful serialization of the cooperative schedule.
bool check_batch_atomicity(const SearchTrace &trace, std::string *why = nullptr);

// Separate-evaluation precedence: each PopOpen is immediately preceded,
// among its worker's non-idle events, by an UnevalEmpty observation.
bool check_uneval_precedence(const SearchTrace &trace, std::string *why = nullptr);

} // namespace psearch
