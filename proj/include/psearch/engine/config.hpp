#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "psearch/core/topology.hpp"

namespace psearch {

class ExpansionConstraint;

enum class Algorithm { Gbfs, Kpgbfs, Cpgbfs };
enum class ConstraintKind { None, InflightMinH, Custom };
enum class SchedulerKind { Real, Deterministic };

std::string to_string(Algorithm a);
std::string to_string(ConstraintKind c);
std::string to_string(SchedulerKind s);
Algorithm algorithm_from_string(const std::string &s);
ConstraintKind constraint_kind_from_string(const std::string &s);
SchedulerKind scheduler_kind_from_string(const std::string &s);

/*
  One engine run, fully specified.  `kpgbfs` is the unconstrained
  special case of the constrained template (its constraint is forced to
  none); `gbfs` is the sequential reference and only accepts k == 1.
  The deterministic scheduler replays the same cooperative interleaving
  for equal (topology, config, sched_seed).
*/
struct EngineConfig {
    Algorithm algorithm = Algorithm::Gbfs;
    ConstraintKind constraint = ConstraintKind::None;
    bool sge = false;
    int k = 1;
    std::int64_t heuristic_delay_ns = 50'000;
    SchedulerKind scheduler = SchedulerKind::Real;
    std::uint64_t sched_seed = 0;
    std::int64_t time_limit_ns = 0;   // 0: unlimited
    std::int64_t mem_limit_bytes = 0; // 0: unlimited
    // Drop-in predicate used when constraint == Custom.
    std::shared_ptr<const ExpansionConstraint> custom_constraint;

    // Throws ValidationError on inconsistent settings.
    void validate() const;

    // The constraint actually applied (kpgbfs forces none).
    ConstraintKind effective_constraint() const {
        return algorithm == Algorithm::Kpgbfs ? ConstraintKind::None : constraint;
    }

    // Row label for reports: gbfs, kpgbfs, kpgbfs+sge, cpgbfs[inflight-minh]+sge, ...
    std::string engine_label() const;
};

} // namespace psearch
