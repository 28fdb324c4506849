#include "psearch/engine/config.hpp"

#include "psearch/engine/constraint.hpp"

namespace psearch {

std::string to_string(Algorithm a) {
    switch (a) {
    case Algorithm::Gbfs: return "gbfs";
    case Algorithm::Kpgbfs: return "kpgbfs";
    case Algorithm::Cpgbfs: return "cpgbfs";
    }
    return "?";
}

std::string to_string(ConstraintKind c) {
    switch (c) {
    case ConstraintKind::None: return "none";
    case ConstraintKind::InflightMinH: return "inflight-minh";
    case ConstraintKind::Custom: return "custom";
    }
    return "?";
}

std::string to_string(SchedulerKind s) {
    return s == SchedulerKind::Real ? "real" : "det";
}

Algorithm algorithm_from_string(const std::string &s) {
    if (s == "gbfs")
        return Algorithm::Gbfs;
    if (s == "kpgbfs")
        return Algorithm::Kpgbfs;
    if (s == "cpgbfs")
        return Algorithm::Cpgbfs;
    throw ValidationError("unknown engine '" + s + "' (expected gbfs, kpgbfs, or cpgbfs)");
}

ConstraintKind constraint_kind_from_string(const std::string &s) {
    if (s == "none")
        return ConstraintKind::None;
    if (s == "inflight-minh")
        return ConstraintKind::InflightMinH;
    if (s == "custom")
        return ConstraintKind::Custom;
    throw ValidationError("unknown constraint '" + s +
                          "' (expected none, inflight-minh, or custom)");
}

SchedulerKind scheduler_kind_from_string(const std::string &s) {
    if (s == "real")
        return SchedulerKind::Real;
    if (s == "det" || s == "deterministic")
        return SchedulerKind::Deterministic;
    throw ValidationError("unknown scheduler '" + s + "' (expected real or det)");
}

void EngineConfig::validate() const {
    if (k < 1)
        throw ValidationError("worker count must be at least 1");
    if (algorithm == Algorithm::Gbfs) {
        if (k != 1)
            throw ValidationError("gbfs is the sequential reference; worker count must be 1");
        if (sge)
            throw ValidationError("gbfs does not support separate evaluation");
        if (constraint != ConstraintKind::None)
            throw ValidationError("gbfs does not take an expansion constraint");
    }
    if (heuristic_delay_ns < 0)
        throw ValidationError("heuristic delay must be non-negative");
    if (time_limit_ns < 0 || mem_limit_bytes < 0)
        throw ValidationError("limits must be non-negative");
    if (effective_constraint() == ConstraintKind::Custom && !custom_constraint)
        throw ValidationError("constraint 'custom' requires a predicate object");
}

std::string EngineConfig::engine_label() const {
    std::string label = to_string(algorithm);
    const ConstraintKind eff = effective_constraint();
    if (algorithm == Algorithm::Cpgbfs) {
        label += "[";
        if (eff == ConstraintKind::Custom && custom_constraint)
            label += custom_constraint->label();
        else
            label += to_string(eff);
        label += "]";
    }
    if (sge)
        label += "+sge";
    return label;
}

const ExpansionConstraint &no_constraint() {
    static const NoConstraint instance;
    return instance;
}

const ExpansionConstraint &inflight_minh_constraint() {
    static const InflightMinHConstraint instance;
    return instance;
}

} // namespace psearch
