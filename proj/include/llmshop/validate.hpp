#pragma once

// Independent schedule checks. Nothing here reuses simulator state: every
// check is recomputed from the instance and the schedule alone.

#include <string>
#include <vector>

#include "llmshop/instance.hpp"
#include "llmshop/rules.hpp"
#include "llmshop/sim_types.hpp"

namespace llmshop {

struct ScheduleViolation {
    enum class Kind {
        UnknownOperation,
        DuplicateEntry,
        MissingEntry,
        NotCapable,
        WrongDuration,
        NegativeStart,
        Precedence,
        Overlap,
        MakespanMismatch,
        // decision-log audits
        LogMismatch,
        NotCandidate,
        IncompleteBids,
        ClockRegression,
        IdleWithWork,
        SuggestionShape,
    };

    Kind kind;
    std::string message;
};

/// One entry per (job, op); capable machine; duration matches; precedence
/// within jobs; no overlap per machine; makespan == max end.
std::vector<ScheduleViolation> validate_schedule(const Schedule& schedule, const Instance& inst);

/// Decision-log audit: one record per entry, award matches the entry's
/// machine, award is a candidate, one bid per candidate, non-decreasing
/// timestamps, and suggestion text present exactly for llm decisions.
std::vector<ScheduleViolation> audit_decision_log(const Schedule& schedule, const Instance& inst);

/// Non-delay: from the moment a workpiece was awarded to a machine until it
/// started there, that machine was busy without gaps.
std::vector<ScheduleViolation> check_non_delay(const Schedule& schedule);

struct AuditReplayResult {
    std::size_t checked = 0;
    std::size_t mismatches = 0;
};

/// Re-applies each heuristic or fallback decision's rule (SMPT or WINQ) to the
/// stored bids and compares with the recorded award. Random and LLM decisions
/// are skipped.
AuditReplayResult audit_replay(const Schedule& schedule, WinqWorkload workload = WinqWorkload::ResidualPlusQueue);

}  // namespace llmshop
