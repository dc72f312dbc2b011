#pragma once

// Exhaustive enumeration of every machine choice at every decision point for
// tiny instances, under the same event semantics as the simulator but with
// an independent implementation. Used as a test oracle and by `llmshop oracle`.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "llmshop/instance.hpp"
#include "llmshop/rules.hpp"
#include "llmshop/sim_types.hpp"

namespace llmshop {

struct OracleLimits {
    int max_jobs = 3;
    int max_machines = 3;
    int max_ops_per_job = 3;
    std::size_t max_nodes = 1'000'000;
};

class OracleLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ReachableSchedule {
    BufferRule buffer_rule = BufferRule::Fifo;
    std::vector<int> choices;         // awarded machine per decision, in decision order
    std::vector<GanttEntry> entries;  // sorted by (job, op)
    Time makespan = 0;
};

struct OracleResult {
    Time min_makespan = 0;
    std::map<BufferRule, Time> min_makespan_by_rule;
    std::vector<ReachableSchedule> reachable;
    std::size_t nodes = 0;

    /// True when some leaf under `rule` has exactly these entries (any order).
    bool contains(BufferRule rule, std::vector<GanttEntry> entries) const;
    /// The leaf reached by this exact choice sequence, or nullptr.
    const ReachableSchedule* find_trace(BufferRule rule, const std::vector<int>& choices) const;
};

OracleResult oracle_enumerate(const Instance& inst, const OracleLimits& limits = {});

}  // namespace llmshop
