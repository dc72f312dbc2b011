#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "llmshop/documents.hpp"
#include "llmshop/instance.hpp"

namespace llmshop {

/// A workpiece waiting in a machine's buffer for operation `op_index`.
struct BufferedWorkpiece {
    int job_id = 0;
    int op_index = 0;
    Time arrival_time = 0;
    Time duration_here = 0;

    bool operator==(const BufferedWorkpiece&) const = default;
};

struct ActiveOperation {
    int job_id = 0;
    int op_index = 0;
    Time start = 0;
    Time end = 0;

    bool operator==(const ActiveOperation&) const = default;
};

struct MachineState {
    int machine_id = 0;
    std::optional<ActiveOperation> active;   // nullopt == Idle
    std::vector<BufferedWorkpiece> buffer;   // insertion order

    bool idle() const { return !active.has_value(); }
    Time queue_work() const;
};

struct GanttEntry {
    int job_id = 0;
    int op_index = 0;
    int machine_id = 0;
    Time start = 0;
    Time end = 0;

    bool operator==(const GanttEntry&) const = default;
    auto operator<=>(const GanttEntry&) const = default;
};

struct Schedule {
    std::vector<GanttEntry> entries;  // in dispatch order
    Time makespan = 0;
    std::vector<DecisionRecord> decision_log;

    bool operator==(const Schedule&) const = default;
};

/// max end over entries, 0 when empty.
Time compute_makespan(const std::vector<GanttEntry>& entries);

}  // namespace llmshop
