#pragma once

#include <queue>
#include <tuple>
#include <vector>

#include "llmshop/instance.hpp"
#include "llmshop/rng.hpp"
#include "llmshop/sim_types.hpp"

namespace llmshop {

struct SimEvent {
    enum class Kind { JobRelease = 0, OperationComplete = 1 };

    Time time = 0;
    Kind kind = Kind::JobRelease;
    int machine_id = -1;  // -1 for JobRelease (the warehouse)
    int job_id = 0;
    int op_index = 0;

    // Total order: (time, kind, machine, job). Releases precede completions at
    // equal times; a machine holds at most one completion per timestamp.
    auto key() const { return std::tuple(time, static_cast<int>(kind), machine_id, job_id); }
};

class EventCalendar {
public:
    void push(const SimEvent& event) { queue_.push(event); }
    SimEvent pop();
    const SimEvent& top() const { return queue_.top(); }
    bool empty() const { return queue_.empty(); }
    std::size_t size() const { return queue_.size(); }

private:
    struct Later {
        bool operator()(const SimEvent& a, const SimEvent& b) const { return a.key() > b.key(); }
    };
    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> queue_;
};

struct SimState {
    const Instance* instance = nullptr;
    Time clock = 0;
    std::vector<MachineState> machines;
    EventCalendar calendar;
    std::vector<int> completed_ops;  // per job
    SplitMix64 rng;
    std::vector<GanttEntry> entries;
    std::vector<DecisionRecord> decision_log;

    /// Fresh state at t=0 with one JobRelease per job queued.
    static SimState initial(const Instance& inst, std::uint64_t seed);
};

}  // namespace llmshop
