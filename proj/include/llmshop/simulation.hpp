#pragma once

#include <memory>

#include "llmshop/negotiation.hpp"
#include "llmshop/policies.hpp"
#include "llmshop/sim_state.hpp"

namespace llmshop {

/// Builds the decision backend named by cfg.machine_rule. For Llm this
/// validates the LlmConfig and throws ConfigError on problems.
std::unique_ptr<DecisionBackend> make_backend(const PolicyConfig& cfg);

/// Discrete-event engine. All jobs are released at t=0 in ascending job id;
/// each completion first dispatches the finished job's next operation, then
/// lets the freed machine pull from its buffer.
class Simulator {
public:
    Simulator(const Instance& inst, const PolicyConfig& cfg, DecisionBackend& backend);

    bool done() const { return state_.calendar.empty(); }

    /// Processes the earliest pending event. Precondition: !done().
    void step();

    const SimState& state() const { return state_; }

    /// Runs to completion and returns the realized schedule.
    Schedule run();

private:
    void dispatch(int job_id, int op_index);
    void start_next(MachineState& machine);

    const Instance& inst_;
    BufferRule buffer_rule_;
    DecisionBackend& backend_;
    SimState state_;
};

Schedule run_simulation(const Instance& inst, const PolicyConfig& cfg);
Schedule run_simulation(const Instance& inst, const PolicyConfig& cfg, DecisionBackend& backend);

}  // namespace llmshop
