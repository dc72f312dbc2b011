#include "llmshop/simulation.hpp"

#include <algorithm>
#include <stdexcept>

#include "llmshop/llm.hpp"

namespace llmshop {

Time MachineState::queue_work() const {
    Time total = 0;
    for (const auto& wp : buffer) total += wp.duration_here;
    return total;
}

Time compute_makespan(const std::vector<GanttEntry>& entries) {
    Time makespan = 0;
    for (const auto& e : entries) makespan = std::max(makespan, e.end);
    return makespan;
}

SimEvent EventCalendar::pop() {
    SimEvent ev = queue_.top();
    queue_.pop();
    return ev;
}

SimState SimState::initial(const Instance& inst, std::uint64_t seed) {
    SimState s;
    s.instance = &inst;
    s.rng = SplitMix64(seed);
    s.machines.resize(static_cast<std::size_t>(inst.num_machines));
    for (int m = 0; m < inst.num_machines; ++m) s.machines[static_cast<std::size_t>(m)].machine_id = m;
    s.completed_ops.assign(inst.jobs.size(), 0);
    for (const auto& job : inst.jobs) {
        s.calendar.push({0, SimEvent::Kind::JobRelease, -1, job.job_id, 0});
    }
    s.entries.reserve(inst.operation_count());
    s.decision_log.reserve(inst.operation_count());
    return s;
}

std::unique_ptr<DecisionBackend> make_backend(const PolicyConfig& cfg) {
    if (cfg.machine_rule != MachineRule::Llm) {
        return std::make_unique<HeuristicBackend>(cfg.machine_rule, cfg.winq_workload);
    }
    if (!cfg.llm) throw ConfigError("machine rule llm requires an LLM configuration");
    return std::make_unique<LlmBackend>(*cfg.llm, cfg.winq_workload);
}

Simulator::Simulator(const Instance& inst, const PolicyConfig& cfg, DecisionBackend& backend)
    : inst_(inst), buffer_rule_(cfg.buffer_rule), backend_(backend), state_(SimState::initial(inst, cfg.seed)) {}

void Simulator::step() {
    if (state_.calendar.empty()) throw std::logic_error("step() on an empty event calendar");
    const SimEvent ev = state_.calendar.pop();
    if (ev.time < state_.clock) throw std::logic_error("event calendar went back in time");
    state_.clock = ev.time;

    if (ev.kind == SimEvent::Kind::JobRelease) {
        dispatch(ev.job_id, 0);
        return;
    }

    MachineState& m = state_.machines.at(static_cast<std::size_t>(ev.machine_id));
    if (!m.active || m.active->job_id != ev.job_id || m.active->op_index != ev.op_index || m.active->end != ev.time) {
        throw std::logic_error("completion event for machine " + std::to_string(ev.machine_id) +
                               " does not match its running operation");
    }
    m.active.reset();
    const int next_op = ev.op_index + 1;
    state_.completed_ops[static_cast<std::size_t>(ev.job_id)] = next_op;

    // Route the departing workpiece first so the negotiation sees this
    // machine as idle, then let the machine pull new work.
    if (static_cast<std::size_t>(next_op) < inst_.jobs[static_cast<std::size_t>(ev.job_id)].operations.size()) {
        dispatch(ev.job_id, next_op);
    }
    if (m.idle() && !m.buffer.empty()) start_next(m);
}

void Simulator::dispatch(int job_id, int op_index) {
    const Decision decision = negotiate(job_id, op_index, state_, backend_);
    MachineState& winner = state_.machines[static_cast<std::size_t>(decision.machine_id)];
    const Time duration = inst_.operation(job_id, op_index).alternatives.at(decision.machine_id);
    winner.buffer.push_back({job_id, op_index, state_.clock, duration});
    if (winner.idle()) start_next(winner);
}

void Simulator::start_next(MachineState& machine) {
    const std::size_t idx = select_from_buffer(machine.buffer, buffer_rule_);
    const BufferedWorkpiece wp = machine.buffer[idx];
    machine.buffer.erase(machine.buffer.begin() + static_cast<std::ptrdiff_t>(idx));

    const Time end = state_.clock + wp.duration_here;
    machine.active = ActiveOperation{wp.job_id, wp.op_index, state_.clock, end};
    state_.entries.push_back({wp.job_id, wp.op_index, machine.machine_id, state_.clock, end});
    state_.calendar.push({end, SimEvent::Kind::OperationComplete, machine.machine_id, wp.job_id, wp.op_index});
}

Schedule Simulator::run() {
    while (!done()) step();
    for (std::size_t j = 0; j < inst_.jobs.size(); ++j) {
        if (static_cast<std::size_t>(state_.completed_ops[j]) != inst_.jobs[j].operations.size()) {
            throw std::logic_error("simulation drained with job " + std::to_string(j) + " unfinished");
        }
    }
    Schedule s;
    s.entries = state_.entries;
    s.makespan = compute_makespan(s.entries);
    s.decision_log = state_.decision_log;
    return s;
}

Schedule run_simulation(const Instance& inst, const PolicyConfig& cfg, DecisionBackend& backend) {
    Simulator sim(inst, cfg, backend);
    return sim.run();
}

Schedule run_simulation(const Instance& inst, const PolicyConfig& cfg) {
    auto backend = make_backend(cfg);
    return run_simulation(inst, cfg, *backend);
}

}  // namespace llmshop
