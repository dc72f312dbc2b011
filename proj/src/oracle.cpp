#include "llmshop/oracle.hpp"

#include <algorithm>
#include <limits>
#include <tuple>


namespace llmshop {

namespace {

struct Pending {
    Time time;
    int rank;     // 0 release, 1 completion
    int machine;  // -1 for release
    int job;
    int op;
};

struct Node {
    Time clock = 0;
    std::vector<Pending> pending;  // unsorted; min found by scan
    std::vector<int> running_job;  // per machine, -1 idle
    std::vector<std::vector<BufferedWorkpiece>> queues;
    std::vector<int> choices;
    std::vector<GanttEntry> entries;
};

class Enumerator {
public:
    Enumerator(const Instance& inst, const OracleLimits& limits, BufferRule rule, OracleResult& out)
        : inst_(inst), limits_(limits), rule_(rule), out_(out) {}

    void run() {
        Node root;
        root.running_job.assign(static_cast<std::size_t>(inst_.num_machines), -1);
        root.queues.resize(static_cast<std::size_t>(inst_.num_machines));
        for (const auto& job : inst_.jobs) root.pending.push_back({0, 0, -1, job.job_id, 0});
        advance(std::move(root));
    }

private:
    void advance(Node n) {
        while (!n.pending.empty()) {
            auto it = std::min_element(n.pending.begin(), n.pending.end(), [](const Pending& a, const Pending& b) {
                return std::tie(a.time, a.rank, a.machine, a.job) < std::tie(b.time, b.rank, b.machine, b.job);
            });
            const Pending ev = *it;
            n.pending.erase(it);
            n.clock = ev.time;

            if (ev.rank == 0) {
                branch(std::move(n), ev.job, 0, -1);
                return;
            }
            n.running_job[static_cast<std::size_t>(ev.machine)] = -1;
            const auto& ops = inst_.jobs[static_cast<std::size_t>(ev.job)].operations;
            if (static_cast<std::size_t>(ev.op + 1) < ops.size()) {
                branch(std::move(n), ev.job, ev.op + 1, ev.machine);
                return;
            }
            pull(n, ev.machine);
        }
        leaf(std::move(n));
    }

    // Decision point: try every capable machine, then finish the event that
    // triggered it (the freed machine, if any, pulls from its queue).
    void branch(Node n, int job, int op, int freed_machine) {
        if (++out_.nodes > limits_.max_nodes) {
            throw OracleLimitExceeded("oracle exceeded " + std::to_string(limits_.max_nodes) + " decision nodes");
        }
        for (const auto& [machine, duration] : inst_.operation(job, op).alternatives) {
            Node child = n;
            child.choices.push_back(machine);
            child.queues[static_cast<std::size_t>(machine)].push_back({job, op, child.clock, duration});
            pull(child, machine);
            if (freed_machine >= 0) pull(child, freed_machine);
            advance(std::move(child));
        }
    }

    void pull(Node& n, int machine) {
        auto& queue = n.queues[static_cast<std::size_t>(machine)];
        if (n.running_job[static_cast<std::size_t>(machine)] != -1 || queue.empty()) return;
        const std::size_t pick = choose(queue);
        const BufferedWorkpiece wp = queue[pick];
        queue.erase(queue.begin() + static_cast<std::ptrdiff_t>(pick));
        n.running_job[static_cast<std::size_t>(machine)] = wp.job_id;
        n.entries.push_back({wp.job_id, wp.op_index, machine, n.clock, n.clock + wp.duration_here});
        n.pending.push_back({n.clock + wp.duration_here, 1, machine, wp.job_id, wp.op_index});
    }

    // Own copy of the buffer rules so the oracle shares no dispatch code
    // with the simulator.
    std::size_t choose(const std::vector<BufferedWorkpiece>& queue) const {
        if (rule_ == BufferRule::Fifo) return 0;
        if (rule_ == BufferRule::Filo) return queue.size() - 1;
        std::size_t best = 0;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            if (queue[i].duration_here < queue[best].duration_here) best = i;
        }
        return best;
    }

    void leaf(Node n) {
        ReachableSchedule r;
        r.buffer_rule = rule_;
        r.choices = std::move(n.choices);
        r.entries = std::move(n.entries);
        std::sort(r.entries.begin(), r.entries.end(), [](const GanttEntry& a, const GanttEntry& b) {
            return std::pair(a.job_id, a.op_index) < std::pair(b.job_id, b.op_index);
        });
        for (const auto& e : r.entries) r.makespan = std::max(r.makespan, e.end);
        out_.reachable.push_back(std::move(r));
    }

    const Instance& inst_;
    const OracleLimits& limits_;
    BufferRule rule_;
    OracleResult& out_;
};

std::vector<GanttEntry> sorted_by_operation(std::vector<GanttEntry> entries) {
    std::sort(entries.begin(), entries.end(), [](const GanttEntry& a, const GanttEntry& b) {
        return std::pair(a.job_id, a.op_index) < std::pair(b.job_id, b.op_index);
    });
    return entries;
}

}  // namespace

bool OracleResult::contains(BufferRule rule, std::vector<GanttEntry> entries) const {
    entries = sorted_by_operation(std::move(entries));
    return std::any_of(reachable.begin(), reachable.end(),
                       [&](const ReachableSchedule& r) { return r.buffer_rule == rule && r.entries == entries; });
}

const ReachableSchedule* OracleResult::find_trace(BufferRule rule, const std::vector<int>& choices) const {
    for (const auto& r : reachable) {
        if (r.buffer_rule == rule && r.choices == choices) return &r;
    }
    return nullptr;
}

OracleResult oracle_enumerate(const Instance& inst, const OracleLimits& limits) {
    if (static_cast<int>(inst.jobs.size()) > limits.max_jobs || inst.num_machines > limits.max_machines) {
        throw OracleLimitExceeded("oracle accepts at most " + std::to_string(limits.max_jobs) + " jobs and " +
                                  std::to_string(limits.max_machines) + " machines");
    }
    for (const auto& job : inst.jobs) {
        if (static_cast<int>(job.operations.size()) > limits.max_ops_per_job) {
            throw OracleLimitExceeded("oracle accepts at most " + std::to_string(limits.max_ops_per_job) +
                                      " operations per job");
        }
    }

    OracleResult out;
    for (BufferRule rule : kAllBufferRules) {
        Enumerator(inst, limits, rule, out).run();
    }
    out.min_makespan = std::numeric_limits<Time>::max();
    for (const auto& r : out.reachable) {
        out.min_makespan = std::min(out.min_makespan, r.makespan);
        auto [it, inserted] = out.min_makespan_by_rule.emplace(r.buffer_rule, r.makespan);
        if (!inserted) it->second = std::min(it->second, r.makespan);
    }
    if (out.reachable.empty()) out.min_makespan = 0;
    return out;
}

}  // namespace llmshop
