#include <doctest.h>

#include <algorithm>

#include "llmshop/simulation.hpp"
#include "llmshop/validate.hpp"
#include "test_support.hpp"

using namespace llmshop;
using llmshop::testing::load_mk;
using llmshop::testing::random_instance;

namespace {

PolicyConfig config(MachineRule mr, BufferRule br, std::uint64_t seed = 0) {
    PolicyConfig cfg;
    cfg.machine_rule = mr;
    cfg.buffer_rule = br;
    cfg.seed = seed;
    return cfg;
}

Time job_path_bound(const Instance& inst) {
    Time best = 0;
    for (const auto& job : inst.jobs) {
        Time sum = 0;
        for (const auto& op : job.operations) {
            Time m = op.alternatives.begin()->second;
            for (const auto& [_, d] : op.alternatives) m = std::min(m, d);
            sum += m;
        }
        best = std::max(best, sum);
    }
    return best;
}

Time load_bound(const Instance& inst) {
    Time total = 0;
    for (const auto& job : inst.jobs) {
        for (const auto& op : job.operations) {
            Time m = op.alternatives.begin()->second;
            for (const auto& [_, d] : op.alternatives) m = std::min(m, d);
            total += m;
        }
    }
    return (total + inst.num_machines - 1) / inst.num_machines;
}

void check_schedule_properties(const Schedule& s, const Instance& inst) {
    CHECK(validate_schedule(s, inst).empty());
    CHECK(audit_decision_log(s, inst).empty());
    CHECK(check_non_delay(s).empty());
    CHECK(s.entries.size() == inst.operation_count());
    CHECK(s.makespan >= job_path_bound(inst));
    CHECK(s.makespan >= load_bound(inst));
    for (std::size_t i = 1; i < s.decision_log.size(); ++i) CHECK(s.decision_log[i - 1].time <= s.decision_log[i].time);
    for (const auto& job : inst.jobs) {
        std::vector<GanttEntry> mine;
        for (const auto& e : s.entries) {
            if (e.job_id == job.job_id) mine.push_back(e);
        }
        std::sort(mine.begin(), mine.end(), [](auto& a, auto& b) { return a.op_index < b.op_index; });
        for (std::size_t i = 1; i < mine.size(); ++i) {
            CHECK(mine[i].op_index == mine[i - 1].op_index + 1);
            CHECK(mine[i].start >= mine[i - 1].start);
        }
    }
}

}  // namespace

TEST_CASE("single operation") {
    const Instance inst = parse_instance("1 1\n1 1 1 5", "one");
    for (auto mr : {MachineRule::Random, MachineRule::Smpt, MachineRule::Winq}) {
        for (auto br : kAllBufferRules) {
            const Schedule s = run_simulation(inst, config(mr, br));
            REQUIRE(s.entries.size() == 1);
            CHECK(s.entries[0] == GanttEntry{0, 0, 0, 0, 5});
            CHECK(s.makespan == 5);
        }
    }
}

TEST_CASE("forced serialization on one machine") {
    const Instance inst = parse_instance("2 1\n1 1 1 3\n1 1 1 4", "ser");
    const Schedule s = run_simulation(inst, config(MachineRule::Winq, BufferRule::Fifo));
    CHECK(s.makespan == 7);
    REQUIRE(s.entries.size() == 2);
    CHECK(s.entries[0] == GanttEntry{0, 0, 0, 0, 3});
    CHECK(s.entries[1] == GanttEntry{1, 0, 0, 3, 7});
}

TEST_CASE("buffer rule decides which waiting job runs next") {
    // Job 0 occupies the machine; jobs 1 (dur 5) and 2 (dur 2) queue behind it.
    const Instance inst = parse_instance("3 1\n1 1 1 1\n1 1 1 5\n1 1 1 2", "buf");
    const auto order = [&](BufferRule br) {
        std::vector<int> jobs;
        for (const auto& e : run_simulation(inst, config(MachineRule::Winq, br)).entries) jobs.push_back(e.job_id);
        return jobs;
    };
    CHECK(order(BufferRule::Fifo) == std::vector<int>{0, 1, 2});
    CHECK(order(BufferRule::Filo) == std::vector<int>{0, 2, 1});
    CHECK(order(BufferRule::Spt) == std::vector<int>{0, 2, 1});
}

TEST_CASE("job release puts the workpiece in the winner's buffer") {
    const Instance inst = parse_instance("2 2\n1 1 1 3\n2 1 1 2 1 2 4", "rel");
    PolicyConfig cfg = config(MachineRule::Winq, BufferRule::Fifo);
    HeuristicBackend backend(MachineRule::Winq);
    Simulator sim(inst, cfg, backend);

    sim.step();  // release job 0
    CHECK(sim.state().decision_log.size() == 1);
    CHECK(sim.state().machines[0].active == ActiveOperation{0, 0, 0, 3});

    sim.step();  // release job 1: only machine 0 is capable, so it waits in the buffer
    CHECK(sim.state().decision_log.size() == 2);
    REQUIRE(sim.state().machines[0].buffer.size() == 1);
    CHECK(sim.state().machines[0].buffer[0] == BufferedWorkpiece{1, 0, 0, 2});

    sim.step();  // job 0 done at t=3, machine 0 pulls job 1
    CHECK(sim.state().clock == 3);
    CHECK(sim.state().machines[0].active == ActiveOperation{1, 0, 3, 5});
    CHECK(sim.state().machines[0].buffer.empty());

    sim.step();  // job 1 op 0 done, op 1 negotiated and routed to idle machine 1
    CHECK(sim.state().machines[1].active == ActiveOperation{1, 1, 5, 9});
    sim.step();
    CHECK(sim.done());
}

TEST_CASE("simultaneous completions run in machine order") {
    EventCalendar cal;
    cal.push({4, SimEvent::Kind::OperationComplete, 5, 0, 0});
    cal.push({4, SimEvent::Kind::OperationComplete, 2, 1, 0});
    cal.push({4, SimEvent::Kind::JobRelease, -1, 3, 0});
    cal.push({3, SimEvent::Kind::OperationComplete, 9, 2, 0});
    CHECK(cal.pop().machine_id == 9);
    CHECK(cal.pop().kind == SimEvent::Kind::JobRelease);
    CHECK(cal.pop().machine_id == 2);
    CHECK(cal.pop().machine_id == 5);

    // Machines 1 and 2 finish together at t=2; machine 1's job negotiates first
    // and takes machine 0, so job 1 (finishing on machine 2) must queue.
    const Instance inst = parse_instance("2 3\n2 1 2 2 1 1 4\n2 1 3 2 1 1 4", "tie");
    const Schedule s = run_simulation(inst, config(MachineRule::Winq, BufferRule::Fifo));
    REQUIRE(s.decision_log.size() == 4);
    CHECK(s.decision_log[2].job_id == 0);
    CHECK(s.decision_log[3].job_id == 1);
    CHECK(std::count(s.entries.begin(), s.entries.end(), GanttEntry{0, 1, 0, 2, 6}) == 1);
    CHECK(std::count(s.entries.begin(), s.entries.end(), GanttEntry{1, 1, 0, 6, 10}) == 1);
}

TEST_CASE("determinism") {
    const Instance mk = load_mk(3);
    for (auto mr : {MachineRule::Random, MachineRule::Smpt, MachineRule::Winq}) {
        for (auto br : kAllBufferRules) {
            CHECK(run_simulation(mk, config(mr, br, 9)) == run_simulation(mk, config(mr, br, 9)));
        }
    }
    CHECK(run_simulation(mk, config(MachineRule::Random, BufferRule::Fifo, 1)).entries !=
          run_simulation(mk, config(MachineRule::Random, BufferRule::Fifo, 2)).entries);
}

TEST_CASE("property: schedules on random instances satisfy every invariant") {
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 150; ++trial) {
        const Instance inst = random_instance(rng, 6, 5, 5, 9);
        for (auto mr : {MachineRule::Random, MachineRule::Smpt, MachineRule::Winq}) {
            for (auto br : kAllBufferRules) {
                CAPTURE(trial);
                check_schedule_properties(run_simulation(inst, config(mr, br, rng.next())), inst);
            }
        }
    }
}

TEST_CASE("property: mk schedules satisfy every invariant") {
    for (int n = 1; n <= 15; ++n) {
        const Instance inst = load_mk(n);
        for (auto mr : {MachineRule::Random, MachineRule::Smpt, MachineRule::Winq}) {
            for (auto br : kAllBufferRules) {
                CAPTURE(n);
                check_schedule_properties(run_simulation(inst, config(mr, br, 3)), inst);
            }
        }
    }
}

TEST_CASE("WINQ queue-only variant also yields valid schedules") {
    PolicyConfig cfg = config(MachineRule::Winq, BufferRule::Spt);
    cfg.winq_workload = WinqWorkload::QueueOnly;
    const Instance inst = load_mk(1);
    const Schedule s = run_simulation(inst, cfg);
    CHECK(validate_schedule(s, inst).empty());
    CHECK(audit_replay(s, WinqWorkload::QueueOnly).mismatches == 0);
}

TEST_CASE("llm rule without a configuration is rejected") {
    const Instance inst = parse_instance("1 1\n1 1 1 5", "one");
    CHECK_THROWS_AS(run_simulation(inst, config(MachineRule::Llm, BufferRule::Fifo)), ConfigError);
}
