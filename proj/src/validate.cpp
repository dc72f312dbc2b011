#include "llmshop/validate.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "llmshop/policies.hpp"

namespace llmshop {

namespace {

std::string describe(const GanttEntry& e) {
    return "(job " + std::to_string(e.job_id) + " op " + std::to_string(e.op_index) + " on machine " +
           std::to_string(e.machine_id) + " [" + std::to_string(e.start) + ", " + std::to_string(e.end) + "))";
}

bool known_operation(const Instance& inst, int job, int op) {
    return job >= 0 && static_cast<std::size_t>(job) < inst.jobs.size() && op >= 0 &&
           static_cast<std::size_t>(op) < inst.jobs[static_cast<std::size_t>(job)].operations.size();
}

}  // namespace

std::vector<ScheduleViolation> validate_schedule(const Schedule& schedule, const Instance& inst) {
    using Kind = ScheduleViolation::Kind;
    std::vector<ScheduleViolation> out;

    std::map<std::pair<int, int>, const GanttEntry*> by_op;
    std::map<int, std::vector<const GanttEntry*>> by_machine;
    for (const auto& e : schedule.entries) {
        if (!known_operation(inst, e.job_id, e.op_index)) {
            out.push_back({Kind::UnknownOperation, "entry " + describe(e) + " names no operation of the instance"});
            continue;
        }
        if (!by_op.emplace(std::pair(e.job_id, e.op_index), &e).second) {
            out.push_back({Kind::DuplicateEntry, "second entry for the same operation " + describe(e)});
            continue;
        }
        by_machine[e.machine_id].push_back(&e);

        const auto& alts = inst.operation(e.job_id, e.op_index).alternatives;
        const auto alt = alts.find(e.machine_id);
        if (alt == alts.end()) {
            out.push_back({Kind::NotCapable, "entry " + describe(e) + " uses a machine that cannot process it"});
        } else if (e.end - e.start != alt->second) {
            out.push_back({Kind::WrongDuration, "entry " + describe(e) + " lasts " + std::to_string(e.end - e.start) +
                                                    ", expected " + std::to_string(alt->second)});
        }
        if (e.start < 0) out.push_back({Kind::NegativeStart, "entry " + describe(e) + " starts before 0"});
    }

    for (const auto& job : inst.jobs) {
        const GanttEntry* prev = nullptr;
        for (const auto& op : job.operations) {
            const auto it = by_op.find({job.job_id, op.op_index});
            if (it == by_op.end()) {
                out.push_back({Kind::MissingEntry, "no entry for job " + std::to_string(job.job_id) + " op " +
                                                       std::to_string(op.op_index)});
                prev = nullptr;
                continue;
            }
            if (prev != nullptr && it->second->start < prev->end) {
                out.push_back({Kind::Precedence,
                               "entry " + describe(*it->second) + " starts before its predecessor " + describe(*prev) +
                                   " ends"});
            }
            prev = it->second;
        }
    }

    for (auto& [machine, list] : by_machine) {
        std::sort(list.begin(), list.end(), [](const GanttEntry* a, const GanttEntry* b) {
            return std::pair(a->start, a->end) < std::pair(b->start, b->end);
        });
        const GanttEntry* reach = nullptr;  // entry with the latest end so far
        for (const GanttEntry* e : list) {
            if (reach != nullptr && e->start < reach->end) {
                out.push_back({Kind::Overlap, "entries " + describe(*reach) + " and " + describe(*e) + " overlap"});
            }
            if (reach == nullptr || e->end > reach->end) reach = e;
        }
    }

    Time max_end = 0;
    for (const auto& e : schedule.entries) max_end = std::max(max_end, e.end);
    if (schedule.makespan != max_end) {
        out.push_back({Kind::MakespanMismatch, "makespan " + std::to_string(schedule.makespan) +
                                                   " differs from latest end " + std::to_string(max_end)});
    }
    return out;
}

std::vector<ScheduleViolation> audit_decision_log(const Schedule& schedule, const Instance& inst) {
    using Kind = ScheduleViolation::Kind;
    std::vector<ScheduleViolation> out;

    std::map<std::pair<int, int>, const GanttEntry*> by_op;
    for (const auto& e : schedule.entries) by_op.emplace(std::pair(e.job_id, e.op_index), &e);

    if (schedule.decision_log.size() != schedule.entries.size()) {
        out.push_back({Kind::LogMismatch, std::to_string(schedule.decision_log.size()) + " decision records for " +
                                              std::to_string(schedule.entries.size()) + " entries"});
    }

    Time last_time = 0;
    for (std::size_t i = 0; i < schedule.decision_log.size(); ++i) {
        const DecisionRecord& r = schedule.decision_log[i];
        const std::string where = "decision " + std::to_string(i) + " (job " + std::to_string(r.job_id) + " op " +
                                  std::to_string(r.op_index) + ")";
        if (r.time < last_time) {
            out.push_back({Kind::ClockRegression, where + " at t=" + std::to_string(r.time) + " after t=" +
                                                      std::to_string(last_time)});
        }
        last_time = std::max(last_time, r.time);

        if (std::find(r.invitation.candidates.begin(), r.invitation.candidates.end(), r.decision.machine_id) ==
            r.invitation.candidates.end()) {
            out.push_back({Kind::NotCandidate, where + " awarded non-candidate machine " +
                                                   std::to_string(r.decision.machine_id)});
        }
        if (known_operation(inst, r.job_id, r.op_index)) {
            std::vector<int> capable;
            for (const auto& [m, d] : inst.operation(r.job_id, r.op_index).alternatives) capable.push_back(m);
            if (capable != r.invitation.candidates) {
                out.push_back({Kind::NotCandidate, where + " invited a set other than the capable machines"});
            }
        }
        std::vector<int> bidders;
        for (const auto& b : r.bids) bidders.push_back(b.machine_id);
        std::sort(bidders.begin(), bidders.end());
        if (bidders != r.invitation.candidates) {
            out.push_back({Kind::IncompleteBids, where + " has " + std::to_string(r.bids.size()) + " bids for " +
                                                     std::to_string(r.invitation.candidates.size()) + " candidates"});
        }

        const bool is_llm = r.decision.source.kind == DecisionSource::Kind::Llm;
        const bool is_heuristic = r.decision.source.kind == DecisionSource::Kind::Heuristic;
        if ((is_llm && r.suggestion_text.empty()) || (is_heuristic && !r.suggestion_text.empty())) {
            out.push_back({Kind::SuggestionShape, where + " suggestion text does not match source " +
                                                      to_string(r.decision.source)});
        }

        const auto it = by_op.find({r.job_id, r.op_index});
        if (it == by_op.end()) {
            out.push_back({Kind::LogMismatch, where + " has no schedule entry"});
        } else if (it->second->machine_id != r.decision.machine_id) {
            out.push_back({Kind::LogMismatch, where + " awarded machine " + std::to_string(r.decision.machine_id) +
                                                  " but ran on " + std::to_string(it->second->machine_id)});
        }
    }
    return out;
}

std::vector<ScheduleViolation> check_non_delay(const Schedule& schedule) {
    std::vector<ScheduleViolation> out;
    std::map<int, std::vector<const GanttEntry*>> by_machine;
    std::map<std::pair<int, int>, const GanttEntry*> by_op;
    for (const auto& e : schedule.entries) {
        by_machine[e.machine_id].push_back(&e);
        by_op.emplace(std::pair(e.job_id, e.op_index), &e);
    }
    for (auto& [m, list] : by_machine) {
        std::sort(list.begin(), list.end(), [](const GanttEntry* a, const GanttEntry* b) { return a->start < b->start; });
    }

    for (const auto& r : schedule.decision_log) {
        const auto it = by_op.find({r.job_id, r.op_index});
        if (it == by_op.end()) continue;
        const GanttEntry& e = *it->second;
        Time covered = r.time;
        for (const GanttEntry* other : by_machine[e.machine_id]) {
            if (covered >= e.start) break;
            if (other->start <= covered && other->end > covered) covered = other->end;
        }
        if (covered < e.start) {
            out.push_back({ScheduleViolation::Kind::IdleWithWork,
                           "machine " + std::to_string(e.machine_id) + " idle at t=" + std::to_string(covered) +
                               " while job " + std::to_string(e.job_id) + " op " + std::to_string(e.op_index) +
                               " waited in its buffer (arrived t=" + std::to_string(r.time) + ", started t=" +
                               std::to_string(e.start) + ")"});
        }
    }
    return out;
}

AuditReplayResult audit_replay(const Schedule& schedule, WinqWorkload workload) {
    AuditReplayResult result;
    SplitMix64 unused;
    for (const auto& r : schedule.decision_log) {
        const auto& src = r.decision.source;
        if (src.kind == DecisionSource::Kind::Llm || src.rule == MachineRule::Random) continue;
        ++result.checked;
        if (apply_machine_rule(src.rule, r.invitation, r.bids, unused, workload) != r.decision.machine_id) {
            ++result.mismatches;
        }
    }
    return result;
}

}  // namespace llmshop
