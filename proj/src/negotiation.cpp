#include "llmshop/negotiation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace llmshop {

Invitation build_invitation(int job_id, int op_index, const SimState& state) {
    const Operation& op = state.instance->operation(job_id, op_index);
    Invitation inv;
    inv.job_id = job_id;
    inv.op_index = op_index;
    inv.issued_at = state.clock;
    inv.candidates.reserve(op.alternatives.size());
    for (const auto& [machine, duration] : op.alternatives) {
        inv.candidates.push_back(machine);
        inv.duration_on.emplace(machine, duration);
    }
    return inv;
}

BiddingDocument build_bid(int machine_id, const Invitation& invitation, const SimState& state) {
    const auto it = invitation.duration_on.find(machine_id);
    if (it == invitation.duration_on.end()) {
        throw std::logic_error("bid requested from machine " + std::to_string(machine_id) +
                               " which is not a candidate for job " + std::to_string(invitation.job_id) +
                               " op " + std::to_string(invitation.op_index));
    }
    const MachineState& m = state.machines.at(static_cast<std::size_t>(machine_id));
    BiddingDocument bid;
    bid.machine_id = machine_id;
    if (m.active) {
        bid.status = MachineStatus::Busy;
        bid.remaining_time = m.active->end - state.clock;
    }
    bid.queue_length = static_cast<int>(m.buffer.size());
    bid.queue_work = m.queue_work();
    bid.duration_for_op = it->second;
    return bid;
}

QuestionDocument render_question_document(const Invitation& invitation, std::vector<BiddingDocument> bids,
                                          std::string objective) {
    std::sort(bids.begin(), bids.end(),
              [](const BiddingDocument& a, const BiddingDocument& b) { return a.machine_id < b.machine_id; });

    std::ostringstream out;
    out << "Decision point at time " << invitation.issued_at << ".\n"
        << "Job " << invitation.job_id << " is ready for operation " << invitation.op_index
        << " and must be assigned to exactly one of " << bids.size() << " capable machine"
        << (bids.size() == 1 ? "" : "s") << ".\n\n"
        << "Candidate machines (ascending id):\n";
    for (const auto& bid : bids) {
        out << "- Machine " << bid.machine_id << ": status " << (bid.status == MachineStatus::Busy ? "busy" : "idle")
            << ", remaining time " << bid.remaining_time << ", queue length " << bid.queue_length
            << ", queue work " << bid.queue_work << ", processing time for this operation " << bid.duration_for_op
            << "\n";
    }
    out << "\nObjective: " << objective << " (the completion time of the last operation over all jobs).\n"
        << "Only the machines listed above can process this operation.\n";

    QuestionDocument doc;
    doc.text = out.str();
    doc.invitation = invitation;
    doc.bids = std::move(bids);
    doc.objective = std::move(objective);
    return doc;
}

HeuristicBackend::HeuristicBackend(MachineRule rule, WinqWorkload workload) : rule_(rule), workload_(workload) {
    if (rule == MachineRule::Llm) throw std::invalid_argument("HeuristicBackend cannot run the llm rule");
}

BackendResult HeuristicBackend::decide(const Invitation& invitation, std::span<const BiddingDocument> bids,
                                       SplitMix64& rng) {
    return {{apply_machine_rule(rule_, invitation, bids, rng, workload_), DecisionSource::heuristic(rule_)}, {}};
}

Decision negotiate(int job_id, int op_index, SimState& state, DecisionBackend& backend) {
    Invitation invitation = build_invitation(job_id, op_index, state);

    std::vector<BiddingDocument> bids;
    bids.reserve(invitation.candidates.size());
    for (int machine : invitation.candidates) bids.push_back(build_bid(machine, invitation, state));

    BackendResult result = backend.decide(invitation, bids, state.rng);
    if (!invitation.duration_on.contains(result.decision.machine_id)) {
        throw std::logic_error("backend awarded job " + std::to_string(job_id) + " op " + std::to_string(op_index) +
                               " to non-candidate machine " + std::to_string(result.decision.machine_id));
    }

    const Decision decision = result.decision;
    state.decision_log.push_back({state.clock, job_id, op_index, std::move(invitation), std::move(bids), decision,
                                  std::move(result.suggestion_text)});
    return decision;
}

}  // namespace llmshop
