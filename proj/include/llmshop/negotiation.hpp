#pragma once

// One negotiation round per decision point:
//
//   bid inviter   build_invitation        capable machines + durations
//   bidders       build_bid               one bidding document per candidate
//   backend       DecisionBackend         heuristic rule on the bids, or the
//                                         question document -> thinking agent
//                                         -> decision agent path
//   bid inviter   negotiate               validates and records the award
//
// Heuristic backends skip the question document and the two LLM agents but
// still produce the invitation, the bids and the audit record.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "llmshop/documents.hpp"
#include "llmshop/policies.hpp"
#include "llmshop/sim_state.hpp"

namespace llmshop {

Invitation build_invitation(int job_id, int op_index, const SimState& state);

/// Throws std::logic_error when machine_id is not a candidate.
BiddingDocument build_bid(int machine_id, const Invitation& invitation, const SimState& state);

/// Pure: equal payloads render byte-identical text. Bids are listed in
/// ascending machine id regardless of input order.
QuestionDocument render_question_document(const Invitation& invitation, std::vector<BiddingDocument> bids,
                                          std::string objective = kMakespanObjective);

struct BackendResult {
    Decision decision;
    std::string suggestion_text;
};

class DecisionBackend {
public:
    virtual ~DecisionBackend() = default;

    /// `bids` hold one document per candidate in ascending machine id.
    virtual BackendResult decide(const Invitation& invitation, std::span<const BiddingDocument> bids,
                                 SplitMix64& rng) = 0;
};

class HeuristicBackend final : public DecisionBackend {
public:
    explicit HeuristicBackend(MachineRule rule, WinqWorkload workload = WinqWorkload::ResidualPlusQueue);

    BackendResult decide(const Invitation& invitation, std::span<const BiddingDocument> bids,
                         SplitMix64& rng) override;

private:
    MachineRule rule_;
    WinqWorkload workload_;
};

/// Runs one full round for (job_id, op_index) at state.clock and appends a
/// DecisionRecord to state.decision_log.
Decision negotiate(int job_id, int op_index, SimState& state, DecisionBackend& backend);

}  // namespace llmshop
