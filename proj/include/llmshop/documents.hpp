#pragma once

// Payloads exchanged during one negotiation round: the bid inviter's
// invitation, one bidding document per capable machine, the question
// document handed to the thinking agent, and the resulting decision.

#include <map>
#include <string>
#include <vector>

#include "llmshop/instance.hpp"
#include "llmshop/rules.hpp"

namespace llmshop {

struct Invitation {
    int job_id = 0;
    int op_index = 0;
    std::vector<int> candidates;       // ascending machine id
    std::map<int, Time> duration_on;   // keys == candidates
    Time issued_at = 0;

    bool operator==(const Invitation&) const = default;
};

enum class MachineStatus { Idle, Busy };

struct BiddingDocument {
    int machine_id = 0;
    MachineStatus status = MachineStatus::Idle;
    Time remaining_time = 0;  // 0 when idle
    int queue_length = 0;
    Time queue_work = 0;
    Time duration_for_op = 0;

    bool operator==(const BiddingDocument&) const = default;
};

struct QuestionDocument {
    std::string text;
    Invitation invitation;
    std::vector<BiddingDocument> bids;
    std::string objective;
};

inline constexpr const char* kMakespanObjective = "minimize makespan";

struct DecisionSource {
    enum class Kind { Heuristic, Llm, Fallback };

    Kind kind = Kind::Heuristic;
    MachineRule rule = MachineRule::Winq;  // meaningful for Heuristic and Fallback

    static DecisionSource heuristic(MachineRule r) { return {Kind::Heuristic, r}; }
    static DecisionSource llm() { return {Kind::Llm, MachineRule::Llm}; }
    static DecisionSource fallback(MachineRule r) { return {Kind::Fallback, r}; }

    bool operator==(const DecisionSource&) const = default;
};

/// "heuristic:winq", "llm", "fallback:winq".
std::string to_string(const DecisionSource& source);
DecisionSource parse_decision_source(const std::string& text);

struct Decision {
    int machine_id = 0;
    DecisionSource source;

    bool operator==(const Decision&) const = default;
};

/// Audit entry for one negotiation.
struct DecisionRecord {
    Time time = 0;
    int job_id = 0;
    int op_index = 0;
    Invitation invitation;
    std::vector<BiddingDocument> bids;
    Decision decision;
    std::string suggestion_text;

    bool operator==(const DecisionRecord&) const = default;
};

}  // namespace llmshop
