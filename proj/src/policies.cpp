#include "llmshop/policies.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

namespace llmshop {

namespace {

// Lexicographic argmin over (key, machine_id), so the result does not depend
// on the order in which bids arrived.
template <typename Key>
int argmin_by(std::span<const BiddingDocument> bids, Key key) {
    if (bids.empty()) throw std::logic_error("machine rule applied to an empty bid set");
    const BiddingDocument* best = &bids.front();
    for (const auto& bid : bids.subspan(1)) {
        if (std::pair(key(bid), bid.machine_id) < std::pair(key(*best), best->machine_id)) best = &bid;
    }
    return best->machine_id;
}

}  // namespace

int select_machine_smpt(const Invitation&, std::span<const BiddingDocument> bids) {
    return argmin_by(bids, [](const BiddingDocument& b) { return b.duration_for_op; });
}

Time winq_workload(const BiddingDocument& bid, WinqWorkload workload) {
    return workload == WinqWorkload::QueueOnly ? bid.queue_work : bid.remaining_time + bid.queue_work;
}

int select_machine_winq(const Invitation&, std::span<const BiddingDocument> bids, WinqWorkload workload) {
    return argmin_by(bids, [workload](const BiddingDocument& b) { return winq_workload(b, workload); });
}

int select_machine_random(const Invitation& invitation, SplitMix64& rng) {
    if (invitation.candidates.empty()) throw std::logic_error("random selection over no candidates");
    const std::uint64_t draw = rng.next();
    return invitation.candidates[draw % invitation.candidates.size()];
}

int apply_machine_rule(MachineRule rule, const Invitation& invitation, std::span<const BiddingDocument> bids,
                       SplitMix64& rng, WinqWorkload workload) {
    switch (rule) {
        case MachineRule::Smpt: return select_machine_smpt(invitation, bids);
        case MachineRule::Winq: return select_machine_winq(invitation, bids, workload);
        case MachineRule::Random: return select_machine_random(invitation, rng);
        case MachineRule::Llm: break;
    }
    throw std::invalid_argument("llm is not a deterministic machine rule");
}

std::size_t select_from_buffer(std::span<const BufferedWorkpiece> buffer, BufferRule rule) {
    if (buffer.empty()) throw std::logic_error("buffer rule applied to an empty buffer");
    switch (rule) {
        case BufferRule::Fifo: return 0;
        case BufferRule::Filo: return buffer.size() - 1;
        case BufferRule::Spt: {
            std::size_t best = 0;
            for (std::size_t i = 1; i < buffer.size(); ++i) {
                if (buffer[i].duration_here < buffer[best].duration_here) best = i;
            }
            return best;
        }
    }
    throw std::logic_error("unknown buffer rule");
}

}  // namespace llmshop
