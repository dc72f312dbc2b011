#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "llmshop/documents.hpp"
#include "llmshop/llm_config.hpp"
#include "llmshop/rng.hpp"
#include "llmshop/rules.hpp"
#include "llmshop/sim_types.hpp"

namespace llmshop {

struct PolicyConfig {
    MachineRule machine_rule = MachineRule::Winq;
    BufferRule buffer_rule = BufferRule::Fifo;
    std::uint64_t seed = 0;
    int random_samples = 1;  // bench only: seeds per Random cell
    WinqWorkload winq_workload = WinqWorkload::ResidualPlusQueue;
    std::optional<LlmConfig> llm;  // required when machine_rule == Llm
};

/// Argmin of duration_for_op; ties go to the lowest machine id.
int select_machine_smpt(const Invitation& invitation, std::span<const BiddingDocument> bids);

Time winq_workload(const BiddingDocument& bid, WinqWorkload workload = WinqWorkload::ResidualPlusQueue);

/// Argmin of workload; ties go to the lowest machine id.
int select_machine_winq(const Invitation& invitation, std::span<const BiddingDocument> bids,
                        WinqWorkload workload = WinqWorkload::ResidualPlusQueue);

/// candidates[rng.next() % k]. Advances the generator exactly once, even for k == 1.
int select_machine_random(const Invitation& invitation, SplitMix64& rng);

/// Applies a deterministic machine rule (Smpt, Winq or Random) to a complete
/// bid set. Llm is not a deterministic rule and is rejected.
int apply_machine_rule(MachineRule rule, const Invitation& invitation, std::span<const BiddingDocument> bids,
                       SplitMix64& rng, WinqWorkload workload = WinqWorkload::ResidualPlusQueue);

/// Index into `buffer` (insertion order) of the workpiece to process next.
/// Precondition: buffer is non-empty.
std::size_t select_from_buffer(std::span<const BufferedWorkpiece> buffer, BufferRule rule);

}  // namespace llmshop
