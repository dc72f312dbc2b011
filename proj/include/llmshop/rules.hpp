#pragma once

#include <optional>
#include <string_view>

namespace llmshop {

/// Machine-selection backends. Names match the CLI flags: random, smpt, winq, llm.
enum class MachineRule { Random, Smpt, Winq, Llm };

/// Buffer-selection rules: fifo, filo, spt.
enum class BufferRule { Fifo, Filo, Spt };

/// What WINQ counts as a machine's workload.
enum class WinqWorkload {
    ResidualPlusQueue,  // remaining time of the running operation + queued work
    QueueOnly,          // queued work only
};

std::string_view to_string(MachineRule rule);
std::string_view to_string(BufferRule rule);
std::string_view to_string(WinqWorkload workload);

std::optional<MachineRule> parse_machine_rule(std::string_view name);
std::optional<BufferRule> parse_buffer_rule(std::string_view name);
std::optional<WinqWorkload> parse_winq_workload(std::string_view name);

inline constexpr MachineRule kAllMachineRules[] = {MachineRule::Random, MachineRule::Smpt,
                                                    MachineRule::Winq, MachineRule::Llm};
inline constexpr BufferRule kAllBufferRules[] = {BufferRule::Fifo, BufferRule::Filo, BufferRule::Spt};

}  // namespace llmshop
