#include "llmshop/rules.hpp"

namespace llmshop {

std::string_view to_string(MachineRule rule) {
    switch (rule) {
        case MachineRule::Random: return "random";
        case MachineRule::Smpt: return "smpt";
        case MachineRule::Winq: return "winq";
        case MachineRule::Llm: return "llm";
    }
    return "?";
}

std::string_view to_string(BufferRule rule) {
    switch (rule) {
        case BufferRule::Fifo: return "fifo";
        case BufferRule::Filo: return "filo";
        case BufferRule::Spt: return "spt";
    }
    return "?";
}

std::string_view to_string(WinqWorkload workload) {
    switch (workload) {
        case WinqWorkload::ResidualPlusQueue: return "residual+queue";
        case WinqWorkload::QueueOnly: return "queue";
    }
    return "?";
}

std::optional<MachineRule> parse_machine_rule(std::string_view name) {
    for (auto rule : kAllMachineRules) {
        if (to_string(rule) == name) return rule;
    }
    return std::nullopt;
}

std::optional<BufferRule> parse_buffer_rule(std::string_view name) {
    for (auto rule : kAllBufferRules) {
        if (to_string(rule) == name) return rule;
    }
    return std::nullopt;
}

std::optional<WinqWorkload> parse_winq_workload(std::string_view name) {
    if (name == "residual+queue" || name == "residual") return WinqWorkload::ResidualPlusQueue;
    if (name == "queue") return WinqWorkload::QueueOnly;
    return std::nullopt;
}

}  // namespace llmshop
