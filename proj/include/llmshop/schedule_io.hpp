#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "llmshop/rules.hpp"
#include "llmshop/sim_types.hpp"

namespace llmshop {

/// A schedule plus the run identity; the unit exchanged by `run`,
/// `validate` and the audit tests. Ids are 0-based.
struct ScheduleDocument {
    std::string instance;
    MachineRule machine_rule = MachineRule::Winq;
    BufferRule buffer_rule = BufferRule::Fifo;
    std::uint64_t seed = 0;
    Schedule schedule;
};

/// Pretty-printed JSON with stable key order:
/// {instance, machine_rule, buffer_rule, seed, makespan, entries, decisions}.
std::string schedule_to_json(const ScheduleDocument& doc);

/// Throws std::invalid_argument on malformed input.
ScheduleDocument schedule_from_json(std::string_view text);

}  // namespace llmshop
