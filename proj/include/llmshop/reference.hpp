#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "llmshop/rules.hpp"

namespace llmshop {

/// Published makespans for one instance under one buffer rule, used as a
/// side-by-side comparison column in reports.
struct ReferenceRow {
    std::string_view instance;
    int machines;
    int jobs;
    int random;
    int smpt;
    int winq;
    int llm;

    int value(MachineRule rule) const;
};

std::span<const ReferenceRow> reference_table(BufferRule rule);
std::optional<ReferenceRow> reference_row(BufferRule rule, std::string_view instance);

}  // namespace llmshop
