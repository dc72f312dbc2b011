#include "llmshop/reference.hpp"

#include <array>

namespace llmshop {

namespace {

constexpr std::array<ReferenceRow, 15> kFifo{{
    {"mk01", 6, 10, 103, 72, 57, 48},
    {"mk02", 6, 10, 55, 45, 60, 40},
    {"mk03", 8, 15, 282, 338, 273, 207},
    {"mk04", 8, 15, 112, 188, 83, 76},
    {"mk05", 4, 15, 265, 241, 220, 191},
    {"mk06", 10, 10, 155, 108, 162, 94},
    {"mk07", 5, 20, 289, 217, 240, 199},
    {"mk08", 10, 20, 654, 587, 525, 531},
    {"mk09", 10, 20, 562, 466, 407, 346},
    {"mk10", 15, 20, 414, 353, 385, 285},
    {"mk11", 5, 30, 740, 905, 704, 716},
    {"mk12", 10, 30, 699, 784, 644, 552},
    {"mk13", 10, 30, 920, 646, 635, 464},
    {"mk14", 15, 30, 1144, 1146, 806, 778},
    {"mk15", 15, 30, 612, 663, 567, 461},
}};

constexpr std::array<ReferenceRow, 15> kFilo{{
    {"mk01", 6, 10, 74, 75, 62, 49},
    {"mk02", 6, 10, 80, 53, 51, 39},
    {"mk03", 8, 15, 361, 355, 280, 292},
    {"mk04", 8, 15, 148, 196, 111, 116},
    {"mk05", 4, 15, 255, 258, 236, 196},
    {"mk06", 10, 10, 160, 120, 159, 94},
    {"mk07", 5, 20, 368, 230, 279, 259},
    {"mk08", 10, 20, 734, 676, 632, 601},
    {"mk09", 10, 20, 585, 524, 426, 384},
    {"mk10", 15, 20, 546, 402, 373, 304},
    {"mk11", 5, 30, 894, 963, 843, 749},
    {"mk12", 10, 30, 815, 885, 710, 644},
    {"mk13", 10, 30, 1038, 773, 678, 550},
    {"mk14", 15, 30, 1391, 1246, 966, 892},
    {"mk15", 15, 30, 707, 776, 678, 458},
}};

constexpr std::array<ReferenceRow, 15> kSpt{{
    {"mk01", 6, 10, 98, 70, 51, 50},
    {"mk02", 6, 10, 52, 45, 55, 40},
    {"mk03", 8, 15, 339, 333, 293, 216},
    {"mk04", 8, 15, 89, 190, 83, 85},
    {"mk05", 4, 15, 234, 239, 241, 218},
    {"mk06", 10, 10, 145, 116, 152, 101},
    {"mk07", 5, 20, 267, 217, 291, 185},
    {"mk08", 10, 20, 640, 604, 571, 523},
    {"mk09", 10, 20, 548, 472, 456, 359},
    {"mk10", 15, 20, 405, 368, 436, 266},
    {"mk11", 5, 30, 861, 929, 752, 740},
    {"mk12", 10, 30, 747, 743, 659, 577},
    {"mk13", 10, 30, 882, 654, 723, 514},
    {"mk14", 15, 30, 1205, 1127, 951, 789},
    {"mk15", 15, 30, 685, 682, 526, 484},
}};

}  // namespace

int ReferenceRow::value(MachineRule rule) const {
    switch (rule) {
        case MachineRule::Random: return random;
        case MachineRule::Smpt: return smpt;
        case MachineRule::Winq: return winq;
        case MachineRule::Llm: return llm;
    }
    return 0;
}

std::span<const ReferenceRow> reference_table(BufferRule rule) {
    switch (rule) {
        case BufferRule::Fifo: return kFifo;
        case BufferRule::Filo: return kFilo;
        case BufferRule::Spt: return kSpt;
    }
    return {};
}

std::optional<ReferenceRow> reference_row(BufferRule rule, std::string_view instance) {
    for (const auto& row : reference_table(rule)) {
        if (row.instance == instance) return row;
    }
    return std::nullopt;
}

}  // namespace llmshop
