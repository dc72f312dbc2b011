#pragma once

#include <string>
#include <string_view>

#include "llmshop/sim_types.hpp"

namespace llmshop {

enum class GanttFormat { Svg, Csv };

/// "svg" or "csv"; throws std::invalid_argument otherwise.
GanttFormat parse_gantt_format(std::string_view name);

/// SVG: one row per machine, one <rect> per entry labelled "job.op", time
/// axis below. CSV: header `job,op,machine,start,end`, one entry per line.
/// Output is byte-deterministic for a given schedule. `num_machines` of 0
/// means "highest machine id in the schedule + 1".
std::string export_gantt(const Schedule& schedule, GanttFormat format, int num_machines = 0,
                         std::string_view title = {});

}  // namespace llmshop
