#include "llmshop/gantt.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace llmshop {

namespace {

constexpr double kLeft = 56;
constexpr double kTop = 36;
constexpr double kRowHeight = 28;
constexpr double kBarHeight = 20;
constexpr double kPlotWidth = 960;
constexpr double kAxisHeight = 36;

// Fixed two-decimal formatting keeps the bytes independent of locale and
// stream state.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string job_colour(int job) {
    const int hue = (job * 137) % 360;
    return "hsl(" + std::to_string(hue) + ",65%,62%)";
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

Time tick_step(Time makespan) {
    Time step = 1;
    while (makespan / step > 10) {
        if (makespan / (step * 2) <= 10) return step * 2;
        if (makespan / (step * 5) <= 10) return step * 5;
        step *= 10;
    }
    return step;
}

std::string svg(const Schedule& schedule, int machines, std::string_view title) {
    const Time span = std::max<Time>(schedule.makespan, 1);
    const double scale = kPlotWidth / static_cast<double>(span);
    const double height = kTop + kRowHeight * machines + kAxisHeight;
    const double width = kLeft + kPlotWidth + 24;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<text x=\"" << num(kLeft) << "\" y=\"20\" font-size=\"14\">"
        << escape(title.empty() ? std::string_view("Schedule") : title) << " (makespan " << schedule.makespan
        << ")</text>\n";

    for (int m = 0; m < machines; ++m) {
        const double y = kTop + kRowHeight * m;
        out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + kRowHeight / 2 + 4)
            << "\" text-anchor=\"end\">M" << m << "</text>\n";
        out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y + kRowHeight) << "\" x2=\""
            << num(kLeft + kPlotWidth) << "\" y2=\"" << num(y + kRowHeight) << "\" stroke=\"#ddd\"/>\n";
    }

    for (const auto& e : schedule.entries) {
        const double x = kLeft + scale * static_cast<double>(e.start);
        const double w = scale * static_cast<double>(e.end - e.start);
        const double y = kTop + kRowHeight * e.machine_id + (kRowHeight - kBarHeight) / 2;
        out << "<g><title>job " << e.job_id << " op " << e.op_index << " on M" << e.machine_id << " [" << e.start
            << ", " << e.end << ")</title>"
            << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\""
            << num(kBarHeight) << "\" fill=\"" << job_colour(e.job_id) << "\" stroke=\"#333\" stroke-width=\"0.5\"/>"
            << "<text x=\"" << num(x + w / 2) << "\" y=\"" << num(y + kBarHeight / 2 + 4)
            << "\" text-anchor=\"middle\" font-size=\"9\">" << e.job_id << "." << e.op_index << "</text></g>\n";
    }

    const double axis_y = kTop + kRowHeight * machines;
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(axis_y) << "\" x2=\"" << num(kLeft + kPlotWidth)
        << "\" y2=\"" << num(axis_y) << "\" stroke=\"#000\"/>\n";
    const Time step = tick_step(span);
    for (Time t = 0; t <= span; t += step) {
        const double x = kLeft + scale * static_cast<double>(t);
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(axis_y) << "\" x2=\"" << num(x) << "\" y2=\""
            << num(axis_y + 5) << "\" stroke=\"#000\"/>"
            << "<text x=\"" << num(x) << "\" y=\"" << num(axis_y + 18) << "\" text-anchor=\"middle\">" << t
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string csv(const Schedule& schedule) {
    std::ostringstream out;
    out << "job,op,machine,start,end\n";
    for (const auto& e : schedule.entries) {
        out << e.job_id << ',' << e.op_index << ',' << e.machine_id << ',' << e.start << ',' << e.end << '\n';
    }
    return out.str();
}

}  // namespace

GanttFormat parse_gantt_format(std::string_view name) {
    if (name == "svg") return GanttFormat::Svg;
    if (name == "csv") return GanttFormat::Csv;
    throw std::invalid_argument("unknown Gantt format '" + std::string(name) + "' (expected svg or csv)");
}

std::string export_gantt(const Schedule& schedule, GanttFormat format, int num_machines, std::string_view title) {
    if (format == GanttFormat::Csv) return csv(schedule);
    int machines = num_machines;
    if (machines <= 0) {
        for (const auto& e : schedule.entries) machines = std::max(machines, e.machine_id + 1);
    }
    return svg(schedule, machines, title);
}

}  // namespace llmshop
