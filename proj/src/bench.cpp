#include "llmshop/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "llmshop/reference.hpp"
#include "llmshop/simulation.hpp"
#include "llmshop/validate.hpp"

namespace llmshop {

namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

RunResult run_one(const Instance& inst, MachineRule mr, BufferRule br, std::uint64_t seed, const BenchOptions& opt) {
    PolicyConfig cfg;
    cfg.machine_rule = mr;
    cfg.buffer_rule = br;
    cfg.seed = seed;
    cfg.random_samples = opt.random_samples;
    cfg.winq_workload = opt.winq_workload;
    cfg.llm = opt.llm;

    const auto t0 = std::chrono::steady_clock::now();
    const Schedule schedule = run_simulation(inst, cfg);
    const auto t1 = std::chrono::steady_clock::now();

    auto violations = validate_schedule(schedule, inst);
    const auto audit = audit_decision_log(schedule, inst);
    violations.insert(violations.end(), audit.begin(), audit.end());
    if (!violations.empty()) {
        throw ValidationFailure(inst.name + " " + std::string(to_string(mr)) + "/" + std::string(to_string(br)) +
                                " seed " + std::to_string(seed) + ": " + violations.front().message + " (" +
                                std::to_string(violations.size()) + " violation(s))");
    }

    RunResult r;
    r.seed = seed;
    r.makespan = schedule.makespan;
    for (const auto& d : schedule.decision_log) {
        switch (d.decision.source.kind) {
            case DecisionSource::Kind::Heuristic: ++r.decisions_heuristic; break;
            case DecisionSource::Kind::Llm: ++r.decisions_llm; break;
            case DecisionSource::Kind::Fallback: ++r.decisions_fallback; break;
        }
    }
    if (opt.record_timing) r.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return r;
}

}  // namespace

BenchGrid BenchGrid::heuristics() {
    return {{MachineRule::Random, MachineRule::Smpt, MachineRule::Winq},
            {BufferRule::Fifo, BufferRule::Filo, BufferRule::Spt}};
}

double BenchCell::mean_makespan() const {
    if (runs.empty()) return 0;
    double sum = 0;
    for (const auto& r : runs) sum += static_cast<double>(r.makespan);
    return sum / static_cast<double>(runs.size());
}

Time BenchCell::min_makespan() const {
    Time best = runs.empty() ? 0 : runs.front().makespan;
    for (const auto& r : runs) best = std::min(best, r.makespan);
    return best;
}

const BenchCell* BenchReport::find(std::string_view instance, MachineRule mr, BufferRule br) const {
    for (const auto& c : cells) {
        if (c.instance == instance && c.machine_rule == mr && c.buffer_rule == br) return &c;
    }
    return nullptr;
}

BenchReport run_bench(std::span<const Instance> instances, const BenchGrid& grid, const BenchOptions& options) {
    if (options.random_samples < 1) throw std::invalid_argument("random_samples must be positive");

    // Deterministic cell order: instance, then machine rule, then buffer rule,
    // each in canonical enum order regardless of how the grid listed them.
    std::vector<MachineRule> mrs;
    for (auto r : kAllMachineRules) {
        if (std::find(grid.machine_rules.begin(), grid.machine_rules.end(), r) != grid.machine_rules.end()) mrs.push_back(r);
    }
    std::vector<BufferRule> brs;
    for (auto r : kAllBufferRules) {
        if (std::find(grid.buffer_rules.begin(), grid.buffer_rules.end(), r) != grid.buffer_rules.end()) brs.push_back(r);
    }
    if (std::find(mrs.begin(), mrs.end(), MachineRule::Llm) != mrs.end() && !options.llm) {
        throw std::invalid_argument("grid contains llm but no LLM configuration was given");
    }

    struct Task {
        std::size_t cell;
        std::size_t run;
        const Instance* inst;
    };

    BenchReport report;
    std::vector<Task> parallel;
    std::vector<Task> sequential;
    for (const auto& inst : instances) {
        for (auto mr : mrs) {
            for (auto br : brs) {
                BenchCell cell{inst.name, inst.num_machines, static_cast<int>(inst.jobs.size()), mr, br, {}};
                const int n = mr == MachineRule::Random ? options.random_samples : 1;
                cell.runs.resize(static_cast<std::size_t>(n));
                for (int s = 0; s < n; ++s) {
                    cell.runs[static_cast<std::size_t>(s)].seed = options.seed + static_cast<std::uint64_t>(s);
                    (mr == MachineRule::Llm ? sequential : parallel).push_back({report.cells.size(), static_cast<std::size_t>(s), &inst});
                }
                report.cells.push_back(std::move(cell));
            }
        }
    }

    auto execute = [&](const Task& t) {
        BenchCell& cell = report.cells[t.cell];
        RunResult& slot = cell.runs[t.run];
        slot = run_one(*t.inst, cell.machine_rule, cell.buffer_rule, slot.seed, options);
    };

    unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(parallel.size(), 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < parallel.size(); i = next++) {
                    try {
                        execute(parallel[i]);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = parallel.size();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (const auto& t : sequential) execute(t);
    return report;
}

std::string report_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "instance,machines,jobs,machine_rule,buffer_rule,seed,makespan,decisions_llm,decisions_fallback,runtime_ms\n";
    for (const auto& c : report.cells) {
        for (const auto& r : c.runs) {
            out << c.instance << ',' << c.machines << ',' << c.jobs << ',' << to_string(c.machine_rule) << ','
                << to_string(c.buffer_rule) << ',' << r.seed << ',' << r.makespan << ',' << r.decisions_llm << ','
                << r.decisions_fallback << ',' << fixed(r.runtime_ms, 3) << '\n';
        }
    }
    return out.str();
}

std::string report_markdown(const BenchReport& report, std::string_view timestamp) {
    std::ostringstream out;
    out << "# Makespan benchmark\n\n";
    if (!timestamp.empty()) out << "Generated: " << timestamp << "\n\n";
    out << "Cells read `ours (reference)`. Random cells read `mean/min over seeds (reference)`; "
           "`-` marks a rule that was not run.\n";

    std::vector<std::string> instances;
    for (const auto& c : report.cells) {
        if (std::find(instances.begin(), instances.end(), c.instance) == instances.end()) instances.push_back(c.instance);
    }

    for (BufferRule br : kAllBufferRules) {
        const bool present = std::any_of(report.cells.begin(), report.cells.end(),
                                         [br](const BenchCell& c) { return c.buffer_rule == br; });
        if (!present) continue;
        out << "\n## " << upper(to_string(br)) << "\n\n"
            << "| Instance | Machines | Jobs | Random | SMPT | WINQ | LLM |\n"
            << "|---|---:|---:|---:|---:|---:|---:|\n";
        for (const auto& name : instances) {
            const auto ref = reference_row(br, name);
            int machines = 0;
            int jobs = 0;
            std::ostringstream row;
            for (MachineRule mr : kAllMachineRules) {
                const BenchCell* cell = report.find(name, mr, br);
                std::string ours = "-";
                if (cell) {
                    machines = cell->machines;
                    jobs = cell->jobs;
                    ours = mr == MachineRule::Random && cell->runs.size() > 1
                               ? fixed(cell->mean_makespan(), 1) + "/" + std::to_string(cell->min_makespan())
                               : std::to_string(cell->min_makespan());
                }
                row << " | " << ours;
                if (ref) row << " (" << ref->value(mr) << ")";
            }
            out << "| " << name << " | " << machines << " | " << jobs << row.str() << " |\n";
        }
    }
    return out.str();
}

std::vector<ProximityRow> reference_proximity(const BenchReport& report, const BenchReport* queue_only,
                                              double tolerance) {
    std::vector<ProximityRow> rows;
    for (const auto& c : report.cells) {
        if (c.machine_rule != MachineRule::Smpt && c.machine_rule != MachineRule::Winq) continue;
        const auto ref = reference_row(c.buffer_rule, c.instance);
        if (!ref) continue;
        ProximityRow row;
        row.instance = c.instance;
        row.machine_rule = c.machine_rule;
        row.buffer_rule = c.buffer_rule;
        row.ours = c.min_makespan();
        row.reference = ref->value(c.machine_rule);
        row.deviation = static_cast<double>(row.ours - row.reference) / row.reference;
        row.within = std::abs(row.deviation) <= tolerance;
        if (queue_only && c.machine_rule == MachineRule::Winq) {
            if (const BenchCell* alt = queue_only->find(c.instance, MachineRule::Winq, c.buffer_rule)) {
                row.queue_only = alt->min_makespan();
                const double dev = static_cast<double>(*row.queue_only - row.reference) / row.reference;
                row.queue_only_within = std::abs(dev) <= tolerance;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string proximity_markdown(const std::vector<ProximityRow>& rows, double tolerance) {
    std::ostringstream out;
    std::size_t within = 0;
    for (const auto& r : rows) within += r.within ? 1 : 0;
    out << "# Reference proximity (+-" << fixed(tolerance * 100, 0) << "%)\n\n"
        << within << " of " << rows.size() << " SMPT/WINQ cells are within tolerance.\n\n"
        << "| Instance | Rule | Buffer | Ours | Reference | Deviation | Status | WINQ queue-only |\n"
        << "|---|---|---|---:|---:|---:|---|---|\n";
    for (const auto& r : rows) {
        std::string knob = "";
        if (r.queue_only) {
            knob = std::to_string(*r.queue_only);
            if (!r.within && r.queue_only_within) knob += " (closes gap)";
        }
        out << "| " << r.instance << " | " << to_string(r.machine_rule) << " | " << to_string(r.buffer_rule) << " | "
            << r.ours << " | " << r.reference << " | " << (r.deviation >= 0 ? "+" : "") << fixed(r.deviation * 100, 1)
            << "% | " << (r.within ? "pass" : "warn") << " | " << knob << " |\n";
    }
    return out.str();
}

}  // namespace llmshop
