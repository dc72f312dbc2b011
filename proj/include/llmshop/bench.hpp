#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "llmshop/instance.hpp"
#include "llmshop/llm_config.hpp"
#include "llmshop/rules.hpp"

namespace llmshop {

/// A produced schedule failed validation. Always an engine bug.
class ValidationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BenchGrid {
    std::vector<MachineRule> machine_rules;
    std::vector<BufferRule> buffer_rules;

    static BenchGrid heuristics();  // {random, smpt, winq} x {fifo, filo, spt}
};

struct BenchOptions {
    std::uint64_t seed = 0;
    int random_samples = 5;  // Random cells run seeds seed, seed+1, ...
    WinqWorkload winq_workload = WinqWorkload::ResidualPlusQueue;
    std::optional<LlmConfig> llm;
    unsigned workers = 0;  // 0: hardware concurrency
    bool record_timing = true;
};

struct RunResult {
    std::uint64_t seed = 0;
    Time makespan = 0;
    std::size_t decisions_heuristic = 0;
    std::size_t decisions_llm = 0;
    std::size_t decisions_fallback = 0;
    double runtime_ms = 0;
};

struct BenchCell {
    std::string instance;
    int machines = 0;
    int jobs = 0;
    MachineRule machine_rule = MachineRule::Winq;
    BufferRule buffer_rule = BufferRule::Fifo;
    std::vector<RunResult> runs;  // one per seed

    double mean_makespan() const;
    Time min_makespan() const;
};

struct BenchReport {
    std::vector<BenchCell> cells;  // ordered by instance, machine rule, buffer rule

    const BenchCell* find(std::string_view instance, MachineRule mr, BufferRule br) const;
};

/// Runs every (instance, machine rule, buffer rule) cell and validates each
/// schedule; throws ValidationFailure on the first invalid one. Heuristic
/// cells run on a worker pool, llm cells sequentially.
BenchReport run_bench(std::span<const Instance> instances, const BenchGrid& grid, const BenchOptions& options);

/// One row per run:
/// instance,machines,jobs,machine_rule,buffer_rule,seed,makespan,decisions_llm,decisions_fallback,runtime_ms
std::string report_csv(const BenchReport& report);

/// One table per buffer rule present in the report, rows per instance,
/// columns Random/SMPT/WINQ/LLM as "ours (reference)". Random shows
/// mean/min over seeds. A non-empty timestamp adds a single header line.
std::string report_markdown(const BenchReport& report, std::string_view timestamp = {});

struct ProximityRow {
    std::string instance;
    MachineRule machine_rule;
    BufferRule buffer_rule;
    Time ours = 0;
    int reference = 0;
    double deviation = 0;  // (ours - reference) / reference
    bool within = false;
    std::optional<Time> queue_only;  // WINQ with the queue-only workload knob
    bool queue_only_within = false;
};

/// Compares SMPT/WINQ cells with the published values at +-tolerance.
/// `queue_only` (optional) is a report run with WinqWorkload::QueueOnly whose
/// WINQ cells are listed next to each WINQ deviation.
std::vector<ProximityRow> reference_proximity(const BenchReport& report, const BenchReport* queue_only,
                                              double tolerance = 0.25);

std::string proximity_markdown(const std::vector<ProximityRow>& rows, double tolerance = 0.25);

}  // namespace llmshop
