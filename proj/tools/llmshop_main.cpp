// llmshop: run, benchmark, validate and enumerate flexible job-shop schedules.
//
// Exit codes: 0 success, 1 validation failure, 2 configuration error.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "llmshop/bench.hpp"
#include "llmshop/gantt.hpp"
#include "llmshop/instance.hpp"
#include "llmshop/llm.hpp"
#include "llmshop/oracle.hpp"
#include "llmshop/schedule_io.hpp"
#include "llmshop/simulation.hpp"
#include "llmshop/validate.hpp"

namespace fs = std::filesystem;
using namespace llmshop;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LlmFlags {
    std::string config_file;
    std::string mode;
    std::string cassette;
    std::string base_url;
    std::string model;
    std::string api_key_env;
    std::string prompts;
    std::string fallback_rule;
    double timeout = 0;
    int max_retries = -1;
    bool one_based = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--llm-config", config_file, "JSON file with LLM settings");
        cmd->add_option("--llm-mode", mode, "live, record or replay")->check(CLI::IsMember({"live", "record", "replay"}));
        cmd->add_option("--cassette", cassette, "Cassette file for record/replay");
        cmd->add_option("--base-url", base_url, "OpenAI-compatible endpoint base URL");
        cmd->add_option("--model", model, "Model name");
        cmd->add_option("--api-key-env", api_key_env, "Environment variable holding the API key");
        cmd->add_option("--prompts", prompts, "Directory with thinking_agent.md and decision_agent.md");
        cmd->add_option("--fallback-rule", fallback_rule, "Rule used when the LLM path fails")
            ->check(CLI::IsMember({"random", "smpt", "winq"}));
        cmd->add_option("--timeout", timeout, "Per-request timeout in seconds");
        cmd->add_option("--max-retries", max_retries, "Retries per chat request");
        cmd->add_flag("--one-based", one_based, "Interpret machine numbers in answers as 1-based");
    }

    LlmConfig build() const {
        LlmConfig cfg = config_file.empty() ? LlmConfig{} : load_llm_config(config_file);
        if (!mode.empty()) cfg.mode = *parse_llm_mode(mode);
        if (!cassette.empty()) cfg.cassette_path = cassette;
        if (!base_url.empty()) cfg.base_url = base_url;
        if (!model.empty()) cfg.model_name = model;
        if (!api_key_env.empty()) cfg.api_key_env = api_key_env;
        if (!prompts.empty()) cfg.prompts_dir = prompts;
        if (!fallback_rule.empty()) cfg.fallback_rule = *parse_machine_rule(fallback_rule);
        if (timeout > 0) cfg.timeout_seconds = timeout;
        if (max_retries >= 0) cfg.max_retries = max_retries;
        if (one_based) cfg.one_based_answers = true;
        return cfg;
    }
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path.string());
    out << bytes;
    std::cerr << "wrote " << path.string() << "\n";
}

WinqWorkload winq_from(const std::string& name) {
    const auto w = parse_winq_workload(name);
    if (!w) throw UsageError("unknown WINQ workload '" + name + "'");
    return *w;
}

std::vector<Instance> load_instances(const std::vector<std::string>& files, const std::string& dir) {
    std::vector<fs::path> paths(files.begin(), files.end());
    if (!dir.empty()) {
        std::vector<fs::path> found;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.path().extension() == ".fjs") found.push_back(entry.path());
        }
        std::sort(found.begin(), found.end());
        paths.insert(paths.end(), found.begin(), found.end());
    }
    if (paths.empty()) throw UsageError("no instances given (use --instance or --instances-dir)");
    std::vector<Instance> out;
    for (const auto& p : paths) out.push_back(load_instance(p));
    return out;
}

int cmd_run(const std::string& instance_path, const std::string& machine_rule, const std::string& buffer_rule,
            std::uint64_t seed, const std::string& winq, const LlmFlags& llm, const std::string& out_dir,
            const std::vector<std::string>& formats) {
    const Instance inst = load_instance(instance_path);
    PolicyConfig cfg;
    cfg.machine_rule = *parse_machine_rule(machine_rule);
    cfg.buffer_rule = *parse_buffer_rule(buffer_rule);
    cfg.seed = seed;
    cfg.winq_workload = winq_from(winq);
    if (cfg.machine_rule == MachineRule::Llm) cfg.llm = llm.build();

    const Schedule schedule = run_simulation(inst, cfg);
    const auto violations = validate_schedule(schedule, inst);
    for (const auto& v : violations) std::cerr << "violation: " << v.message << "\n";

    const ScheduleDocument doc{inst.name, cfg.machine_rule, cfg.buffer_rule, cfg.seed, schedule};
    const std::string stem = inst.name + "_" + machine_rule + "_" + buffer_rule + "_s" + std::to_string(seed);
    const std::string title = inst.name + " " + machine_rule + "/" + buffer_rule;
    for (const auto& f : formats) {
        std::string bytes;
        if (f == "json") bytes = schedule_to_json(doc);
        else if (f == "svg") bytes = export_gantt(schedule, GanttFormat::Svg, inst.num_machines, title);
        else if (f == "csv") bytes = export_gantt(schedule, GanttFormat::Csv);
        else throw UsageError("run does not support format '" + f + "'");
        if (out_dir.empty()) std::cout << bytes;
        else write_file(fs::path(out_dir) / (stem + "." + f), bytes);
    }
    std::cerr << inst.name << " " << machine_rule << "/" << buffer_rule << " seed " << seed << ": makespan "
              << schedule.makespan << "\n";
    return violations.empty() ? 0 : kExitValidation;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LLM-negotiated flexible job-shop simulator"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Simulate one instance under one rule pair");
    std::string run_instance, machine_rule = "winq", buffer_rule = "fifo", winq = "residual+queue", run_out;
    std::uint64_t run_seed = 0;
    std::vector<std::string> run_formats{"json"};
    LlmFlags run_llm;
    run->add_option("--instance", run_instance, "Instance file (.fjs)")->required();
    run->add_option("--machine-rule", machine_rule)->check(CLI::IsMember({"random", "smpt", "winq", "llm"}));
    run->add_option("--buffer-rule", buffer_rule)->check(CLI::IsMember({"fifo", "filo", "spt"}));
    run->add_option("--seed", run_seed);
    run->add_option("--winq-workload", winq, "residual+queue or queue");
    run->add_option("--out", run_out, "Output directory (default: stdout)");
    run->add_option("--format", run_formats, "json, svg, csv (repeatable)")->delimiter(',');
    run_llm.attach(run);

    // bench
    auto* bench = app.add_subcommand("bench", "Run the rule grid over a set of instances");
    std::vector<std::string> bench_instances;
    std::string bench_dir, bench_out, bench_winq = "residual+queue";
    std::vector<std::string> bench_mrs{"random", "smpt", "winq"}, bench_brs{"fifo", "filo", "spt"};
    std::vector<std::string> bench_formats{"md"};
    std::uint64_t bench_seed = 0;
    int samples = 5;
    unsigned workers = 0;
    bool no_timing = false;
    LlmFlags bench_llm;
    bench->add_option("--instance", bench_instances, "Instance file (repeatable)");
    bench->add_option("--instances-dir", bench_dir, "Directory of .fjs files");
    bench->add_option("--machine-rule", bench_mrs, "Machine rules (comma separated)")
        ->delimiter(',')
        ->check(CLI::IsMember({"random", "smpt", "winq", "llm"}));
    bench->add_option("--buffer-rule", bench_brs, "Buffer rules (comma separated)")
        ->delimiter(',')
        ->check(CLI::IsMember({"fifo", "filo", "spt"}));
    bench->add_option("--seed", bench_seed, "First seed");
    bench->add_option("--samples", samples, "Seeds per Random cell")->check(CLI::PositiveNumber);
    bench->add_option("--winq-workload", bench_winq, "residual+queue or queue");
    bench->add_option("--workers", workers, "Worker threads (0: all cores)");
    bench->add_option("--out", bench_out, "Output directory (default: stdout)");
    bench->add_option("--format", bench_formats, "csv, md (repeatable)")->delimiter(',');
    bench->add_flag("--no-timing", no_timing, "Write runtime_ms as 0 for byte-reproducible reports");
    bench_llm.attach(bench);

    // validate
    auto* validate = app.add_subcommand("validate", "Check a schedule JSON against an instance");
    std::string val_instance, val_schedule;
    validate->add_option("--instance", val_instance)->required();
    validate->add_option("--schedule", val_schedule, "Schedule JSON written by `run`")->required();

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Enumerate every dispatch sequence of a tiny instance");
    std::string oracle_instance;
    oracle->add_option("--instance", oracle_instance)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run) {
            return cmd_run(run_instance, machine_rule, buffer_rule, run_seed, winq, run_llm, run_out, run_formats);
        }

        if (*bench) {
            const auto instances = load_instances(bench_instances, bench_dir);
            BenchGrid grid;
            for (const auto& m : bench_mrs) grid.machine_rules.push_back(*parse_machine_rule(m));
            for (const auto& b : bench_brs) grid.buffer_rules.push_back(*parse_buffer_rule(b));
            BenchOptions opt;
            opt.seed = bench_seed;
            opt.random_samples = samples;
            opt.winq_workload = winq_from(bench_winq);
            opt.workers = workers;
            opt.record_timing = !no_timing;
            if (std::find(grid.machine_rules.begin(), grid.machine_rules.end(), MachineRule::Llm) !=
                grid.machine_rules.end()) {
                opt.llm = bench_llm.build();
            }
            const BenchReport report = run_bench(instances, grid, opt);
            for (const auto& f : bench_formats) {
                std::string bytes;
                if (f == "csv") bytes = report_csv(report);
                else if (f == "md") bytes = report_markdown(report, no_timing ? "" : utc_timestamp());
                else throw UsageError("bench does not support format '" + f + "'");
                if (bench_out.empty()) std::cout << bytes;
                else write_file(fs::path(bench_out) / ("bench." + f), bytes);
            }
            return 0;
        }

        if (*validate) {
            const Instance inst = load_instance(val_instance);
            const ScheduleDocument doc = schedule_from_json(read_file(val_schedule));
            auto violations = validate_schedule(doc.schedule, inst);
            if (!doc.schedule.decision_log.empty()) {
                const auto audit = audit_decision_log(doc.schedule, inst);
                violations.insert(violations.end(), audit.begin(), audit.end());
            }
            for (const auto& v : violations) std::cout << "violation: " << v.message << "\n";
            std::cout << (violations.empty() ? "valid" : "invalid") << ": " << violations.size()
                      << " violation(s), makespan " << doc.schedule.makespan << "\n";
            return violations.empty() ? 0 : kExitValidation;
        }

        if (*oracle) {
            const Instance inst = load_instance(oracle_instance);
            const OracleResult result = oracle_enumerate(inst);
            std::cout << "instance " << inst.name << ": " << result.nodes << " decision nodes, "
                      << result.reachable.size() << " reachable schedules\n";
            for (const auto& [rule, best] : result.min_makespan_by_rule) {
                std::cout << "  " << to_string(rule) << ": min makespan " << best << "\n";
            }
            std::cout << "min makespan " << result.min_makespan << "\n";
            return 0;
        }
    } catch (const ValidationFailure& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ParseError& e) {
        std::cerr << "instance parse error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const OracleLimitExceeded& e) {
        std::cerr << "oracle: " << e.what() << "\n";
        return kExitConfig;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
