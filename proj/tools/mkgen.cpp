// Generates the mk-profile instance set shipped under instances/.
//
// Job and machine counts follow the mk01-mk15 benchmark rows; operations per
// job, machines per operation and duration ranges follow the family's
// published generation ranges. Output is a pure function of the fixed seeds
// below, so rerunning the tool reproduces the shipped files byte for byte.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "llmshop/instance.hpp"
#include "llmshop/rng.hpp"

namespace {

struct Profile {
    const char* name;
    int jobs;
    int machines;
    int min_ops;
    int max_ops;
    int max_alternatives;
    int min_duration;
    int max_duration;
};

constexpr Profile kProfiles[] = {
    {"mk01", 10, 6, 5, 7, 3, 1, 6},      {"mk02", 10, 6, 5, 7, 6, 1, 6},
    {"mk03", 15, 8, 10, 10, 5, 1, 20},   {"mk04", 15, 8, 3, 10, 3, 1, 10},
    {"mk05", 15, 4, 5, 10, 2, 5, 10},    {"mk06", 10, 10, 15, 15, 5, 1, 10},
    {"mk07", 20, 5, 5, 5, 5, 1, 20},     {"mk08", 20, 10, 10, 14, 2, 5, 20},
    {"mk09", 20, 10, 10, 14, 5, 5, 20},  {"mk10", 20, 15, 10, 14, 5, 5, 20},
    {"mk11", 30, 5, 5, 8, 2, 10, 30},    {"mk12", 30, 10, 5, 10, 3, 10, 30},
    {"mk13", 30, 10, 5, 10, 3, 10, 30},  {"mk14", 30, 15, 8, 12, 2, 10, 30},
    {"mk15", 30, 15, 8, 12, 3, 10, 30},
};

constexpr std::uint64_t kBaseSeed = 20240601;

int uniform(llmshop::SplitMix64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng.next() % static_cast<std::uint64_t>(hi - lo + 1));
}

llmshop::Instance generate(const Profile& p, std::uint64_t seed) {
    llmshop::SplitMix64 rng(seed);
    llmshop::Instance inst;
    inst.name = p.name;
    inst.num_machines = p.machines;
    for (int j = 0; j < p.jobs; ++j) {
        llmshop::Job job;
        job.job_id = j;
        const int ops = uniform(rng, p.min_ops, p.max_ops);
        for (int o = 0; o < ops; ++o) {
            llmshop::Operation op;
            op.job_id = j;
            op.op_index = o;
            const int k = uniform(rng, 1, std::min(p.max_alternatives, p.machines));
            std::vector<int> machines(static_cast<std::size_t>(p.machines));
            std::iota(machines.begin(), machines.end(), 0);
            // Partial Fisher-Yates: the first k slots become the alternatives.
            for (int i = 0; i < k; ++i) {
                const int pick = uniform(rng, i, p.machines - 1);
                std::swap(machines[static_cast<std::size_t>(i)], machines[static_cast<std::size_t>(pick)]);
                op.alternatives.emplace(machines[static_cast<std::size_t>(i)],
                                        uniform(rng, p.min_duration, p.max_duration));
            }
            job.operations.push_back(std::move(op));
        }
        inst.jobs.push_back(std::move(job));
    }
    return inst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generate the mk-profile flexible job-shop instance set"};
    std::filesystem::path out_dir = "instances";
    app.add_option("-o,--out", out_dir, "Output directory");
    CLI11_PARSE(app, argc, argv);

    std::filesystem::create_directories(out_dir);
    std::uint64_t index = 0;
    for (const auto& p : kProfiles) {
        const auto inst = generate(p, kBaseSeed + index++);
        std::size_t alternatives = 0;
        for (const auto& job : inst.jobs) {
            for (const auto& op : job.operations) alternatives += op.alternatives.size();
        }
        char flex[32];
        std::snprintf(flex, sizeof flex, "%.2f",
                      static_cast<double>(alternatives) / static_cast<double>(inst.operation_count()));

        std::string text = llmshop::to_text(inst);
        text = std::to_string(p.jobs) + " " + std::to_string(p.machines) + " " + flex + text.substr(text.find('\n'));
        std::ofstream(out_dir / (std::string(p.name) + ".fjs"), std::ios::binary) << text;
        std::cout << p.name << ": " << p.jobs << " jobs, " << p.machines << " machines, " << inst.operation_count()
                  << " operations, flexibility " << flex << "\n";
    }
    return 0;
}
