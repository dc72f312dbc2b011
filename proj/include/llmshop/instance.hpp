#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace llmshop {

using Time = std::int64_t;

/// One processing step of a job. `alternatives` maps a capable machine
/// (0-based) to its processing time on that machine; iteration order is
/// ascending machine id.
struct Operation {
    int job_id = 0;
    int op_index = 0;
    std::map<int, Time> alternatives;

    bool operator==(const Operation&) const = default;
};

struct Job {
    int job_id = 0;
    std::vector<Operation> operations;

    bool operator==(const Job&) const = default;
};

/// A flexible job-shop problem. Operation j+1 of a job may only start once
/// operation j has completed; the simulator enforces this.
struct Instance {
    std::string name;
    int num_machines = 0;
    std::vector<Job> jobs;

    std::size_t operation_count() const;
    const Operation& operation(int job_id, int op_index) const;

    bool operator==(const Instance&) const = default;
};

/// Raised by parse_instance. `token_position` is the 1-based index of the
/// offending token in the whitespace-separated token stream.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t token_position, const std::string& message);

    std::size_t token_position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Parses the Brandimarte text format:
///
///     num_jobs num_machines [average_flexibility]
///     num_ops  (k  machine duration ×k) ×num_ops      (one line per job)
///
/// Machine indices are 1-based in the file and 0-based in the result. The
/// optional third header token is only recognised when the first line holds
/// exactly three tokens; everywhere else newlines are insignificant.
Instance parse_instance(std::string_view text, std::string name);

/// Reads and parses a file; the instance name is the file stem.
Instance load_instance(const std::filesystem::path& path);

/// Serializes back to the text format (no flexibility token).
std::string to_text(const Instance& inst);

struct InstanceViolation {
    enum class Kind {
        NoMachines,
        NoJobs,
        JobIdMismatch,
        EmptyJob,
        OperationIdentity,
        EmptyAlternatives,
        MachineOutOfRange,
        NonPositiveDuration,
    };

    Kind kind;
    int job_id = -1;
    int op_index = -1;
    std::string message;
};

/// Re-checks every structural invariant without trusting the parser.
std::vector<InstanceViolation> validate_instance(const Instance& inst);

}  // namespace llmshop
