#include "llmshop/instance.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace llmshop {

namespace {

constexpr long long kMaxCount = 1'000'000;
constexpr long long kMaxDuration = 1'000'000'000'000LL;

struct Token {
    std::string_view text;
    std::size_t position;  // 1-based
    bool on_first_line;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    bool first_line = true;
    std::size_t i = 0;
    while (i < text.size()) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (c == '\n') {
            // A header line only ends once it holds at least one token.
            if (!tokens.empty()) first_line = false;
            ++i;
            continue;
        }
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        tokens.push_back({text.substr(i, j - i), tokens.size() + 1, first_line});
        i = j;
    }
    return tokens;
}

class TokenReader {
public:
    explicit TokenReader(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    bool at_end() const { return next_ >= tokens_.size(); }
    std::size_t size() const { return tokens_.size(); }
    const Token& peek() const { return tokens_[next_]; }
    const std::vector<Token>& all() const { return tokens_; }
    void skip() { ++next_; }

    // Reads an integer in [lo, hi]. On end of input the error is attributed to
    // `owner`, the count token whose promise could not be kept.
    long long integer(long long lo, long long hi, std::size_t owner, std::string_view what) {
        if (at_end()) {
            throw ParseError(owner, "unexpected end of input while reading " + std::string(what) +
                                        " (declared by token " + std::to_string(owner) + ")");
        }
        const Token& tok = tokens_[next_++];
        long long value = 0;
        const char* first = tok.text.data();
        const char* last = first + tok.text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) {
            throw ParseError(tok.position, "expected integer " + std::string(what) + ", got '" +
                                               std::string(tok.text) + "'");
        }
        if (value < lo || value > hi) {
            throw ParseError(tok.position, std::string(what) + " " + std::to_string(value) +
                                               " outside [" + std::to_string(lo) + ", " +
                                               std::to_string(hi) + "]");
        }
        last_position_ = tok.position;
        return value;
    }

    std::size_t last_position() const { return last_position_; }

private:
    std::vector<Token> tokens_;
    std::size_t next_ = 0;
    std::size_t last_position_ = 0;
};

bool is_number(std::string_view s) {
    if (s.empty()) return false;
    std::string copy(s);
    char* end = nullptr;
    std::strtod(copy.c_str(), &end);
    return end == copy.c_str() + copy.size();
}

}  // namespace

ParseError::ParseError(std::size_t token_position, const std::string& message)
    : std::runtime_error("token " + std::to_string(token_position) + ": " + message),
      position_(token_position) {}

std::size_t Instance::operation_count() const {
    std::size_t n = 0;
    for (const auto& job : jobs) n += job.operations.size();
    return n;
}

const Operation& Instance::operation(int job_id, int op_index) const {
    return jobs.at(static_cast<std::size_t>(job_id)).operations.at(static_cast<std::size_t>(op_index));
}

Instance parse_instance(std::string_view text, std::string name) {
    TokenReader in(tokenize(text));
    if (in.at_end()) throw ParseError(1, "empty instance");

    Instance inst;
    inst.name = std::move(name);
    const auto num_jobs = static_cast<int>(in.integer(1, kMaxCount, 1, "job count"));
    const std::size_t jobs_pos = in.last_position();
    inst.num_machines = static_cast<int>(in.integer(1, kMaxCount, jobs_pos, "machine count"));

    std::size_t header_tokens = 0;
    for (const auto& t : in.all()) header_tokens += t.on_first_line ? 1 : 0;
    if (header_tokens == 3) {
        const Token& flex = in.peek();
        if (!is_number(flex.text)) {
            throw ParseError(flex.position,
                             "expected numeric flexibility token, got '" + std::string(flex.text) + "'");
        }
        in.skip();
    }

    inst.jobs.reserve(static_cast<std::size_t>(num_jobs));
    for (int j = 0; j < num_jobs; ++j) {
        Job job;
        job.job_id = j;
        const auto num_ops = static_cast<int>(in.integer(1, kMaxCount, jobs_pos, "operation count"));
        const std::size_t ops_pos = in.last_position();
        for (int o = 0; o < num_ops; ++o) {
            Operation op;
            op.job_id = j;
            op.op_index = o;
            const auto k = in.integer(1, inst.num_machines, ops_pos, "alternative count");
            const std::size_t k_pos = in.last_position();
            for (long long a = 0; a < k; ++a) {
                const auto machine = static_cast<int>(in.integer(1, inst.num_machines, k_pos, "machine index"));
                const std::size_t machine_pos = in.last_position();
                const Time duration = in.integer(1, kMaxDuration, k_pos, "duration");
                if (!op.alternatives.emplace(machine - 1, duration).second) {
                    throw ParseError(machine_pos, "duplicate machine " + std::to_string(machine) +
                                                      " in job " + std::to_string(j + 1) + " operation " +
                                                      std::to_string(o + 1));
                }
            }
            job.operations.push_back(std::move(op));
        }
        inst.jobs.push_back(std::move(job));
    }

    if (!in.at_end()) {
        throw ParseError(in.peek().position,
                         "trailing token '" + std::string(in.peek().text) + "' after last job");
    }
    return inst;
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open instance file " + path.string());
    std::ostringstream buf;
    buf << file.rdbuf();
    return parse_instance(buf.str(), path.stem().string());
}

std::string to_text(const Instance& inst) {
    std::ostringstream out;
    out << inst.jobs.size() << ' ' << inst.num_machines << '\n';
    for (const auto& job : inst.jobs) {
        out << job.operations.size();
        for (const auto& op : job.operations) {
            out << "  " << op.alternatives.size();
            for (const auto& [machine, duration] : op.alternatives) {
                out << ' ' << machine + 1 << ' ' << duration;
            }
        }
        out << '\n';
    }
    return out.str();
}

std::vector<InstanceViolation> validate_instance(const Instance& inst) {
    using Kind = InstanceViolation::Kind;
    std::vector<InstanceViolation> out;
    if (inst.num_machines < 1) {
        out.push_back({Kind::NoMachines, -1, -1,
                       "num_machines is " + std::to_string(inst.num_machines) + ", expected >= 1"});
    }
    if (inst.jobs.empty()) out.push_back({Kind::NoJobs, -1, -1, "instance has no jobs"});

    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        const Job& job = inst.jobs[j];
        const int jid = static_cast<int>(j);
        if (job.job_id != jid) {
            out.push_back({Kind::JobIdMismatch, jid, -1,
                           "job at position " + std::to_string(j) + " has job_id " + std::to_string(job.job_id)});
        }
        if (job.operations.empty()) {
            out.push_back({Kind::EmptyJob, jid, -1, "job " + std::to_string(j) + " has no operations"});
        }
        for (std::size_t o = 0; o < job.operations.size(); ++o) {
            const Operation& op = job.operations[o];
            const int oid = static_cast<int>(o);
            const std::string where = "job " + std::to_string(j) + " op " + std::to_string(o);
            if (op.job_id != jid || op.op_index != oid) {
                out.push_back({Kind::OperationIdentity, jid, oid,
                               where + " carries identity (" + std::to_string(op.job_id) + ", " +
                                   std::to_string(op.op_index) + ")"});
            }
            if (op.alternatives.empty()) {
                out.push_back({Kind::EmptyAlternatives, jid, oid, where + " has no machine alternatives"});
            }
            for (const auto& [machine, duration] : op.alternatives) {
                if (machine < 0 || machine >= inst.num_machines) {
                    out.push_back({Kind::MachineOutOfRange, jid, oid,
                                   where + " references machine " + std::to_string(machine) +
                                       " outside [0, " + std::to_string(inst.num_machines) + ")"});
                }
                if (duration < 1) {
                    out.push_back({Kind::NonPositiveDuration, jid, oid,
                                   where + " has duration " + std::to_string(duration) + " on machine " +
                                       std::to_string(machine)});
                }
            }
        }
    }
    return out;
}

}  // namespace llmshop
