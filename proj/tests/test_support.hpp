#pragma once

// Shared fixtures for the unit and acceptance suites: tiny instances, random
// instance generators, in-process chat transports and a local
// OpenAI-compatible stub server.

#include <atomic>
#include <filesystem>
#include <functional>
#include <mutex>
#include <regex>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "llmshop/instance.hpp"
#include "llmshop/llm.hpp"
#include "llmshop/rng.hpp"

namespace llmshop::testing {

inline std::filesystem::path source_dir() { return LLMSHOP_SOURCE_DIR; }
inline std::filesystem::path instances_dir() { return source_dir() / "instances"; }

inline std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("llmshop_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline Instance load_mk(int n) {
    char name[16];
    std::snprintf(name, sizeof name, "mk%02d.fjs", n);
    return load_instance(instances_dir() / name);
}

/// Ten-plus tiny instances (at most 3 jobs, 3 machines, 3 ops per job) used
/// by the oracle-equivalence checks.
inline std::vector<Instance> tiny_fixtures() {
    const char* texts[] = {
        "1 1\n1 1 1 5",
        "2 1\n1 1 1 3\n1 1 1 4",
        "1 1\n2 1 1 3 1 1 4",
        "2 2\n1 2 1 2 2 5\n1 1 1 2",
        "2 2\n2 2 1 3 2 1 1 1 2\n2 1 2 2 2 1 4 2 3",
        "3 2\n1 2 1 4 2 2\n1 2 1 1 2 3\n1 1 2 2",
        "3 3\n2 2 1 2 3 4 1 2 3\n2 1 1 5 2 2 1 3 3\n1 3 1 2 2 2 3 2",
        "2 3\n3 1 1 1 2 1 2 2 3 1 3 5\n3 2 1 3 3 1 1 2 4 2 1 2 3 2",
        "3 2\n2 1 1 6 1 2 1\n2 1 1 1 1 2 6\n2 2 1 3 2 3 1 1 2",
        "3 3\n3 1 1 2 1 2 2 1 3 2\n3 1 2 2 1 3 2 1 1 2\n3 1 3 2 1 1 2 1 2 2",
        "3 3\n3 3 1 1 2 2 3 3 2 1 4 3 1 1 2 2\n2 2 2 2 3 1 1 1 5\n3 1 3 3 1 2 3 2 1 2 2 1",
        "2 2\n3 2 1 1 2 9 2 1 9 2 1 1 1 4\n2 1 2 2 2 1 7 2 7",
    };
    std::vector<Instance> out;
    int i = 0;
    for (const char* t : texts) out.push_back(parse_instance(t, "tiny" + std::to_string(i++)));
    return out;
}

/// Random valid instance. Dimensions are drawn from [1, max_*].
inline Instance random_instance(SplitMix64& rng, int max_jobs, int max_machines, int max_ops, int max_duration,
                                const std::string& name = "random") {
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng.next() % static_cast<std::uint64_t>(hi - lo + 1)); };
    Instance inst;
    inst.name = name;
    inst.num_machines = pick(1, max_machines);
    const int jobs = pick(1, max_jobs);
    for (int j = 0; j < jobs; ++j) {
        Job job;
        job.job_id = j;
        const int ops = pick(1, max_ops);
        for (int o = 0; o < ops; ++o) {
            Operation op;
            op.job_id = j;
            op.op_index = o;
            const int k = pick(1, inst.num_machines);
            while (static_cast<int>(op.alternatives.size()) < k) {
                op.alternatives.emplace(pick(0, inst.num_machines - 1), pick(1, max_duration));
            }
            job.operations.push_back(std::move(op));
        }
        inst.jobs.push_back(std::move(job));
    }
    return inst;
}

/// In-process transport driven by a callback. Counts calls.
class ScriptedTransport final : public ChatTransport {
public:
    using Handler = std::function<std::string(const ChatRequest&, int call)>;

    explicit ScriptedTransport(Handler handler, std::shared_ptr<std::atomic<int>> calls = nullptr)
        : handler_(std::move(handler)), calls_(calls ? calls : std::make_shared<std::atomic<int>>(0)) {}

    std::string complete(const ChatRequest& request) override { return handler_(request, (*calls_)++); }

    std::shared_ptr<std::atomic<int>> calls() const { return calls_; }

private:
    Handler handler_;
    std::shared_ptr<std::atomic<int>> calls_;
};

inline bool is_thinking_request(const std::string& system_prompt) {
    return system_prompt.find("You are the Thinking Agent") != std::string::npos;
}

/// A deterministic "analyst": reads the question document and recommends the
/// candidate with the smallest remaining + queue work + processing time.
inline std::string stub_thinking_answer(const std::string& question) {
    static const std::regex line(
        R"(- Machine (\d+): status \w+, remaining time (\d+), queue length \d+, queue work (\d+), processing time for this operation (\d+))");
    long long best_machine = -1;
    long long best_finish = 0;
    std::string analysis = "Step by step:\n";
    for (auto it = std::sregex_iterator(question.begin(), question.end(), line); it != std::sregex_iterator(); ++it) {
        const long long machine = std::stoll((*it)[1]);
        const long long finish = std::stoll((*it)[2]) + std::stoll((*it)[3]) + std::stoll((*it)[4]);
        analysis += "Machine " + std::to_string(machine) + " would finish after " + std::to_string(finish) + ".\n";
        if (best_machine < 0 || finish < best_finish) {
            best_machine = machine;
            best_finish = finish;
        }
    }
    if (best_machine < 0) return "I could not find any candidate.";
    return analysis + "Recommendation: Machine " + std::to_string(best_machine);
}

/// Echoes the last "Machine <n>" of the suggestion.
inline std::string stub_decision_answer(const std::string& suggestion) {
    static const std::regex machine(R"(Machine (\d+))");
    std::string last;
    for (auto it = std::sregex_iterator(suggestion.begin(), suggestion.end(), machine); it != std::sregex_iterator(); ++it) {
        last = (*it)[1];
    }
    return last.empty() ? "No decision." : "Machine " + last;
}

inline std::string stub_reply(const ChatRequest& request) {
    return is_thinking_request(request.system_prompt) ? stub_thinking_answer(request.user_message)
                                                      : stub_decision_answer(request.user_message);
}

/// Local OpenAI-compatible endpoint on 127.0.0.1 serving
/// POST /v1/chat/completions with the stub agents above.
class StubChatServer {
public:
    StubChatServer() {
        server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
            ++requests_;
            const auto body = nlohmann::json::parse(req.body);
            {
                std::lock_guard lock(mutex_);
                last_body_ = body;
                last_auth_ = req.get_header_value("Authorization");
            }
            if (fail_remaining_ > 0) {
                --fail_remaining_;
                res.status = 503;
                res.set_content("{\"error\":\"overloaded\"}", "application/json");
                return;
            }
            ChatRequest request;
            request.model = body.at("model").get<std::string>();
            request.system_prompt = body.at("messages").at(0).at("content").get<std::string>();
            request.user_message = body.at("messages").at(1).at("content").get<std::string>();
            const nlohmann::json reply = {
                {"id", "stub"},
                {"object", "chat.completion"},
                {"choices", nlohmann::json::array({{{"index", 0},
                                                    {"message", {{"role", "assistant"}, {"content", stub_reply(request)}}},
                                                    {"finish_reason", "stop"}}})}};
            res.set_content(reply.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~StubChatServer() {
        server_.stop();
        if (thread_.joinable()) thread_.join();
    }

    std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }
    int requests() const { return requests_; }
    void fail_next(int n) { fail_remaining_ = n; }

    nlohmann::json last_body() const {
        std::lock_guard lock(mutex_);
        return last_body_;
    }
    std::string last_auth() const {
        std::lock_guard lock(mutex_);
        return last_auth_;
    }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> requests_{0};
    std::atomic<int> fail_remaining_{0};
    mutable std::mutex mutex_;
    nlohmann::json last_body_;
    std::string last_auth_;
};

}  // namespace llmshop::testing
