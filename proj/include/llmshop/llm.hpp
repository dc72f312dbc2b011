#pragma once

// Thinking agent (TA) and decision agent (DA) backed by an OpenAI-compatible
// chat endpoint, with a JSON-lines cassette for offline record/replay.

#include <array>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "llmshop/llm_config.hpp"
#include "llmshop/negotiation.hpp"

namespace llmshop {

/// Bad or incomplete configuration: missing API key, missing cassette,
/// malformed template. Always surfaced to the caller.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Network, timeout, HTTP status or response-shape failure of one chat call.
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Replay found no record for a request. Means prompt construction was not
/// deterministic, so it aborts the run instead of falling back.
class CassetteMiss : public std::runtime_error {
public:
    explicit CassetteMiss(std::string key);
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

inline constexpr std::array<std::string_view, 5> kPromptSections = {"Character", "Objective", "Knowledge", "Answer",
                                                                    "Constraints"};

/// A system prompt made of the five level-2 Markdown sections above.
struct PromptTemplate {
    std::string character;
    std::string objective;
    std::string knowledge;
    std::string answer;
    std::string constraints;

    /// Requires exactly the five headings, each once, in any order, each with
    /// non-empty body. Text before the first heading is ignored.
    static PromptTemplate parse(std::string_view markdown);
    static PromptTemplate load(const std::filesystem::path& path);

    std::string render() const;
    const std::string& section(std::string_view heading) const;
};

struct AgentPrompts {
    PromptTemplate thinking;
    PromptTemplate decision;

    /// Loads dir/thinking_agent.md and dir/decision_agent.md.
    static AgentPrompts load(const std::filesystem::path& dir);
};

/// The repository's prompts/ directory.
std::filesystem::path default_prompts_dir();

struct CassetteRecord {
    std::string key;
    std::string request_text;
    std::string response_text;
};

/// Lowercase hex SHA-256 over (system prompt, user message, model name).
std::string cassette_key(std::string_view system_prompt, std::string_view user_message, std::string_view model);

/// Append-only JSON-lines store. Appends are serialized and flushed per record.
class Cassette {
public:
    /// Loads existing records. A missing file is a ConfigError when
    /// `must_exist`, otherwise it is created on first append.
    Cassette(std::filesystem::path path, bool must_exist);

    std::optional<std::string> lookup(const std::string& key) const;
    void append(CassetteRecord record);
    std::size_t size() const;
    std::vector<CassetteRecord> records() const;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    mutable std::mutex mutex_;
    std::vector<CassetteRecord> records_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct ChatRequest {
    std::string model;
    std::string system_prompt;
    std::string user_message;
    double temperature = 0.0;

    /// OpenAI chat-completions request body.
    std::string to_json() const;
};

class ChatTransport {
public:
    virtual ~ChatTransport() = default;
    /// Returns the first choice's message content; throws TransportError.
    virtual std::string complete(const ChatRequest& request) = 0;
};

/// POSTs to {base_url}/chat/completions with a Bearer key.
class HttpChatTransport final : public ChatTransport {
public:
    HttpChatTransport(std::string base_url, std::string api_key, double timeout_seconds);
    std::string complete(const ChatRequest& request) override;

private:
    std::string origin_;       // scheme://host[:port]
    std::string path_prefix_;  // e.g. /v1
    std::string api_key_;
    double timeout_seconds_;
};

/// Extracts the response text from a chat-completions response body.
std::string extract_completion_text(std::string_view response_body);

struct ChatStats {
    std::size_t requests = 0;
    std::size_t network_calls = 0;
    std::size_t cassette_hits = 0;
    std::size_t cassette_misses = 0;
};

class ChatClient {
public:
    /// With no transport, Live/Record build an HttpChatTransport from cfg and
    /// require the API key environment variable. Replay never touches the
    /// transport and requires the cassette file to exist.
    explicit ChatClient(LlmConfig cfg, std::unique_ptr<ChatTransport> transport = nullptr);

    /// Temperature-0 system+user exchange. Throws TransportError once
    /// 1 + max_retries attempts have failed, CassetteMiss on a replay miss.
    std::string chat(const std::string& system_prompt, const std::string& user_message);

    const ChatStats& stats() const { return stats_; }
    const LlmConfig& config() const { return cfg_; }

private:
    LlmConfig cfg_;
    std::unique_ptr<ChatTransport> transport_;
    std::unique_ptr<Cassette> cassette_;
    ChatStats stats_;
};

struct ParseFailure {
    std::string reason;
};

/// Picks the last "Machine <n>" mention (case-insensitive); without one, the
/// last bare integer. With `one_based` the number is shifted down by one.
/// Returns ParseFailure when nothing is found or the id is not a candidate.
std::variant<int, ParseFailure> parse_decision(std::string_view answer_text, std::span<const int> candidates,
                                               bool one_based = false);

struct LlmOutcome {
    int machine_id = 0;
    std::string suggestion_text;
    DecisionSource source;
    std::string failure_reason;  // empty unless source is Fallback
};

/// TA(question) -> suggestion, DA(suggestion) -> answer, then parse and
/// validate. Transport failures, unparseable answers and non-candidate
/// machines all resolve to cfg.fallback_rule applied to the question's bids.
LlmOutcome llm_select_machine(const QuestionDocument& question, ChatClient& client, const AgentPrompts& prompts,
                              SplitMix64& rng, WinqWorkload workload = WinqWorkload::ResidualPlusQueue);

class LlmBackend final : public DecisionBackend {
public:
    explicit LlmBackend(LlmConfig cfg, WinqWorkload workload = WinqWorkload::ResidualPlusQueue,
                        std::unique_ptr<ChatTransport> transport = nullptr);

    BackendResult decide(const Invitation& invitation, std::span<const BiddingDocument> bids,
                         SplitMix64& rng) override;

    const ChatClient& client() const { return client_; }

private:
    ChatClient client_;
    AgentPrompts prompts_;
    WinqWorkload workload_;
};

}  // namespace llmshop
