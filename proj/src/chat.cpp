#include <cmath>
#include <cstdlib>
#include <fstream>

#include <httplib.h>
#include <json.hpp>

#include "llmshop/llm.hpp"

namespace llmshop {

using nlohmann::json;

std::string_view to_string(LlmMode mode) {
    switch (mode) {
        case LlmMode::Live: return "live";
        case LlmMode::Record: return "record";
        case LlmMode::Replay: return "replay";
    }
    return "?";
}

std::optional<LlmMode> parse_llm_mode(std::string_view name) {
    if (name == "live") return LlmMode::Live;
    if (name == "record") return LlmMode::Record;
    if (name == "replay") return LlmMode::Replay;
    return std::nullopt;
}

LlmConfig load_llm_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read LLM config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError(path.string() + ": expected a JSON object");

    LlmConfig cfg;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "base_url") cfg.base_url = value.get<std::string>();
            else if (key == "model_name") cfg.model_name = value.get<std::string>();
            else if (key == "api_key_env") cfg.api_key_env = value.get<std::string>();
            else if (key == "timeout_seconds") cfg.timeout_seconds = value.get<double>();
            else if (key == "max_retries") cfg.max_retries = value.get<int>();
            else if (key == "one_based_answers") cfg.one_based_answers = value.get<bool>();
            else if (key == "cassette") cfg.cassette_path = value.get<std::string>();
            else if (key == "prompts_dir") cfg.prompts_dir = value.get<std::string>();
            else if (key == "mode") {
                const auto mode = parse_llm_mode(value.get<std::string>());
                if (!mode) throw ConfigError("unknown mode " + value.dump());
                cfg.mode = *mode;
            } else if (key == "fallback_rule") {
                const auto rule = parse_machine_rule(value.get<std::string>());
                if (!rule) throw ConfigError("unknown fallback_rule " + value.dump());
                cfg.fallback_rule = *rule;
            } else {
                throw ConfigError("unknown key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return cfg;
}

std::string ChatRequest::to_json() const {
    return json{{"model", model},
                {"messages", json::array({json{{"role", "system"}, {"content", system_prompt}},
                                          json{{"role", "user"}, {"content", user_message}}})},
                {"temperature", temperature}}
        .dump();
}

std::string extract_completion_text(std::string_view response_body) {
    try {
        const json j = json::parse(response_body);
        const json& content = j.at("choices").at(0).at("message").at("content");
        if (!content.is_string()) throw TransportError("chat response content is not a string");
        return content.get<std::string>();
    } catch (const json::exception& e) {
        throw TransportError(std::string("malformed chat response: ") + e.what());
    }
}

HttpChatTransport::HttpChatTransport(std::string base_url, std::string api_key, double timeout_seconds)
    : api_key_(std::move(api_key)), timeout_seconds_(timeout_seconds) {
    const auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("base_url '" + base_url + "' has no scheme");
    const auto path_start = base_url.find('/', scheme_end + 3);
    origin_ = base_url.substr(0, path_start);
    path_prefix_ = path_start == std::string::npos ? "" : base_url.substr(path_start);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

std::string HttpChatTransport::complete(const ChatRequest& request) {
    httplib::Client client(origin_);
    if (!client.is_valid()) throw TransportError("cannot create HTTP client for " + origin_);
    const auto secs = static_cast<time_t>(timeout_seconds_);
    const auto usecs = static_cast<time_t>(std::llround((timeout_seconds_ - static_cast<double>(secs)) * 1e6));
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);

    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    auto result = client.Post(path_prefix_ + "/chat/completions", headers, request.to_json(), "application/json");
    if (!result) throw TransportError("chat request to " + origin_ + " failed: " + httplib::to_string(result.error()));
    if (result->status != 200) {
        throw TransportError("chat endpoint returned HTTP " + std::to_string(result->status) + ": " +
                             result->body.substr(0, 200));
    }
    return extract_completion_text(result->body);
}

ChatClient::ChatClient(LlmConfig cfg, std::unique_ptr<ChatTransport> transport)
    : cfg_(std::move(cfg)), transport_(std::move(transport)) {
    if (!(cfg_.timeout_seconds > 0)) throw ConfigError("LLM timeout must be positive");
    if (cfg_.max_retries < 0) throw ConfigError("LLM max_retries must be non-negative");
    if (cfg_.fallback_rule == MachineRule::Llm) throw ConfigError("fallback rule cannot be llm");

    if (cfg_.mode != LlmMode::Live) {
        if (cfg_.cassette_path.empty()) {
            throw ConfigError("LLM mode " + std::string(to_string(cfg_.mode)) + " requires a cassette path");
        }
        cassette_ = std::make_unique<Cassette>(cfg_.cassette_path, cfg_.mode == LlmMode::Replay);
    }
    if (cfg_.mode != LlmMode::Replay && !transport_) {
        const char* key = std::getenv(cfg_.api_key_env.c_str());
        if (key == nullptr || *key == '\0') {
            throw ConfigError("environment variable " + cfg_.api_key_env + " holding the LLM API key is not set");
        }
        transport_ = std::make_unique<HttpChatTransport>(cfg_.base_url, key, cfg_.timeout_seconds);
    }
}

std::string ChatClient::chat(const std::string& system_prompt, const std::string& user_message) {
    ++stats_.requests;
    const std::string key = cassette_key(system_prompt, user_message, cfg_.model_name);
    if (cassette_) {
        if (auto hit = cassette_->lookup(key)) {
            ++stats_.cassette_hits;
            return *hit;
        }
        if (cfg_.mode == LlmMode::Replay) {
            ++stats_.cassette_misses;
            throw CassetteMiss(key);
        }
    }

    const ChatRequest request{cfg_.model_name, system_prompt, user_message, 0.0};
    std::string last_error;
    for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
        ++stats_.network_calls;
        try {
            std::string response = transport_->complete(request);
            if (cassette_) cassette_->append({key, request.to_json(), response});
            return response;
        } catch (const TransportError& e) {
            last_error = e.what();
        }
    }
    throw TransportError("chat failed after " + std::to_string(cfg_.max_retries + 1) + " attempt(s): " + last_error);
}

}  // namespace llmshop
