#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "llmshop/rules.hpp"

namespace llmshop {

enum class LlmMode { Live, Record, Replay };

std::string_view to_string(LlmMode mode);
std::optional<LlmMode> parse_llm_mode(std::string_view name);

/// Chat endpoint and agent settings for the llm machine rule.
struct LlmConfig {
    std::string base_url = "https://dashscope.aliyuncs.com/compatible-mode/v1";
    std::string model_name = "qwen-plus";
    std::string api_key_env = "LLM_API_KEY";
    double timeout_seconds = 60.0;
    int max_retries = 1;
    LlmMode mode = LlmMode::Live;
    std::filesystem::path cassette_path;
    MachineRule fallback_rule = MachineRule::Winq;
    bool one_based_answers = false;
    // Directory holding thinking_agent.md and decision_agent.md; empty selects
    // the templates shipped with the repository.
    std::filesystem::path prompts_dir;
};

/// Reads the JSON config file accepted by `--llm-config`. Unknown keys are an error.
LlmConfig load_llm_config(const std::filesystem::path& path);

}  // namespace llmshop
