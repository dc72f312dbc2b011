#include <algorithm>
#include <charconv>
#include <regex>

#include "llmshop/llm.hpp"

namespace llmshop {

namespace {

std::optional<std::string> last_match(const std::string& text, const std::regex& pattern) {
    std::optional<std::string> last;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), pattern); it != std::sregex_iterator(); ++it) {
        last = (*it)[1].str();
    }
    return last;
}

}  // namespace

std::variant<int, ParseFailure> parse_decision(std::string_view answer_text, std::span<const int> candidates,
                                               bool one_based) {
    static const std::regex machine_pattern(R"(machine\s*#?\s*(\d+))", std::regex::icase);
    static const std::regex integer_pattern(R"((\d+))");

    const std::string text(answer_text);
    auto digits = last_match(text, machine_pattern);
    if (!digits) digits = last_match(text, integer_pattern);
    if (!digits) return ParseFailure{"no machine number in answer"};

    long long value = 0;
    const auto [ptr, ec] = std::from_chars(digits->data(), digits->data() + digits->size(), value);
    if (ec != std::errc{} || ptr != digits->data() + digits->size()) {
        return ParseFailure{"machine number '" + *digits + "' is out of range"};
    }
    if (one_based) --value;
    if (std::find(candidates.begin(), candidates.end(), value) == candidates.end()) {
        return ParseFailure{"machine " + *digits + " is not a capable candidate"};
    }
    return static_cast<int>(value);
}

LlmOutcome llm_select_machine(const QuestionDocument& question, ChatClient& client, const AgentPrompts& prompts,
                              SplitMix64& rng, WinqWorkload workload) {
    LlmOutcome out;
    auto fall_back = [&](std::string reason) {
        const MachineRule rule = client.config().fallback_rule;
        out.machine_id = apply_machine_rule(rule, question.invitation, question.bids, rng, workload);
        out.source = DecisionSource::fallback(rule);
        out.failure_reason = std::move(reason);
        return out;
    };

    try {
        out.suggestion_text = client.chat(prompts.thinking.render(), question.text);
    } catch (const TransportError& e) {
        return fall_back(std::string("thinking agent: ") + e.what());
    }
    if (out.suggestion_text.find_first_not_of(" \t\r\n") == std::string::npos) {
        return fall_back("thinking agent returned an empty suggestion");
    }

    std::string answer;
    try {
        answer = client.chat(prompts.decision.render(), out.suggestion_text);
    } catch (const TransportError& e) {
        return fall_back(std::string("decision agent: ") + e.what());
    }

    const auto parsed = parse_decision(answer, question.invitation.candidates, client.config().one_based_answers);
    if (const auto* failure = std::get_if<ParseFailure>(&parsed)) {
        return fall_back("decision agent: " + failure->reason);
    }
    out.machine_id = std::get<int>(parsed);
    out.source = DecisionSource::llm();
    return out;
}

LlmBackend::LlmBackend(LlmConfig cfg, WinqWorkload workload, std::unique_ptr<ChatTransport> transport)
    : client_(cfg, std::move(transport)),
      prompts_(AgentPrompts::load(cfg.prompts_dir.empty() ? default_prompts_dir() : cfg.prompts_dir)),
      workload_(workload) {}

BackendResult LlmBackend::decide(const Invitation& invitation, std::span<const BiddingDocument> bids,
                                 SplitMix64& rng) {
    const QuestionDocument question =
        render_question_document(invitation, std::vector<BiddingDocument>(bids.begin(), bids.end()));
    LlmOutcome outcome = llm_select_machine(question, client_, prompts_, rng, workload_);
    return {{outcome.machine_id, outcome.source}, std::move(outcome.suggestion_text)};
}

}  // namespace llmshop
