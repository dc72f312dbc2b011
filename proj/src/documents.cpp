#include "llmshop/documents.hpp"

#include <stdexcept>

namespace llmshop {

std::string to_string(const DecisionSource& source) {
    switch (source.kind) {
        case DecisionSource::Kind::Heuristic: return "heuristic:" + std::string(to_string(source.rule));
        case DecisionSource::Kind::Llm: return "llm";
        case DecisionSource::Kind::Fallback: return "fallback:" + std::string(to_string(source.rule));
    }
    return "?";
}

DecisionSource parse_decision_source(const std::string& text) {
    if (text == "llm") return DecisionSource::llm();
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const auto kind = text.substr(0, colon);
        const auto rule = parse_machine_rule(text.substr(colon + 1));
        if (rule && kind == "heuristic") return DecisionSource::heuristic(*rule);
        if (rule && kind == "fallback") return DecisionSource::fallback(*rule);
    }
    throw std::invalid_argument("unknown decision source '" + text + "'");
}

}  // namespace llmshop
