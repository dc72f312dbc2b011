#include <fstream>
#include <sstream>

#include "llmshop/llm.hpp"

#ifndef LLMSHOP_PROMPTS_DIR
#define LLMSHOP_PROMPTS_DIR "prompts"
#endif

namespace llmshop {

namespace {

std::string trim_blank_lines(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    // Keep leading indentation of the first content line.
    const auto line_start = s.rfind('\n', first);
    const auto begin = line_start == std::string::npos ? 0 : line_start + 1;
    return s.substr(begin, last - begin + 1);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read prompt template " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

PromptTemplate PromptTemplate::parse(std::string_view markdown) {
    std::array<std::optional<std::string>, kPromptSections.size()> bodies;
    std::optional<std::size_t> current;
    std::string text;

    auto flush = [&] {
        if (current) bodies[*current] = trim_blank_lines(text);
        text.clear();
    };

    std::istringstream lines{std::string(markdown)};
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("## ", 0) == 0) {
            flush();
            std::string heading = line.substr(3);
            heading.erase(heading.find_last_not_of(" \t") + 1);
            std::optional<std::size_t> slot;
            for (std::size_t i = 0; i < kPromptSections.size(); ++i) {
                if (kPromptSections[i] == heading) slot = i;
            }
            if (!slot) throw ConfigError("unexpected prompt section '## " + heading + "'");
            if (bodies[*slot]) throw ConfigError("duplicate prompt section '## " + heading + "'");
            bodies[*slot] = std::string{};
            current = slot;
            continue;
        }
        if (current) text += line + "\n";
    }
    flush();

    for (std::size_t i = 0; i < kPromptSections.size(); ++i) {
        if (!bodies[i]) throw ConfigError("missing prompt section '## " + std::string(kPromptSections[i]) + "'");
        if (bodies[i]->empty()) throw ConfigError("empty prompt section '## " + std::string(kPromptSections[i]) + "'");
    }
    return {*bodies[0], *bodies[1], *bodies[2], *bodies[3], *bodies[4]};
}

PromptTemplate PromptTemplate::load(const std::filesystem::path& path) {
    try {
        return parse(read_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

const std::string& PromptTemplate::section(std::string_view heading) const {
    if (heading == "Character") return character;
    if (heading == "Objective") return objective;
    if (heading == "Knowledge") return knowledge;
    if (heading == "Answer") return answer;
    if (heading == "Constraints") return constraints;
    throw std::invalid_argument("unknown prompt section " + std::string(heading));
}

std::string PromptTemplate::render() const {
    std::string out;
    for (std::size_t i = 0; i < kPromptSections.size(); ++i) {
        if (i) out += "\n\n";
        out += "## ";
        out += kPromptSections[i];
        out += "\n\n";
        out += section(kPromptSections[i]);
    }
    out += "\n";
    return out;
}

AgentPrompts AgentPrompts::load(const std::filesystem::path& dir) {
    return {PromptTemplate::load(dir / "thinking_agent.md"), PromptTemplate::load(dir / "decision_agent.md")};
}

std::filesystem::path default_prompts_dir() { return LLMSHOP_PROMPTS_DIR; }

}  // namespace llmshop
