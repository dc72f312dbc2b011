#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "llmshop/llm.hpp"

namespace llmshop {

using nlohmann::json;

CassetteMiss::CassetteMiss(std::string key)
    : std::runtime_error("cassette miss for key " + key +
                         " (prompt construction is not deterministic or the cassette is stale)"),
      key_(std::move(key)) {}

std::string cassette_key(std::string_view system_prompt, std::string_view user_message, std::string_view model) {
    // A JSON array gives an unambiguous encoding of the three fields.
    const std::string material = json::array({system_prompt, user_message, model}).dump();
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(material.data(), material.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    std::ostringstream hex;
    hex << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < length; ++i) hex << std::setw(2) << static_cast<int>(digest[i]);
    return hex.str();
}

Cassette::Cassette(std::filesystem::path path, bool must_exist) : path_(std::move(path)) {
    std::ifstream in(path_, std::ios::binary);
    if (!in) {
        if (must_exist) throw ConfigError("cassette file " + path_.string() + " does not exist");
        return;
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        CassetteRecord rec;
        try {
            const json j = json::parse(line);
            rec = {j.at("key").get<std::string>(), j.at("request_text").get<std::string>(),
                   j.at("response_text").get<std::string>()};
        } catch (const json::exception& e) {
            throw ConfigError(path_.string() + ":" + std::to_string(line_no) + ": malformed cassette record: " +
                              e.what());
        }
        if (!index_.emplace(rec.key, records_.size()).second) {
            throw ConfigError(path_.string() + ":" + std::to_string(line_no) + ": duplicate cassette key " + rec.key);
        }
        records_.push_back(std::move(rec));
    }
}

std::optional<std::string> Cassette::lookup(const std::string& key) const {
    std::lock_guard lock(mutex_);
    const auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return records_[it->second].response_text;
}

void Cassette::append(CassetteRecord record) {
    std::lock_guard lock(mutex_);
    if (index_.contains(record.key)) return;
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) throw ConfigError("cannot append to cassette " + path_.string());
    out << json{{"key", record.key}, {"request_text", record.request_text}, {"response_text", record.response_text}}
               .dump()
        << '\n';
    out.flush();
    index_.emplace(record.key, records_.size());
    records_.push_back(std::move(record));
}

std::size_t Cassette::size() const {
    std::lock_guard lock(mutex_);
    return records_.size();
}

std::vector<CassetteRecord> Cassette::records() const {
    std::lock_guard lock(mutex_);
    return records_;
}

}  // namespace llmshop
