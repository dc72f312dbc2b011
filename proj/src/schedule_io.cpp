#include "llmshop/schedule_io.hpp"

#include <stdexcept>

#include <json.hpp>

namespace llmshop {

using ojson = nlohmann::ordered_json;

namespace {

ojson invitation_json(const Invitation& inv) {
    ojson durations = ojson::array();
    for (const auto& [m, d] : inv.duration_on) durations.push_back({{"machine", m}, {"duration", d}});
    return {{"job", inv.job_id},
            {"op", inv.op_index},
            {"issued_at", inv.issued_at},
            {"candidates", inv.candidates},
            {"durations", durations}};
}

ojson bid_json(const BiddingDocument& b) {
    return {{"machine", b.machine_id},
            {"status", b.status == MachineStatus::Busy ? "busy" : "idle"},
            {"remaining_time", b.remaining_time},
            {"queue_length", b.queue_length},
            {"queue_work", b.queue_work},
            {"duration", b.duration_for_op}};
}

Invitation invitation_from(const ojson& j) {
    Invitation inv;
    inv.job_id = j.at("job").get<int>();
    inv.op_index = j.at("op").get<int>();
    inv.issued_at = j.at("issued_at").get<Time>();
    inv.candidates = j.at("candidates").get<std::vector<int>>();
    for (const auto& d : j.at("durations")) inv.duration_on.emplace(d.at("machine").get<int>(), d.at("duration").get<Time>());
    return inv;
}

BiddingDocument bid_from(const ojson& j) {
    BiddingDocument b;
    b.machine_id = j.at("machine").get<int>();
    const auto status = j.at("status").get<std::string>();
    if (status != "busy" && status != "idle") throw std::invalid_argument("bad bid status '" + status + "'");
    b.status = status == "busy" ? MachineStatus::Busy : MachineStatus::Idle;
    b.remaining_time = j.at("remaining_time").get<Time>();
    b.queue_length = j.at("queue_length").get<int>();
    b.queue_work = j.at("queue_work").get<Time>();
    b.duration_for_op = j.at("duration").get<Time>();
    return b;
}

template <typename T>
T require(std::optional<T> value, const std::string& what) {
    if (!value) throw std::invalid_argument("unknown " + what);
    return *value;
}

}  // namespace

std::string schedule_to_json(const ScheduleDocument& doc) {
    ojson entries = ojson::array();
    for (const auto& e : doc.schedule.entries) {
        entries.push_back({{"job", e.job_id}, {"op", e.op_index}, {"machine", e.machine_id}, {"start", e.start},
                           {"end", e.end}});
    }
    ojson decisions = ojson::array();
    for (const auto& r : doc.schedule.decision_log) {
        ojson bids = ojson::array();
        for (const auto& b : r.bids) bids.push_back(bid_json(b));
        decisions.push_back({{"time", r.time},
                             {"job", r.job_id},
                             {"op", r.op_index},
                             {"invitation", invitation_json(r.invitation)},
                             {"bids", bids},
                             {"decision", {{"machine", r.decision.machine_id}, {"source", to_string(r.decision.source)}}},
                             {"suggestion", r.suggestion_text}});
    }
    const ojson out = {{"instance", doc.instance},
                       {"machine_rule", to_string(doc.machine_rule)},
                       {"buffer_rule", to_string(doc.buffer_rule)},
                       {"seed", doc.seed},
                       {"makespan", doc.schedule.makespan},
                       {"entries", entries},
                       {"decisions", decisions}};
    return out.dump(2) + "\n";
}

ScheduleDocument schedule_from_json(std::string_view text) {
    try {
        const ojson j = ojson::parse(text);
        ScheduleDocument doc;
        doc.instance = j.at("instance").get<std::string>();
        doc.machine_rule = require(parse_machine_rule(j.at("machine_rule").get<std::string>()), "machine_rule");
        doc.buffer_rule = require(parse_buffer_rule(j.at("buffer_rule").get<std::string>()), "buffer_rule");
        doc.seed = j.at("seed").get<std::uint64_t>();
        doc.schedule.makespan = j.at("makespan").get<Time>();
        for (const auto& e : j.at("entries")) {
            doc.schedule.entries.push_back({e.at("job").get<int>(), e.at("op").get<int>(), e.at("machine").get<int>(),
                                            e.at("start").get<Time>(), e.at("end").get<Time>()});
        }
        if (j.contains("decisions")) {
            for (const auto& d : j.at("decisions")) {
                DecisionRecord r;
                r.time = d.at("time").get<Time>();
                r.job_id = d.at("job").get<int>();
                r.op_index = d.at("op").get<int>();
                r.invitation = invitation_from(d.at("invitation"));
                for (const auto& b : d.at("bids")) r.bids.push_back(bid_from(b));
                r.decision.machine_id = d.at("decision").at("machine").get<int>();
                r.decision.source = parse_decision_source(d.at("decision").at("source").get<std::string>());
                r.suggestion_text = d.at("suggestion").get<std::string>();
                doc.schedule.decision_log.push_back(std::move(r));
            }
        }
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed schedule JSON: ") + e.what());
    }
}

}  // namespace llmshop
