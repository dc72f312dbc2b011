#include <doctest.h>

#include "llmshop/simulation.hpp"
#include "llmshop/validate.hpp"
#include "test_support.hpp"

using namespace llmshop;
using Kind = ScheduleViolation::Kind;

namespace {

// Job 0: op0 {m0: 3, m1: 4}, op1 {m1: 2}. Job 1: op0 {m1: 5}.
const char* kText = "2 2\n2 2 1 3 2 4 1 2 2\n1 1 2 5";

Schedule hand_schedule(std::vector<GanttEntry> entries) {
    Schedule s;
    s.entries = std::move(entries);
    s.makespan = compute_makespan(s.entries);
    return s;
}

std::vector<Kind> kinds(const std::vector<ScheduleViolation>& v) {
    std::vector<Kind> out;
    for (const auto& x : v) out.push_back(x.kind);
    return out;
}

}  // namespace

TEST_CASE("a correct hand-built schedule passes") {
    const Instance inst = parse_instance(kText, "v");
    const Schedule s = hand_schedule({{0, 0, 0, 0, 3}, {1, 0, 1, 0, 5}, {0, 1, 1, 5, 7}});
    CHECK(validate_schedule(s, inst).empty());
}

TEST_CASE("overlap names both entries") {
    const Instance inst = parse_instance(kText, "v");
    const Schedule s = hand_schedule({{0, 0, 0, 0, 3}, {1, 0, 1, 0, 5}, {0, 1, 1, 4, 6}});
    const auto v = validate_schedule(s, inst);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Kind::Overlap);
    CHECK(v[0].message.find("job 1 op 0") != std::string::npos);
    CHECK(v[0].message.find("job 0 op 1") != std::string::npos);
}

TEST_CASE("capability violation") {
    const Instance inst = parse_instance(kText, "v");
    const Schedule s = hand_schedule({{0, 0, 0, 0, 3}, {1, 0, 0, 3, 8}, {0, 1, 1, 3, 5}});
    const auto v = validate_schedule(s, inst);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Kind::NotCapable);
}

TEST_CASE("each schedule defect is reported") {
    const Instance inst = parse_instance(kText, "v");
    CHECK(kinds(validate_schedule(hand_schedule({{0, 0, 0, 0, 4}, {1, 0, 1, 0, 5}, {0, 1, 1, 5, 7}}), inst)) ==
          std::vector{Kind::WrongDuration});
    CHECK(kinds(validate_schedule(hand_schedule({{0, 0, 0, 0, 3}, {1, 0, 1, 0, 5}, {0, 1, 1, 5, 7}, {0, 1, 1, 7, 9}}),
                                  inst)) == std::vector{Kind::DuplicateEntry});
    CHECK(kinds(validate_schedule(hand_schedule({{0, 0, 0, 0, 3}, {1, 0, 1, 0, 5}}), inst)) ==
          std::vector{Kind::MissingEntry});
    CHECK(kinds(validate_schedule(hand_schedule({{0, 0, 0, 0, 3}, {1, 0, 1, 0, 5}, {0, 1, 1, 5, 7}, {3, 0, 0, 9, 10}}),
                                  inst)) == std::vector{Kind::UnknownOperation});
    CHECK(kinds(validate_schedule(hand_schedule({{0, 0, 0, 6, 9}, {1, 0, 1, 0, 5}, {0, 1, 1, 5, 7}}), inst)) ==
          std::vector{Kind::Precedence});
    CHECK(kinds(validate_schedule(hand_schedule({{0, 0, 0, -1, 2}, {1, 0, 1, 2, 7}, {0, 1, 1, 7, 9}}), inst)) ==
          std::vector{Kind::NegativeStart});

    Schedule wrong_makespan = hand_schedule({{0, 0, 0, 0, 3}, {1, 0, 1, 0, 5}, {0, 1, 1, 5, 7}});
    wrong_makespan.makespan = 8;
    CHECK(kinds(validate_schedule(wrong_makespan, inst)) == std::vector{Kind::MakespanMismatch});
}

TEST_CASE("decision log audit") {
    const Instance inst = parse_instance(kText, "v");
    PolicyConfig cfg;
    cfg.machine_rule = MachineRule::Smpt;
    const Schedule good = run_simulation(inst, cfg);
    REQUIRE(audit_decision_log(good, inst).empty());

    SUBCASE("award differs from the entry") {
        Schedule s = good;
        s.decision_log[0].decision.machine_id = 1;
        CHECK_FALSE(audit_decision_log(s, inst).empty());
    }
    SUBCASE("non-candidate award") {
        Schedule s = good;
        s.decision_log[2].decision.machine_id = 0;
        const auto v = kinds(audit_decision_log(s, inst));
        CHECK(std::find(v.begin(), v.end(), Kind::NotCandidate) != v.end());
    }
    SUBCASE("missing bid") {
        Schedule s = good;
        s.decision_log[0].bids.pop_back();
        CHECK(kinds(audit_decision_log(s, inst)) == std::vector{Kind::IncompleteBids});
    }
    SUBCASE("clock regression") {
        Schedule s = good;
        std::swap(s.decision_log[1], s.decision_log[2]);
        const auto v = kinds(audit_decision_log(s, inst));
        CHECK(std::find(v.begin(), v.end(), Kind::ClockRegression) != v.end());
    }
    SUBCASE("heuristic decision with a suggestion text") {
        Schedule s = good;
        s.decision_log[0].suggestion_text = "hello";
        CHECK(kinds(audit_decision_log(s, inst)) == std::vector{Kind::SuggestionShape});
    }
    SUBCASE("dropped record") {
        Schedule s = good;
        s.decision_log.pop_back();
        CHECK_FALSE(audit_decision_log(s, inst).empty());
    }
}

TEST_CASE("non-delay check flags idle machines with waiting work") {
    const Instance inst = parse_instance("2 1\n1 1 1 3\n1 1 1 4", "nd");
    PolicyConfig cfg;
    Schedule s = run_simulation(inst, cfg);
    CHECK(check_non_delay(s).empty());
    // Push job 1 later than the machine frees up.
    s.entries[1].start += 2;
    s.entries[1].end += 2;
    s.makespan = compute_makespan(s.entries);
    const auto v = check_non_delay(s);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Kind::IdleWithWork);
}

TEST_CASE("audit replay detects a tampered heuristic award") {
    const Instance inst = llmshop::testing::load_mk(2);
    PolicyConfig cfg;
    cfg.machine_rule = MachineRule::Winq;
    Schedule s = run_simulation(inst, cfg);
    const auto clean = audit_replay(s);
    CHECK(clean.checked == s.decision_log.size());
    CHECK(clean.mismatches == 0);

    for (auto& rec : s.decision_log) {
        if (rec.invitation.candidates.size() > 1) {
            rec.decision.machine_id = rec.decision.machine_id == rec.invitation.candidates[0] ? rec.invitation.candidates[1]
                                                                                              : rec.invitation.candidates[0];
            break;
        }
    }
    CHECK(audit_replay(s).mismatches == 1);

    cfg.machine_rule = MachineRule::Random;
    CHECK(audit_replay(run_simulation(inst, cfg)).checked == 0);
}
