#include <doctest.h>

#include <algorithm>
#include <array>

#include "llmshop/policies.hpp"
#include "test_support.hpp"

using namespace llmshop;

namespace {

Invitation invitation_for(const std::vector<BiddingDocument>& bids) {
    Invitation inv;
    for (const auto& b : bids) {
        inv.candidates.push_back(b.machine_id);
        inv.duration_on[b.machine_id] = b.duration_for_op;
    }
    std::sort(inv.candidates.begin(), inv.candidates.end());
    return inv;
}

BiddingDocument idle_bid(int machine, Time duration) {
    return {machine, MachineStatus::Idle, 0, 0, 0, duration};
}

BiddingDocument busy_bid(int machine, Time remaining, int queue_length, Time queue_work, Time duration) {
    return {machine, MachineStatus::Busy, remaining, queue_length, queue_work, duration};
}

BiddingDocument workload_bid(int machine, Time workload) {
    return {machine, MachineStatus::Idle, 0, workload > 0 ? 1 : 0, workload, 1};
}

std::vector<BiddingDocument> random_bids(SplitMix64& rng, int k) {
    std::vector<BiddingDocument> bids;
    std::vector<int> ids = {0, 1, 2, 3, 4, 5, 6, 7};
    for (int i = 0; i < k; ++i) {
        std::swap(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(i + static_cast<int>(rng.next() % static_cast<std::uint64_t>(8 - i)))]);
        const bool busy = rng.next() % 2 == 0;
        const Time remaining = busy ? static_cast<Time>(1 + rng.next() % 5) : 0;
        const int qlen = static_cast<int>(rng.next() % 3);
        const Time qwork = qlen * static_cast<Time>(1 + rng.next() % 4);
        bids.push_back({ids[static_cast<std::size_t>(i)], busy ? MachineStatus::Busy : MachineStatus::Idle, remaining, qlen,
                        qwork, static_cast<Time>(1 + rng.next() % 6)});
    }
    return bids;
}

}  // namespace

TEST_CASE("SMPT picks the shortest duration, lowest id on ties") {
    {
        const std::vector bids = {idle_bid(0, 6), idle_bid(1, 3)};
        CHECK(select_machine_smpt(invitation_for(bids), bids) == 1);
    }
    {
        const std::vector bids = {idle_bid(0, 4), idle_bid(1, 4)};
        CHECK(select_machine_smpt(invitation_for(bids), bids) == 0);
    }
    {
        const std::vector bids = {busy_bid(3, 50, 4, 40, 9)};
        CHECK(select_machine_smpt(invitation_for(bids), bids) == 3);
    }
}

TEST_CASE("WINQ picks the least workload, lowest id on ties") {
    {
        const std::vector bids = {idle_bid(0, 9), busy_bid(1, 3, 1, 4, 1)};
        CHECK(winq_workload(bids[0]) == 0);
        CHECK(winq_workload(bids[1]) == 7);
        CHECK(select_machine_winq(invitation_for(bids), bids) == 0);
    }
    {
        const std::vector bids = {idle_bid(0, 5), idle_bid(1, 1)};
        CHECK(select_machine_winq(invitation_for(bids), bids) == 0);
    }
    {
        const std::vector bids = {workload_bid(0, 5), workload_bid(1, 2), workload_bid(2, 9)};
        CHECK(select_machine_winq(invitation_for(bids), bids) == 1);
    }
}

TEST_CASE("WINQ queue-only knob ignores residual time") {
    const std::vector bids = {busy_bid(0, 10, 0, 0, 1), busy_bid(1, 1, 1, 3, 1)};
    CHECK(winq_workload(bids[0], WinqWorkload::QueueOnly) == 0);
    CHECK(select_machine_winq(invitation_for(bids), bids, WinqWorkload::ResidualPlusQueue) == 1);
    CHECK(select_machine_winq(invitation_for(bids), bids, WinqWorkload::QueueOnly) == 0);
}

TEST_CASE("splitmix64 matches independently computed values") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);
}

TEST_CASE("Random selection draws once per decision") {
    Invitation inv;
    inv.candidates = {1, 4, 5};
    inv.duration_on = {{1, 2}, {4, 2}, {5, 2}};
    SplitMix64 rng(0);
    // 0xE220A8397B1DCDAF mod 3 == 1
    CHECK(select_machine_random(inv, rng) == 4);

    Invitation single;
    single.candidates = {2};
    single.duration_on = {{2, 7}};
    SplitMix64 a(11);
    SplitMix64 b(11);
    CHECK(select_machine_random(single, a) == 2);
    b.next();
    CHECK(a == b);

    SplitMix64 x(42);
    SplitMix64 y(42);
    for (int i = 0; i < 100; ++i) CHECK(select_machine_random(inv, x) == select_machine_random(inv, y));
}

TEST_CASE("Random selection is roughly uniform") {
    Invitation inv;
    inv.candidates = {0, 1, 2, 3};
    inv.duration_on = {{0, 1}, {1, 1}, {2, 1}, {3, 1}};
    SplitMix64 rng(2024);
    std::array<int, 4> counts{};
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(select_machine_random(inv, rng))];
    for (int c : counts) {
        const double f = static_cast<double>(c) / draws;
        CHECK(f >= 0.23);
        CHECK(f <= 0.27);
    }
}

TEST_CASE("buffer rules") {
    const std::vector<BufferedWorkpiece> buffer = {{0, 0, 0, 5}, {1, 0, 0, 2}};
    CHECK(select_from_buffer(buffer, BufferRule::Fifo) == 0);
    CHECK(select_from_buffer(buffer, BufferRule::Filo) == 1);
    CHECK(select_from_buffer(buffer, BufferRule::Spt) == 1);

    const std::vector<BufferedWorkpiece> tie = {{2, 1, 0, 3}, {0, 0, 1, 3}};
    CHECK(select_from_buffer(tie, BufferRule::Spt) == 0);

    SplitMix64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<BufferedWorkpiece> buf(1 + rng.next() % 6);
        for (auto& w : buf) w.duration_here = static_cast<Time>(1 + rng.next() % 4);
        for (auto rule : kAllBufferRules) CHECK(select_from_buffer(buf, rule) < buf.size());
    }
}

TEST_CASE("property: bid order never changes a rule's choice") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        auto bids = random_bids(rng, 1 + static_cast<int>(rng.next() % 5));
        const Invitation inv = invitation_for(bids);
        const int smpt = select_machine_smpt(inv, bids);
        const int winq = select_machine_winq(inv, bids);
        const std::uint64_t seed = rng.next();
        SplitMix64 r1(seed);
        const int random = apply_machine_rule(MachineRule::Random, inv, bids, r1);
        std::reverse(bids.begin(), bids.end());
        CHECK(select_machine_smpt(inv, bids) == smpt);
        CHECK(select_machine_winq(inv, bids) == winq);
        SplitMix64 r2(seed);
        CHECK(apply_machine_rule(MachineRule::Random, inv, bids, r2) == random);
        std::rotate(bids.begin(), bids.begin() + 1, bids.end());
        CHECK(select_machine_smpt(inv, bids) == smpt);
        CHECK(select_machine_winq(inv, bids) == winq);
    }
}

TEST_CASE("property: SMPT translation and WINQ scale invariance") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const auto bids = random_bids(rng, 1 + static_cast<int>(rng.next() % 5));
        const Invitation inv = invitation_for(bids);
        const Time shift = static_cast<Time>(rng.next() % 100);
        const Time scale = static_cast<Time>(1 + rng.next() % 7);

        auto shifted = bids;
        for (auto& b : shifted) b.duration_for_op += shift;
        CHECK(select_machine_smpt(invitation_for(shifted), shifted) == select_machine_smpt(inv, bids));

        auto scaled = bids;
        for (auto& b : scaled) {
            b.remaining_time *= scale;
            b.queue_work *= scale;
        }
        CHECK(select_machine_winq(invitation_for(scaled), scaled) == select_machine_winq(inv, bids));
    }
}

TEST_CASE("apply_machine_rule dispatches to each heuristic and rejects llm") {
    const std::vector bids = {busy_bid(0, 4, 0, 0, 1), idle_bid(2, 6)};
    const Invitation inv = invitation_for(bids);
    SplitMix64 rng(0);
    CHECK(apply_machine_rule(MachineRule::Smpt, inv, bids, rng) == 0);
    CHECK(apply_machine_rule(MachineRule::Winq, inv, bids, rng) == 2);
    CHECK(rng == SplitMix64(0));
    CHECK_THROWS(apply_machine_rule(MachineRule::Llm, inv, bids, rng));
}

TEST_CASE("rule names round-trip") {
    for (auto r : kAllMachineRules) CHECK(parse_machine_rule(to_string(r)) == r);
    for (auto r : kAllBufferRules) CHECK(parse_buffer_rule(to_string(r)) == r);
    CHECK(parse_machine_rule("winq") == MachineRule::Winq);
    CHECK(parse_buffer_rule("spt") == BufferRule::Spt);
    CHECK_FALSE(parse_machine_rule("fastest").has_value());
}
