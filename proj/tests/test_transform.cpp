#include <gtest/gtest.h>

#include "pnvc/transform.hpp"
#include "test_support.hpp"

using namespace pnvc;
using namespace pnvc::test;

namespace {

struct NetB {
    PetriNet net;
    Marking m0;
    Decomposition d;
    PlaceId p5, p6;
};

NetB net_b_fixture() {
    auto [net, m0] = net_b();
    auto d = analyze_structure(net);
    return {net, m0, d, net.place_index("p5"), net.place_index("p6")};
}

Marking with(const PetriNet& net, const char* list) { return parse_marking_list(net, list); }

}  // namespace

TEST(SafeForTransfer, Examples) {
    auto b = net_b_fixture();
    const auto s = seq(b.net, {"t1", "t2", "t3", "t4"});
    EXPECT_TRUE(is_safe_for_transfer(b.net, s, SubWord{}, b.p5));
    EXPECT_TRUE(is_safe_for_transfer(b.net, s, SubWord{{0, 1}}, b.p5));   // +1, -1
    EXPECT_FALSE(is_safe_for_transfer(b.net, s, SubWord{{1, 2}}, b.p5));  // -1, +1
    EXPECT_THROW(is_safe_for_transfer(b.net, s, SubWord{{0}}, b.p6), Error);
}

TEST(SafeForTransfer, MatchesPrefixSums) {
    auto b = net_b_fixture();
    const auto s = repeat(seq(b.net, {"t1", "t2", "t3", "t4"}), 3);
    // Every subset of the 12 positions (all touch p5).
    for (std::uint32_t mask = 0; mask < (1u << s.size()); ++mask) {
        SubWord sw;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (mask >> i & 1) sw.positions.push_back(i);
        Tokens sum = 0;
        bool ok = true;
        for (std::size_t pos : sw.positions) {
            sum += b.net.delta(b.p5, s[pos]);
            if (sum < 0) ok = false;
        }
        ASSERT_EQ(is_safe_for_transfer(b.net, s, sw, b.p5), ok);
    }
}

TEST(Transfer, T1BecomesT5) {
    auto b = net_b_fixture();
    const auto s = seq(b.net, {"t1", "t2", "t3", "t4"});
    auto r = transfer(b.net, s, SubWord{{0}}, b.p5, b.p6, b.d);
    EXPECT_EQ(r.new_sequence, seq(b.net, {"t5", "t2", "t3", "t4"}));
    ASSERT_EQ(r.replaced.size(), 1u);
    EXPECT_EQ(r.replaced[0].from, *b.net.find_transition("t1"));
    EXPECT_EQ(r.replaced[0].to, *b.net.find_transition("t5"));
}

TEST(Transfer, IdentityAndReverse) {
    auto b = net_b_fixture();
    const auto s = repeat(seq(b.net, {"t1", "t2", "t3", "t4"}), 2);
    EXPECT_EQ(transfer(b.net, s, SubWord{}, b.p5, b.p6, b.d).new_sequence, s);
    const SubWord sw{{0, 2, 5, 7}};
    auto there = transfer(b.net, s, sw, b.p5, b.p6, b.d);
    auto back = transfer(b.net, there.new_sequence, sw, b.p6, b.p5, b.d);
    EXPECT_EQ(back.new_sequence, s);
    ASSERT_EQ(there.new_sequence.size(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        EXPECT_EQ(b.d.types.assignment[s[i]], b.d.types.assignment[there.new_sequence[i]]);
}

TEST(Transfer, Errors) {
    auto b = net_b_fixture();
    const auto s = seq(b.net, {"t1", "t2"});
    try {
        transfer(b.net, s, SubWord{{0}}, b.p5, 0, b.d);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::VarietyMismatch);
    }
    try {
        transfer(b.net, s, SubWord{{0}}, b.p6, b.p5, b.d);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ArcMissing);
    }
    EXPECT_THROW(transfer(b.net, s, SubWord{{1, 0}}, b.p5, b.p6, b.d), Error);
}

TEST(Truncate, CraftedUnitWeights) {
    auto b = net_b_fixture();
    const auto m0 = with(b.net, "p1:1,p6:2");
    const auto s = seq(b.net, {"t1", "t6", "t3", "t8", "t5", "t2", "t7", "t4"});
    // p5: 0 1 1 2 2 2 1 1 0
    auto r = truncate(b.net, s, m0, b.p5, b.p6, 0, 0, 3, 8, b.d);
    EXPECT_EQ(r.sub_word.positions, (std::vector<std::size_t>{2, 5}));
    EXPECT_EQ(r.m1_prime, 2u);
    EXPECT_EQ(r.m3_prime, 6u);
    EXPECT_EQ(r.w1, 1u);
    EXPECT_EQ(r.w2, 1u);
    const auto before = fire_sequence(b.net, m0, s).chain;
    const auto after = fire_sequence(b.net, m0, r.transfer.new_sequence).chain;
    EXPECT_EQ(after[3][b.p5], before[3][b.p5] - 1);
    for (const auto& m : after) EXPECT_GE(m[b.p5], 0);
    auto c = check_truncation(b.net, s, m0, b.p5, r);
    EXPECT_TRUE(c.all());
    EXPECT_TRUE(c.enabled);
}

TEST(Truncate, Hypotheses) {
    auto b = net_b_fixture();
    const auto m0 = with(b.net, "p1:1,p6:2");
    const auto low = seq(b.net, {"t1", "t2"});  // p5 peaks at 1 = e + W^2 + W^3 - 1
    auto hyp = [&](const FiringSequence& s, Tokens e, std::size_t i1, std::size_t i2, std::size_t i3) {
        try {
            truncate(b.net, s, m0, b.p5, b.p6, e, i1, i2, i3, b.d);
        } catch (const HypothesesUnmetError& ex) {
            return std::optional<TruncationHypothesis>(ex.hypothesis());
        }
        return std::optional<TruncationHypothesis>();
    };
    EXPECT_EQ(hyp(low, 0, 0, 1, 2), TruncationHypothesis::PeakValue);
    const auto s = seq(b.net, {"t1", "t6", "t3", "t8", "t5", "t2", "t7", "t4"});
    EXPECT_EQ(hyp(s, 1, 0, 3, 8), TruncationHypothesis::StartValue);
    EXPECT_EQ(hyp(s, 0, 3, 2, 8), TruncationHypothesis::IndexOrder);
    EXPECT_EQ(hyp(s, 0, 0, 3, 5), TruncationHypothesis::EndValue);
    // p5 climbs to 4; index 3 holds 2, above the threshold but not the maximum.
    auto tall = repeat(seq(b.net, {"t1", "t6", "t3", "t8"}), 2);
    const auto fall = repeat(seq(b.net, {"t5", "t2", "t7", "t4"}), 2);
    tall.insert(tall.end(), fall.begin(), fall.end());
    const auto m4 = with(b.net, "p1:1,p6:4");
    try {
        truncate(b.net, tall, m4, b.p5, b.p6, 0, 0, 3, 16, b.d);
        FAIL();
    } catch (const HypothesesUnmetError& ex) {
        EXPECT_EQ(ex.hypothesis(), TruncationHypothesis::PeakMaximal);
    }
    EXPECT_TRUE(check_truncation(b.net, tall, m4, b.p5, truncate(b.net, tall, m4, b.p5, b.p6, 0, 0, 7, 16, b.d)).all());
    try {
        truncate(b.net, s, m0, b.p5, 0, 0, 0, 3, 8, b.d);
        FAIL();
    } catch (const HypothesesUnmetError& ex) {
        EXPECT_EQ(ex.hypothesis(), TruncationHypothesis::VarietyEqual);
    }
}

TEST(ReducePeaks, UnchangedBelowCap) {
    auto b = net_b_fixture();
    const auto s = repeat(seq(b.net, {"t5", "t6", "t7", "t8"}), 4);
    auto r = reduce_peaks(b.net, s, b.m0, b.d, 3);
    EXPECT_TRUE(r.within_cap);
    EXPECT_EQ(r.sequence, s);
    EXPECT_EQ(r.truncations, 0u);
}

TEST(ReducePeaks, PumpedIndependentPlace) {
    auto b = net_b_fixture();
    const Tokens K = 20;
    const auto m0 = with(b.net, "p1:1,p5:20");
    auto s = repeat(seq(b.net, {"t5", "t2", "t7", "t4"}), K / 2);
    const auto down = repeat(seq(b.net, {"t1", "t6", "t3", "t8"}), K / 2);
    s.insert(s.end(), down.begin(), down.end());
    const auto orig = fire_sequence(b.net, m0, s);
    Tokens peak = 0;
    for (const auto& m : orig.chain) peak = std::max(peak, m[b.p6]);
    ASSERT_EQ(peak, K);

    const Tokens cap = 6;
    auto r = reduce_peaks(b.net, s, m0, b.d, cap);
    ASSERT_TRUE(r.within_cap) << r.reason;
    EXPECT_GT(r.truncations, 0u);
    const auto out = fire_sequence(b.net, m0, r.sequence);  // throws if not enabled
    for (const auto& m : out.chain) EXPECT_LE(m[b.p6], cap);
    for (PlaceId p : b.d.special.members()) EXPECT_EQ(out.final[p], orig.final[p]);
    EXPECT_EQ(out.final[b.p6], orig.final[b.p6]);
}

TEST(ReducePeaks, ImpossibleCap) {
    auto b = net_b_fixture();
    const auto s = seq(b.net, {"t5", "t6"});
    auto r = reduce_peaks(b.net, s, b.m0, b.d, 0);
    EXPECT_FALSE(r.within_cap);
    EXPECT_FALSE(r.reason.empty());
}
