#include <gtest/gtest.h>

#include "pnvc/deciders.hpp"
#include "pnvc/generator.hpp"
#include "test_support.hpp"

using namespace pnvc;
using namespace pnvc::test;

namespace {

const BoundValue kLong = BoundValue(1000);

}  // namespace

TEST(CoverBackward, NetA) {
    auto [net, m0] = net_a();
    auto no = cover_backward(net, m0, mk({1, 1, 0}));
    EXPECT_EQ(no.verdict, CoverVerdict::NotCovered);
    auto yes = cover_backward(net, m0, mk({0, 0, 1}));
    EXPECT_EQ(yes.verdict, CoverVerdict::Covered);
    EXPECT_EQ(*yes.witness, seq(net, {"t1"}));
    auto zero = cover_backward(net, m0, mk({0, 0, 0}));
    EXPECT_EQ(zero.verdict, CoverVerdict::Covered);
    EXPECT_TRUE(zero.witness->empty());
}

TEST(CoverForward, NetA) {
    auto [net, m0] = net_a();
    auto five = cover_forward_bounded(net, m0, mk({0, 0, 5}), BoundValue(9));
    ASSERT_EQ(five.verdict, CoverVerdict::Covered);
    auto expect = repeat(seq(net, {"t1", "t2"}), 4);
    expect.push_back(*net.find_transition("t1"));
    EXPECT_EQ(*five.witness, expect);
    EXPECT_EQ(cover_forward_bounded(net, m0, mk({1, 1, 0}), kLong).verdict, CoverVerdict::NotCovered);
    EXPECT_EQ(cover_forward_bounded(net, m0, mk({1, 1, 0}), BoundValue(3), 50).verdict, CoverVerdict::NotCovered);
    EXPECT_EQ(cover_forward_bounded(net, m0, mk({0, 0, 1}), BoundValue(0)).verdict, CoverVerdict::NotCovered);
    EXPECT_EQ(cover_forward_bounded(net, m0, mk({0, 0, 1}), kLong).witness, seq(net, {"t1"}));
}

TEST(CoverBackward, ShortestWitness) {
    auto [net, m0] = net_a();
    auto r = cover_backward(net, m0, mk({0, 0, 5}));
    ASSERT_EQ(r.verdict, CoverVerdict::Covered);
    EXPECT_EQ(r.witness->size(), 9u);
}

TEST(ShortestCoverLen, NetA) {
    auto [net, m0] = net_a();
    EXPECT_EQ(shortest_cover_len(net, m0, mk({0, 0, 1}), 10), 1u);
    EXPECT_EQ(shortest_cover_len(net, m0, mk({0, 0, 0}), 10), 0u);
    EXPECT_EQ(shortest_cover_len(net, m0, mk({1, 1, 0}), 50), std::nullopt);
    EXPECT_EQ(shortest_cover_len(net, m0, mk({0, 0, 5}), 9), 9u);
    EXPECT_EQ(shortest_cover_len(net, m0, mk({0, 0, 5}), 8), std::nullopt);
}

TEST(KarpMiller, NetA) {
    auto [net, m0] = net_a();
    auto km = karp_miller(net, m0);
    EXPECT_TRUE(km.complete);
    bool omega3 = false;
    for (const auto& n : km.nodes) {
        EXPECT_FALSE(n.marking.is_omega(0));
        EXPECT_FALSE(n.marking.is_omega(1));
        omega3 = omega3 || n.marking.is_omega(2);
    }
    EXPECT_TRUE(omega3);
    auto empty = parse_net("net e\nplaces a b\nmarking a:2\n");
    auto k0 = karp_miller(empty.net, empty.initial);
    EXPECT_EQ(k0.nodes.size(), 1u);
    EXPECT_TRUE(k0.complete);
}

TEST(Bounded, Examples) {
    auto [net, m0] = net_a();
    auto r = is_bounded(net, m0);
    EXPECT_EQ(r.verdict, BoundedVerdict::Unbounded);
    EXPECT_EQ(r.km_verdict, BoundedVerdict::Unbounded);
    EXPECT_EQ(r.scs_verdict, BoundedVerdict::Unbounded);
    EXPECT_EQ(r.method, BoundedMethod::Both);
    ASSERT_TRUE(r.self_covering);
    EXPECT_EQ(r.self_covering->sequence, seq(net, {"t1", "t2"}));

    auto empty = parse_net("net e\nplaces a\nmarking a:1\n");
    EXPECT_EQ(is_bounded(empty.net, empty.initial).verdict, BoundedVerdict::Bounded);
    auto only_t2 = net.without_transition(*net.find_transition("t1"));
    EXPECT_EQ(is_bounded(only_t2, m0).verdict, BoundedVerdict::Bounded);
}

TEST(SelfCovering, Examples) {
    auto [net, m0] = net_a();
    auto w = find_self_covering(net, m0, 2);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->sequence, seq(net, {"t1", "t2"}));
    EXPECT_EQ(w->split, 0u);
    EXPECT_TRUE(is_self_covering(net, m0, *w));
    EXPECT_FALSE(find_self_covering(net, m0, 1));
    EXPECT_FALSE(find_self_covering(net, m0, 0));
    auto only_t2 = net.without_transition(*net.find_transition("t1"));
    auto s = search_self_covering(only_t2, m0, 50);
    EXPECT_FALSE(s.witness);
    EXPECT_TRUE(s.exhaustive);
    EXPECT_TRUE(s.reachable_set_finite);
}

TEST(SelfCovering, ShortestThenLexicographic) {
    // t2 alone is a self-covering step, but t1 is lexicographically first.
    auto pn = parse_net(
        "net l\nplaces a b\ntransition t1\n in a:1\n out a:1 b:1\ntransition t2\n in a:1\n out a:2\nmarking a:1\n");
    auto w = find_self_covering(pn.net, pn.initial, 5);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->sequence, seq(pn.net, {"t1"}));
}

TEST(Pumping, NetA) {
    auto [net, m0] = net_a();
    const PlaceSet p3 = PlaceSet::of(3, {2});
    auto d = find_pumping(net, m0, p3, 6);
    ASSERT_TRUE(d);
    EXPECT_EQ(d->flatten(), seq(net, {"t1", "t2"}));
    EXPECT_TRUE(is_pumping_sequence(net, m0, *d, p3));
    EXPECT_TRUE(d->pumped_set.back().contains(2));

    PumpingDecomposition manual;
    manual.segments = {{{}, seq(net, {"t1", "t2"})}};
    refresh_pumped_sets(net, manual);
    EXPECT_TRUE(is_pumping_sequence(net, m0, manual, p3));

    auto none = search_pumping(net, m0, PlaceSet::of(3, {0}), 8);
    EXPECT_FALSE(none.found);
    EXPECT_TRUE(none.exhaustive);
    EXPECT_THROW(find_pumping(net, m0, PlaceSet(3), 4), Error);
}

TEST(Pumping, Repetitions) {
    auto one = pumping_repetitions(1, 7, 3);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], 1);
    auto two = pumping_repetitions(2, 5, 1);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[1], 1);
    EXPECT_EQ(two[0], 8);
}

TEST(Pumping, StrengthenWeak) {
    // a feeds b; t2 pumps b but needs a token in b to start, so the weak
    // decomposition below (pumping b first) only becomes enabled after repetition.
    auto pn = parse_net(
        "net w\nplaces a b\n"
        "transition t1\n in a:1\n out a:1 b:1\n"
        "transition t2\n in b:1\n out b:2\n"
        "marking a:1\n");
    const auto& net = pn.net;
    const PlaceSet b = PlaceSet::of(2, {1});
    auto weak = search_weak_pumping(net, pn.initial, b, 6);
    ASSERT_TRUE(weak.found);
    auto strong = strengthen_pumping_decomposition(net, pn.initial, *weak.found, b);
    EXPECT_TRUE(is_pumping_sequence(net, pn.initial, strong, b));
    EXPECT_NO_THROW(fire_sequence(net, pn.initial, strengthen_pumping(net, pn.initial, *weak.found, b)));

    PumpingDecomposition bad;
    bad.segments = {{{}, seq(net, {"t2"})}};
    refresh_pumped_sets(net, bad);
    EXPECT_NE(weak_pumping_violation(net, pn.initial, bad, b), 0);
    EXPECT_THROW(strengthen_pumping_decomposition(net, pn.initial, bad, b), PreconditionError);
}

TEST(Omega, Basics) {
    auto [net, m0] = net_a();
    OmegaMarking w(std::vector<Tokens>{1, 0, kOmega});
    EXPECT_TRUE(w.has_omega());
    EXPECT_TRUE(OmegaMarking(m0).leq(w));
    EXPECT_TRUE(w.covers(mk({1, 0, 100})));
    EXPECT_EQ(w.to_string(net), "(1,0,w)");
    EXPECT_TRUE(omega_enabled(net, w, 0));
    EXPECT_TRUE(omega_fire(net, w, 0).is_omega(2));
}

TEST(Properties, WitnessesReplayAndOraclesAgree) {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        GenSpec spec;
        spec.places = 1 + seed % 4;
        spec.transitions = 1 + seed % 5;
        spec.max_weight = static_cast<Weight>(1 + seed % 2);
        auto g = gen_net(spec, seed);
        std::vector<Tokens> t(spec.places);
        for (std::size_t p = 0; p < t.size(); ++p) t[p] = static_cast<Tokens>((seed + p) % 3);
        const Marking target(t);
        auto b = cover_backward(g.net, g.m0, target);
        auto f = cover_forward_bounded(g.net, g.m0, target, kLong);
        if (b.verdict != CoverVerdict::Inconclusive && f.verdict != CoverVerdict::Inconclusive)
            EXPECT_EQ(b.verdict, f.verdict) << seed;
        for (const auto* r : {&b, &f})
            if (r->witness) EXPECT_TRUE(fire_sequence(g.net, g.m0, *r->witness, false).final.covers(target));
        if (b.witness && f.witness) EXPECT_EQ(b.witness->size(), f.witness->size());

        auto km = karp_miller(g.net, g.m0);
        auto s = search_self_covering(g.net, g.m0, 1000);
        if (s.witness) {
            EXPECT_TRUE(is_self_covering(g.net, g.m0, *s.witness));
            EXPECT_TRUE(km.has_omega());
        }
        if (s.reachable_set_finite) EXPECT_FALSE(km.has_omega());
    }
}
