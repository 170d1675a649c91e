#include <gtest/gtest.h>

#include "pnvc/logic.hpp"
#include "test_support.hpp"

using namespace pnvc;
using namespace pnvc::test;

namespace {

Truth kappa(const char* f) {
    auto [net, m0] = net_a();
    return check_kappa(net, m0, *parse_formula(f, net)).verdict;
}

Truth beta(const char* f) {
    auto [net, m0] = net_a();
    return check_beta(net, m0, *parse_formula(f, net)).verdict;
}

Truth phi(const char* f) {
    auto [net, m0] = net_a();
    return check_phi(net, m0, *parse_formula(f, net)).verdict;
}

}  // namespace

TEST(Parse, Examples) {
    auto [net, m0] = net_a();
    auto ef = parse_formula("EF(p1 >= 1 && p2 >= 1)", net);
    EXPECT_EQ(ef->kind, Formula::Kind::EF);
    EXPECT_EQ(ef->kids[0]->kind, Formula::Kind::And);
    EXPECT_TRUE(ef->is_kappa());

    auto b = parse_formula("{p1 + p2 + p3} < omega", net);
    EXPECT_EQ(b->kind, Formula::Kind::Bounded);
    ASSERT_EQ(b->terms.size(), 1u);
    EXPECT_EQ(b->terms[0].coeffs, (std::vector<Tokens>{1, 1, 1}));
    EXPECT_TRUE(b->is_beta());

    auto a = parse_formula("2*p1 + p2 >= 3", net);
    EXPECT_EQ(a->atom.term.coeffs, (std::vector<Tokens>{2, 1, 0}));
    EXPECT_EQ(a->atom.c, 3);
}

TEST(Parse, PrecedenceAndRoundTrip) {
    auto [net, m0] = net_a();
    auto f = parse_formula("p1>=1 || p2>=1 && p3>=2", net);
    ASSERT_EQ(f->kind, Formula::Kind::Or);
    EXPECT_EQ(f->kids[1]->kind, Formula::Kind::And);
    auto g = parse_formula("!{p3} < omega && EF(EF(p3 >= 2))", net);
    EXPECT_EQ(g->kind, Formula::Kind::And);
    EXPECT_EQ(g->kids[0]->kind, Formula::Kind::Not);
    EXPECT_EQ(g->kids[1]->ef_depth(), 2u);
    for (const char* s : {"EF((p1 >= 1 && p2 >= 1))", "({p1, 2*p3} < omega || !{p2} < omega)"}) {
        auto x = parse_formula(s, net);
        EXPECT_EQ(to_string(*parse_formula(to_string(*x, net), net), net), to_string(*x, net));
    }
}

TEST(Parse, Errors) {
    auto [net, m0] = net_a();
    auto code = [&](const char* s) {
        try {
            parse_formula(s, net);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    EXPECT_EQ(code("p9 >= 1"), ErrorCode::UnknownIdentifier);
    EXPECT_EQ(code("p1 >= -1"), ErrorCode::Syntax);
    EXPECT_EQ(code("p1 <= 1"), ErrorCode::Syntax);  // no reachability-style atoms
    EXPECT_EQ(code("!(p1 >= 1)"), ErrorCode::Syntax);
    EXPECT_EQ(code("EF({p1} < omega)"), ErrorCode::Syntax);
    EXPECT_EQ(code("p1 >= 1 &&"), ErrorCode::Syntax);
}

TEST(Eval, TermsAndRatios) {
    auto [net, m0] = net_a();
    Term t{{1, 1, 1}};
    EXPECT_EQ(eval_term(t, mk({1, 0, 5})), 6);
    EXPECT_EQ(eval_term(t, mk({0, 0, 0})), 0);
    EXPECT_EQ(eval_term(Term{{2, 0, 1}}, mk({1, 0, 3})), 5);
    EXPECT_EQ(ratio(parse_formula("p1 >= 1", net)->atom), 1u);
    EXPECT_EQ(ratio(parse_formula("2*p1 + p2 >= 3", net)->atom), 3u);
    EXPECT_EQ(ratio(parse_formula("p1 + p3 >= 0", net)->atom), 0u);
}

TEST(ObligationTrees, Enumeration) {
    auto [net, m0] = net_a();
    EXPECT_EQ(obligation_trees(*parse_formula("p1>=1 && EF(p2>=1 && EF(p3>=2))", net)).size(), 1u);
    auto two = obligation_trees(*parse_formula("p1>=1 || p2>=1", net));
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0].depth(), 1u);
    EXPECT_EQ(two[0].content[0].term.coeffs[0], 1);  // left disjunct first
    auto nested = obligation_trees(*parse_formula("EF(p1>=1 || EF(p2>=1))", net));
    ASSERT_EQ(nested.size(), 2u);
    EXPECT_EQ(nested[0].depth(), 2u);
    EXPECT_EQ(nested[1].depth(), 3u);
    EXPECT_EQ(nested[1].ratios(), (std::vector<std::uint64_t>{0, 0, 1}));
}

TEST(Kappa, NetA) {
    EXPECT_EQ(kappa("EF(p1 >= 1 && p2 >= 1)"), Truth::False);
    EXPECT_EQ(kappa("p1 >= 1"), Truth::True);
    EXPECT_EQ(kappa("p2 >= 1"), Truth::False);
    EXPECT_EQ(kappa("EF(p3 >= 4)"), Truth::True);
    EXPECT_EQ(kappa("EF(p2 >= 1 && EF(p1 >= 1 && p3 >= 3))"), Truth::True);
    EXPECT_EQ(kappa("EF(p2 >= 2)"), Truth::False);
}

TEST(Kappa, DepthLimit) {
    auto [net, m0] = net_a();
    auto f = parse_formula("EF(EF(EF(EF(EF(EF(p3 >= 1))))))", net);
    try {
        check_kappa(net, m0, *f);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DepthTooLarge);
    }
    CheckOptions opts;
    opts.max_depth = 7;
    EXPECT_EQ(check_kappa(net, m0, *f, opts).verdict, Truth::True);
}

TEST(Kappa, BoundedNetExactSearch) {
    // Finite state space: answered by the capped BFS alone.
    auto pn = parse_net("net c\nplaces a b\ntransition t\n in a:1\n out b:1\ntransition u\n in b:1\n out a:1\nmarking a:2\n");
    auto yes = check_kappa(pn.net, pn.initial, *parse_formula("EF(b >= 2)", pn.net));
    EXPECT_EQ(yes.verdict, Truth::True);
    auto no = check_kappa(pn.net, pn.initial, *parse_formula("EF(b >= 3)", pn.net));
    EXPECT_EQ(no.verdict, Truth::False);
    EXPECT_TRUE(no.bound);
}

TEST(Beta, NetA) {
    EXPECT_EQ(beta("{p1 + p2 + p3} < omega"), Truth::False);
    EXPECT_EQ(beta("{p1 + p2} < omega"), Truth::True);
    EXPECT_EQ(beta("!{p3} < omega"), Truth::True);
    EXPECT_EQ(beta("{p1, p3} < omega"), Truth::True);  // p1 is never unbounded
}

TEST(Phi, Combinations) {
    EXPECT_EQ(phi("p1 >= 1 && {p1 + p2} < omega"), Truth::True);
    EXPECT_EQ(phi("EF(p3 >= 1) && {p1 + p2} < omega"), Truth::True);
    EXPECT_EQ(phi("EF(p1 >= 1 && p2 >= 1) || {p1 + p2 + p3} < omega"), Truth::False);
}

TEST(Kleene, Tables) {
    EXPECT_EQ(truth_and(Truth::False, Truth::Unknown), Truth::False);
    EXPECT_EQ(truth_and(Truth::True, Truth::Unknown), Truth::Unknown);
    EXPECT_EQ(truth_or(Truth::True, Truth::Unknown), Truth::True);
    EXPECT_EQ(truth_or(Truth::False, Truth::Unknown), Truth::Unknown);
    EXPECT_EQ(truth_not(Truth::Unknown), Truth::Unknown);
}

TEST(WeakPumping, NetA) {
    auto [net, m0] = net_a();
    auto r = find_weak_pumping_crosscheck(net, m0, PlaceSet::of(3, {2}), 6);
    ASSERT_TRUE(r.weak);
    EXPECT_TRUE(r.strengthened_valid);
    ASSERT_TRUE(r.strengthened);
    EXPECT_NO_THROW(fire_sequence(net, m0, *r.strengthened));
    auto none = find_weak_pumping_crosscheck(net, m0, PlaceSet::of(3, {0, 2}), 8);
    EXPECT_FALSE(none.weak);
    EXPECT_TRUE(none.exhaustive);
    EXPECT_THROW(find_weak_pumping_crosscheck(net, m0, PlaceSet(3), 4), Error);
}

TEST(CandidateSets, OnePlacePerTerm) {
    std::vector<Term> terms{Term{{1, 1, 0}}, Term{{0, 1, 1}}};
    auto sets = candidate_sets(terms, 3);
    // {p1,p2} {p1,p3} {p2} {p2,p3}
    EXPECT_EQ(sets.size(), 4u);
}

TEST(GuessFunction, MinWithBound) {
    std::vector<BoundValue> f{BoundValue(2), BoundValue(10), BoundValue(0)};
    EXPECT_EQ(guess_function(mk({5, 3, 1}), f), mk({2, 3, 0}));
}
