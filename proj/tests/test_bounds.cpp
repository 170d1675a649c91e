#include <gtest/gtest.h>

#include "pnvc/bounds.hpp"
#include "test_support.hpp"

using namespace pnvc;
using namespace pnvc::test;

namespace {

BoundParams params(std::uint64_t m, std::uint64_t W, std::uint64_t R, std::uint64_t k_prime = 1) {
    BoundParams p;
    p.m = m;
    p.W = W;
    p.R = R;
    p.k_prime = k_prime;
    return p;
}

BigInt exact(const BoundValue& v) {
    EXPECT_TRUE(v.materialized());
    return v.exact().value_or(BigInt(-1));
}

}  // namespace

TEST(BoundValue, ArithmeticAndCap) {
    EXPECT_EQ(exact(BoundValue(3) + BoundValue(4)), 7);
    EXPECT_EQ(exact(BoundValue(3) * BoundValue(4)), 12);
    EXPECT_EQ(exact(pow(BoundValue(2), BigInt(100))), BigInt(1) << 100);
    auto huge = pow(BoundValue(2), BigInt(100000));
    EXPECT_FALSE(huge.materialized());
    EXPECT_NEAR(huge.log2(), 100000.0, 1e-6);
    EXPECT_TRUE(BoundValue(5) <= huge);
    EXPECT_TRUE(huge < pow(BoundValue(3), BigInt(100000)));
    EXPECT_EQ(huge.to_string().substr(0, 2), "2^");
}

TEST(CoverBound, RecurrenceExamples) {
    EXPECT_EQ(exact(cover_bound_rec(0, params(3, 1, 2))), 6);
    EXPECT_EQ(exact(cover_bound_rec(0, params(3, 1, 0))), 0);
    // l(1) = R'^m (W l(0) + R)^1 + l(0) = 16 * 3 + 2
    EXPECT_EQ(exact(cover_bound_rec(1, params(2, 1, 1))), 50);
    // l(2) = 16 * (50 + 1)^2 + 50
    EXPECT_EQ(exact(cover_bound_rec(2, params(2, 1, 1))), 16 * 51 * 51 + 50);
}

TEST(CoverBound, ClosedExamples) {
    EXPECT_EQ(params(2, 1, 1).R_prime(), 4);
    EXPECT_EQ(exact(cover_bound_closed(0, params(2, 1, 1))), 256);
    EXPECT_EQ(exact(cover_bound_closed(1, params(3, 1, 1))), 191'102'976);
    EXPECT_TRUE(cover_bound_rec(1, params(2, 1, 1)) <= cover_bound_closed(1, params(2, 1, 1)));
}

TEST(CoverBound, RecurrenceBelowClosedForm) {
    for (std::uint64_t m = 1; m <= 4; ++m)
        for (std::uint64_t W = 1; W <= 4; ++W)
            for (std::uint64_t R = 1; R <= 4; ++R)
                for (std::uint64_t k = 1; k <= 4; ++k)
                    for (std::uint64_t i = 0; i <= 3; ++i) {
                        auto p = params(m, W, R, k);
                        EXPECT_TRUE(cover_bound_rec(i, p) <= cover_bound_closed(i, p))
                            << m << " " << W << " " << R << " " << k << " " << i;
                    }
}

TEST(ScsBound, Examples) {
    BoundParams p = params(2, 1, 0, 1);
    p.U_prime = 2;
    p.d = 2;
    p.c_prime = 1;
    EXPECT_EQ(exact(scs_bound(0, 1, p).recurrence), 81);
    // l1(1,1) = 8k' (2W l1(0,2))^h ((U'+W)W)^(c' m^4), l1(0,2) = 4^4
    EXPECT_EQ(exact(scs_bound(1, 1, p).recurrence), BigInt(8) * 512 * boost::multiprecision::pow(BigInt(3), 16));
    EXPECT_FALSE(scs_bound(1, 1, p).closed);  // h = 1

    BoundParams q = params(1, 1, 0, 1);
    q.U_prime = 0;
    q.d = 1;
    EXPECT_EQ(exact(scs_bound(0, 0, q).recurrence), 1);
}

TEST(PumpBound, Examples) {
    BoundParams p = params(1, 1, 0, 1);
    p.U_prime = 0;
    p.c_prime = 1;
    EXPECT_EQ(exact(pump_bound(0, 0, p).recurrence), 16);
    for (std::uint64_t u = 0; u < 4; ++u) {
        BoundParams q = params(2, 2, 0, 2);
        q.U_prime = u;
        EXPECT_TRUE(pump_bound(0, 0, q).recurrence <= pump_bound(0, 1, q).recurrence);
    }
}

TEST(DualEvaluation, ClosedFormsDominateRecurrences) {
    // h = c' k'^3 >= 2 is needed for the closed forms.
    for (std::uint64_t k = 1; k <= 2; ++k)
        for (std::uint64_t W = 1; W <= 2; ++W)
            for (std::uint64_t i = 0; i <= 2; ++i)
                for (std::uint64_t j = 0; j <= 1; ++j) {
                    BoundParams p = params(2, W, 1, k);
                    p.U_prime = 2;
                    auto s = scs_bound(i, j, p);
                    auto q = pump_bound(i, j, p);
                    ASSERT_TRUE(s.closed && q.closed);
                    EXPECT_TRUE(s.recurrence <= *s.closed) << k << W << i << j;
                    EXPECT_TRUE(q.recurrence <= *q.closed) << k << W << i << j;
                }
}

TEST(DualEvaluation, PumpStepByHand) {
    BoundParams p = params(1, 1, 0, 1);
    p.U_prime = 1;
    p.c_prime = 1;
    // l2(0,j) = 8mk'(2 base W)^(c'm^4): base(j=1) = 2 -> 8 * 4 = 32
    EXPECT_EQ(exact(pump_bound(0, 1, p).recurrence), 32);
    // l2(1,0) = 10mk' (2W l2(0,1))^h (base W)^(c'm^4) = 10 * 64 * 1
    EXPECT_EQ(exact(pump_bound(1, 0, p).recurrence), 640);
}

TEST(BoundFunction, Examples) {
    auto [net, m0] = net_a();
    EXPECT_THROW(ef_bound_fn(0, {}, net, m0, 3), Error);
    auto one = ef_bound_fn(1, {4}, net, m0, 3);
    ASSERT_EQ(one.f.size(), 1u);
    for (PlaceId p = 0; p < 3; ++p) EXPECT_EQ(exact(one.f[0][p]), m0[p]);

    auto two = ef_bound_fn(2, {0, 1}, net, m0, 3);
    for (PlaceId p = 0; p < 3; ++p) {
        EXPECT_EQ(exact(two.f[1][p]), 1);
        EXPECT_EQ(exact(two.f[0][p]), m0[p]);
    }
    EXPECT_EQ(exact(two.ell_prime[1]), exact(cover_bound_closed(3, 3, 1, BoundValue(1))));

    // D = 3 written out: f(2) = ratio(2), f(1) = max(ratio(1), W l'(f(2)) + f(2)).
    auto net1 = parse_net("net s\nplaces a\ntransition t\n in a:1\n out a:1\nmarking a:1\n");
    auto three = ef_bound_fn(3, {0, 5, 2}, net1.net, net1.initial, 1);
    const BigInt l2 = exact(cover_bound_closed(1, 1, 1, BoundValue(2)));
    EXPECT_EQ(l2, BigInt(2 * 1 * 1 * 2 * (2 + 3)) * BigInt(2 * 2 * 5));  // (2mWRR')^(m*2!) = 20^2
    EXPECT_EQ(exact(three.f[2][0]), 2);
    EXPECT_EQ(exact(three.f[1][0]), l2 + 2);
    EXPECT_EQ(exact(three.f[0][0]), 1);
}

TEST(Params, Derived) {
    BoundParams p = params(2, 2, 3, 2);
    EXPECT_EQ(p.R_prime(), 3 + 2 + 4 + 8);
    EXPECT_EQ(p.h(), 2 * 8);
    EXPECT_EQ(BoundParams::u_prime_short_scs(1, 2), 1 + 2 + 4 + 8);
    EXPECT_EQ(BoundParams::u_prime_theorem(1, 2), 1 + 4 + 8);
}
