#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "lattice_scope/explicit_cover.hpp"

using namespace lattice_scope;

namespace {

// Independent recount with std::gcd and set-based membership.
std::uint64_t naive_exceptional(const ExplicitCoverPlan& plan) {
    const std::set<LatticePoint> cover(plan.b_n.begin(), plan.b_n.end());
    std::uint64_t missed = 0;
    const auto n = static_cast<std::int64_t>(plan.n);
    for (std::int64_t x = 0; x <= n; ++x)
        for (std::int64_t y = 0; y <= n; ++y) {
            bool seen = false;
            for (const auto& p : cover)
                if (!(p == LatticePoint{x, y}) && std::gcd(p.x - x, p.y - y) == 1) {
                    seen = true;
                    break;
                }
            missed += !seen;
        }
    return missed;
}

double loglog(double n) { return std::log(std::log(n)); }

}  // namespace

TEST(EnG, Examples) {
    const auto t = sieve_build(100);
    EXPECT_EQ(en_g(10, 1.0, t), (std::vector<std::uint64_t>{2, 3, 4, 5, 6, 7, 8, 9, 10}));
    EXPECT_EQ(en_g(30, 3.0, t), (std::vector<std::uint64_t>{30}));
    EXPECT_TRUE(en_g(100, 4.0, t).empty());
    EXPECT_THROW(en_g(101, 1.0, t), std::out_of_range);
    EXPECT_THROW(en_g(10, 0.0, t), std::invalid_argument);
}

TEST(EnG, RealThresholdNotRounded) {
    const auto t = sieve_build(1000);
    // 2.01 is not rounded down to 2: only omega >= 3 qualifies.
    const auto e = en_g(1000, 2.01, t);
    for (const auto m : e) EXPECT_GE(t.omega(m), 3);
    EXPECT_EQ(e.front(), 30u);
}

TEST(Plan, LogLogParameters) {
    const auto t = sieve_build(10'000);
    const double g = 2.0 * loglog(1e4);
    EXPECT_NEAR(g, 4.44, 0.005);
    const auto plan = build_plan(10'000, g, t);
    EXPECT_EQ(plan.s, 44);
    EXPECT_EQ(plan.t, 3);
    EXPECT_EQ(plan.t0, 1);
    EXPECT_EQ(plan.b_n.size(), static_cast<std::size_t>(2 * 6 * 88 - 6 * 6));
    EXPECT_LE(static_cast<std::int64_t>(plan.b_n.size()), 8 * plan.s * plan.t);
}

TEST(Plan, RatioThresholdHasEmptyExceptionalSet) {
    const auto t = sieve_build(100'000);
    const double g = 2.0 * std::log(1e5) / loglog(1e5);
    EXPECT_NEAR(g, 9.42, 0.01);
    const auto plan = build_plan(100'000, g, t);
    EXPECT_TRUE(plan.en_g.empty());
    EXPECT_TRUE(plan.index_set.empty());
    BigInt primorial10 = 1;
    for (const auto p : primes_first(10)) primorial10 *= p;
    EXPECT_EQ(primorial10, BigInt(6469693230ULL));
}

TEST(Plan, Errors) {
    const auto t = sieve_build(10'000);
    EXPECT_THROW(build_plan(10'000, 3.0, t), std::invalid_argument);  // 10 ln ln 3 < 1
    EXPECT_THROW(build_plan(10'000, 0.5, t), std::invalid_argument);
    EXPECT_THROW(build_plan(50, 4.0, t), std::invalid_argument);      // n < s t
    EXPECT_THROW(build_plan(20'000, 4.0, t), std::out_of_range);
    EXPECT_NO_THROW(build_plan(10'000, 3.03, t));
}

TEST(Plan, SetAccountingInvariants) {
    const auto t = sieve_build(20'000);
    for (const double g : {3.1, 3.5, 4.0, 5.0, 2.0 * loglog(2e4)}) {
        for (const std::uint64_t n : {500u, 2000u, 20'000u}) {
            ExplicitCoverPlan plan;
            try {
                plan = build_plan(n, g, t);
            } catch (const std::invalid_argument&) {
                continue;
            }
            ASSERT_GE(plan.s, 1);
            ASSERT_GE(plan.t, 1);
            ASSERT_GE(plan.t0, 1);
            ASSERT_LE(plan.t0, plan.t);
            ASSERT_LE(static_cast<std::uint64_t>(plan.t0) * plan.index_set.size(), plan.en_g.size());
            ASSERT_LE(static_cast<std::int64_t>(plan.b_n.size()), 8 * plan.s * plan.t);
            const auto ti = static_cast<std::uint64_t>(plan.t);
            for (std::uint64_t i = 1; i * ti <= n; ++i) {
                const auto& ys = plan.y_set(i);
                if (!plan.in_index_set(i)) {
                    ASSERT_LT(static_cast<std::int64_t>(ys.size()), plan.t0);
                } else {
                    ASSERT_GE(static_cast<std::int64_t>(ys.size()), plan.t0);
                }
                for (std::int64_t a = 1; a <= plan.t; ++a) {
                    const std::uint64_t m = i * ti - static_cast<std::uint64_t>(a);
                    const bool in_block = m > (i - 1) * ti && m <= i * ti;
                    if (!in_block || std::binary_search(ys.begin(), ys.end(), a)) continue;
                    ASSERT_LT(static_cast<double>(t.omega(m)), g) << "i=" << i << " a=" << a;
                }
            }
        }
    }
}

TEST(Plan, CardinalityChain) {
    const auto t = sieve_build(1'000'000);
    for (const std::uint64_t n : {10'000u, 100'000u, 1'000'000u}) {
        for (const double g : {2.0 * loglog(static_cast<double>(n)),
                               2.0 * std::log(static_cast<double>(n)) / loglog(static_cast<double>(n))}) {
            const auto plan = build_plan(n, g, t);
            EXPECT_LE(static_cast<std::int64_t>(plan.b_n.size()), 8 * plan.s * plan.t);
            EXPECT_LE(static_cast<double>(plan.b_n.size()), 800.0 * g * loglog(g));
        }
    }
}

TEST(CoprimePair, EmptyYSetAndIndexChecks) {
    const auto t = sieve_build(10'000);
    const auto plan = build_plan(10'000, 2.0 * loglog(1e4), t);
    const auto pair = coprime_pair_find(1, 1, plan);
    // Y_1 is empty, so a = 1; gcd(2, 44 - 1) = 1 gives b = 1.
    EXPECT_EQ(pair.a, 1);
    EXPECT_EQ(pair.b, 1);
    EXPECT_EQ(std::gcd(1 * plan.t - pair.a, 1 * plan.s - pair.b), 1);
    EXPECT_THROW(coprime_pair_find(0, 1, plan), std::invalid_argument);
    EXPECT_THROW(coprime_pair_find(1, 10'000, plan), std::invalid_argument);
}

TEST(CoprimePair, RejectsIndexInI) {
    const auto t = sieve_build(10'000);
    const auto plan = build_plan(10'000, 3.5, t);  // s = 35, t = 2, t0 = 1
    ASSERT_EQ(plan.t, 2);
    ASSERT_TRUE(plan.in_index_set(105));  // 210 = 105 * 2 has omega 4
    EXPECT_EQ(plan.y_set(105), (std::vector<std::int64_t>{0}));
    EXPECT_THROW(coprime_pair_find(105, 1, plan), std::invalid_argument);
}

TEST(CoprimePair, AllAdmissibleBlocksHaveAPair) {
    const auto t = sieve_build(10'000);
    const auto plan = build_plan(10'000, 3.5, t);
    const auto ti = static_cast<std::uint64_t>(plan.t), si = static_cast<std::uint64_t>(plan.s);
    for (std::uint64_t i = 1; i * ti <= plan.n; i += 37)
        for (std::uint64_t j = 1; j * si <= plan.n; j += 11) {
            if (plan.in_index_set(i)) continue;
            const auto p = coprime_pair_find(i, j, plan);
            ASSERT_EQ(std::gcd(i * ti - p.a, j * si - p.b), 1u);
            ASSERT_FALSE(std::binary_search(plan.y_set(i).begin(), plan.y_set(i).end(), p.a));
            ASSERT_FALSE(std::binary_search(plan.en_g.begin(), plan.en_g.end(), i * ti - p.a));
        }
}

TEST(ExceptionalScan, AgreesWithNaiveOnSmallPlans) {
    const auto t = sieve_build(500);
    for (const double g : {3.1, 3.5, 4.0, 2.0 * loglog(500.0) + 0.5}) {
        const auto plan = build_plan(500, g, t);
        const auto report = exceptional_scan(plan);
        EXPECT_EQ(report.exceptional_count, naive_exceptional(plan)) << g;
        EXPECT_TRUE(report.passed_proof_bound);
    }
}

TEST(ExceptionalScan, CountsMissesOnThinnedCover) {
    const auto t = sieve_build(500);
    auto plan = build_plan(200, 3.5, t);
    plan.b_n = {{1, 1}, {2, 3}};
    const auto report = exceptional_scan(plan);
    EXPECT_GT(report.exceptional_count, 0u);
    EXPECT_EQ(report.exceptional_count, naive_exceptional(plan));
}

TEST(ExceptionalScan, EmptyExceptionalSetMeansFullVisibility) {
    const auto t = sieve_build(2000);
    const double g = 2.0 * std::log(2000.0) / loglog(2000.0);
    const auto plan = build_plan(2000, g, t);
    ASSERT_TRUE(plan.en_g.empty());
    const auto report = exceptional_scan(plan);
    EXPECT_EQ(report.exceptional_count, 0u);
    EXPECT_EQ(report.bound_proof, u128{0});
    EXPECT_TRUE(report.passed_proof_bound);
}

TEST(ExceptionalScan, BudgetIsEnforced) {
    const auto t = sieve_build(2000);
    const auto plan = build_plan(2000, 4.0, t);
    EXPECT_THROW(exceptional_scan(plan, 1000), resource_error);
}

TEST(Sampling, DeterministicAndBounded) {
    const auto t = sieve_build(10'000);
    const auto plan = build_plan(10'000, 2.0 * loglog(1e4), t);
    const auto a = sampled_exceptional_estimate(plan, 5000, 17);
    const auto b = sampled_exceptional_estimate(plan, 5000, 17);
    EXPECT_EQ(a.hits, b.hits);
    EXPECT_EQ(a.fraction, b.fraction);
    EXPECT_EQ(a.ci_high, b.ci_high);
    EXPECT_LE(a.fraction, 100.0 / std::pow(loglog(1e4), 2) + (a.ci_high - a.fraction));
    EXPECT_LE(a.ci_low, a.fraction);
    EXPECT_GE(a.ci_high, a.fraction);
    EXPECT_THROW(sampled_exceptional_estimate(plan, 999, 1), std::invalid_argument);
}

TEST(Sampling, ZeroWhenPlanCoversEverything) {
    const auto t = sieve_build(500);
    const auto plan = build_plan(500, 4.0, t);
    ASSERT_EQ(exceptional_scan(plan).exceptional_count, 0u);
    const auto est = sampled_exceptional_estimate(plan, 2000, 5);
    EXPECT_EQ(est.hits, 0u);
    EXPECT_EQ(est.fraction, 0.0);
    EXPECT_GT(est.ci_high, 0.0);
    EXPECT_LT(est.ci_high, 0.005);
}

TEST(Sampling, PointsDependOnlyOnSeedAndIndex) {
    std::vector<LatticePoint> forward, backward;
    for (std::uint64_t i = 0; i < 100; ++i) forward.push_back(sample_point(1000, 9, i));
    for (std::uint64_t i = 100; i-- > 0;) backward.push_back(sample_point(1000, 9, i));
    std::reverse(backward.begin(), backward.end());
    EXPECT_EQ(forward, backward);
    for (const auto& p : forward) {
        EXPECT_GE(p.x, 0);
        EXPECT_LE(p.x, 1000);
        EXPECT_GE(p.y, 0);
        EXPECT_LE(p.y, 1000);
    }
    EXPECT_NE(sample_point(1000, 9, 0), sample_point(1000, 10, 0));
}

TEST(OmegaCheck, NoViolationsAtDeskScale) {
    const auto t = sieve_build(1'000'000);
    EXPECT_TRUE(omega_inequality_check(16, t).empty());
    EXPECT_TRUE(omega_inequality_check(10'000, t).empty());
    EXPECT_TRUE(omega_inequality_check(1'000'000, t).empty());
    EXPECT_THROW(omega_inequality_check(1'000'001, t), std::out_of_range);
    // Hand check at the first omega = 5 integer.
    EXPECT_GT(2 * std::log(2310.0) / loglog(2310.0), 5.0);
}

TEST(Corollary, Configs) {
    const auto c4 = corollary_configs(10'000);
    ASSERT_EQ(c4.size(), 2u);
    EXPECT_NEAR(c4[0].g_value, 4.44, 0.005);
    EXPECT_NEAR(c4[1].g_value, 8.30, 0.005);
    EXPECT_FALSE(c4[0].expects_empty_en_g);
    EXPECT_TRUE(c4[1].expects_empty_en_g);
    EXPECT_NEAR(*c4[0].exceptional_bound, 100.0 * 1e8 / std::pow(loglog(1e4), 2), 1e-3);

    const auto c6 = corollary_configs(1'000'000);
    EXPECT_NEAR(c6[1].g_value, 10.52, 0.01);
    BigInt primorial11 = 1;
    for (const auto p : primes_first(11)) primorial11 *= p;
    EXPECT_EQ(primorial11, BigInt(200560490130ULL));
    EXPECT_GT(primorial11, 1'000'000);
    EXPECT_THROW(corollary_configs(15), std::out_of_range);
}
