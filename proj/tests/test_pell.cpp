#include "k3aut/pell.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace k3aut;

TEST(CfSqrt, Thirteen) {
    ContinuedFraction cf = cf_sqrt(13);
    EXPECT_EQ(cf.a0, 3);
    EXPECT_EQ(cf.period, (std::vector<Integer>{1, 1, 1, 1, 6}));

    // Convergents over one period of sqrt(13): 3, 4, 7, 11, 18 over 1, 1, 2, 3, 5.
    std::vector<int> norms;
    for (const Convergent& c : convergents(cf, 5)) norms.push_back((c.p * c.p - 13 * c.q * c.q).convert_to<int>());
    EXPECT_EQ(norms, (std::vector<int>{-4, 3, -3, 4, -1}));
}

TEST(CfSqrt, Two) {
    ContinuedFraction cf = cf_sqrt(2);
    EXPECT_EQ(cf.a0, 1);
    EXPECT_EQ(cf.period, (std::vector<Integer>{2}));
    Convergent c = convergents(cf, 1).front();
    EXPECT_EQ(c.p * c.p - 2 * c.q * c.q, -1);
}

TEST(CfSqrt, RejectsSquaresAndNonpositive) {
    EXPECT_THROW(cf_sqrt(4), domain_error);
    EXPECT_THROW(cf_sqrt(0), domain_error);
    EXPECT_THROW(cf_sqrt(-7), domain_error);
}

TEST(CfSqrt, MatchesFloatingPointExpansionAndConvergentBound) {
    for (int D = 2; D <= 400; ++D) {
        if (oracle::is_square(D)) continue;
        ContinuedFraction cf = cf_sqrt(D);
        EXPECT_EQ(cf.period.back(), 2 * cf.a0) << D;
        const int terms = 1 + static_cast<int>(cf.period.size());
        std::vector<oracle::i64> ref = oracle::cf_terms_by_float(D, terms);
        ASSERT_EQ(cf.a0, ref[0]) << D;
        for (std::size_t i = 0; i < cf.period.size(); ++i) EXPECT_EQ(cf.period[i], ref[i + 1]) << D;

        const double limit = 2 * std::sqrt(static_cast<double>(D)) + 1;
        for (const Convergent& c : convergents(cf, cf.period.size()))
            EXPECT_LT(abs(c.p * c.p - D * c.q * c.q).convert_to<double>(), limit) << D;
    }
}

TEST(FundamentalNegativeUnit, OddDegrees) {
    EXPECT_EQ(fundamental_negative_unit(3), OrderElement(3, 1, 13));
    EXPECT_EQ(fundamental_negative_unit(5), OrderElement(5, 1, 29));
    EXPECT_EQ(fundamental_negative_unit(1), OrderElement(1, 1, 5));
    for (int d = 1; d < 40; d += 2) EXPECT_EQ(fundamental_negative_unit(d).norm(), -1);
}

TEST(FundamentalNegativeUnit, RejectsEvenAndNonpositive) {
    EXPECT_THROW(fundamental_negative_unit(4), domain_error);
    EXPECT_THROW(fundamental_negative_unit(0), domain_error);
    EXPECT_THROW(fundamental_negative_unit(-3), domain_error);
}

TEST(SolvePell4, Examples) {
    auto s13 = solve_pell4(13);
    ASSERT_TRUE(s13);
    EXPECT_EQ(s13->a(), 3);
    EXPECT_EQ(s13->b(), 1);

    auto s8 = solve_pell4(8);
    ASSERT_TRUE(s8);
    EXPECT_EQ(s8->a(), 2);
    EXPECT_EQ(s8->b(), 1);

    EXPECT_FALSE(solve_pell4(3));
    // Even d is accepted here: (d, 1) for D = d^2 + 4.
    auto s20 = solve_pell4(20);
    ASSERT_TRUE(s20);
    EXPECT_EQ(s20->a(), 4);
    EXPECT_EQ(s20->b(), 1);
}

TEST(SolvePell4, DomainErrors) {
    EXPECT_THROW(solve_pell4(9), domain_error);
    EXPECT_THROW(solve_pell4(0), domain_error);
}

TEST(SolvePell4, AbsentWithinTheUnitBound) {
    // Every -4 solution class meets 0 < b <= 2 y1 + 1 where (x1, y1) is the least solution
    // of x^2 - D y^2 = 1; scan that whole range for small D.
    for (oracle::i64 D = 2; D <= 300; ++D) {
        if (oracle::is_square(D)) continue;
        auto plus_one = oracle::min_pell_scan(D, 1, 2'000'000);
        if (!plus_one) continue;
        const oracle::i64 limit = 2 * plus_one->second + 1;
        auto ref = oracle::min_pell_scan(D, -4, limit);
        auto got = solve_pell4(D);
        ASSERT_EQ(got.has_value(), ref.has_value()) << D;
        if (ref) {
            EXPECT_EQ(got->a(), ref->first) << D;
            EXPECT_EQ(got->b(), ref->second) << D;
        }
    }
}

TEST(SolvePell4, MinimalityUpToTenThousand) {
    constexpr oracle::i64 scan_limit = 3000;
    for (oracle::i64 D = 2; D <= 10'000; ++D) {
        if (oracle::is_square(D)) continue;
        auto got = solve_pell4(D);
        if (!got) {
            EXPECT_FALSE(oracle::min_pell_scan(D, -4, scan_limit)) << D;
            continue;
        }
        EXPECT_EQ(got->a() * got->a() - D * got->b() * got->b(), -4);
        EXPECT_GT(got->a(), 0);
        if (got->b() <= scan_limit) {
            auto ref = oracle::min_pell_scan(D, -4, scan_limit);
            ASSERT_TRUE(ref) << D;
            EXPECT_EQ(got->b(), ref->second) << D;
        } else {
            EXPECT_FALSE(oracle::min_pell_scan(D, -4, scan_limit)) << D;
        }
        // A -1 solution (u, v) doubles to a -4 solution, bounding the minimal b by 2v.
        PellSolution f = fundamental_pm1(D);
        if (f.N() == -1) {
            EXPECT_LE(got->b(), 2 * f.b()) << D;
        }
    }
}

TEST(OrderElement, Multiplication) {
    OrderElement eta(3, 1, 13);
    EXPECT_EQ(mul(eta, eta), OrderElement(11, 3, 13));
    EXPECT_EQ(mul(OrderElement::one(13), eta), eta);
    EXPECT_EQ(mul(eta, OrderElement(3, -1, 13)), OrderElement(-2, 0, 13));
    EXPECT_THROW(mul(eta, OrderElement(5, 1, 29)), domain_error);
}

TEST(OrderElement, NormAndConjugate) {
    EXPECT_EQ(norm(OrderElement(3, 1, 13)), -1);
    EXPECT_EQ(conjugate(OrderElement(3, 1, 13)), OrderElement(3, -1, 13));
    EXPECT_EQ(norm(OrderElement(11, 3, 13)), 1);
}

TEST(OrderElement, RejectsElementsOutsideTheOrder) {
    EXPECT_THROW(OrderElement(1, 0, 13), domain_error);  // 1/2
    EXPECT_THROW(OrderElement(1, 1, 3), domain_error);   // (1 + sqrt 3)/2 is not integral
    EXPECT_THROW(OrderElement(2, 1, 4), domain_error);   // square D
    EXPECT_NO_THROW(OrderElement(2, 1, 8));              // 1 + sqrt(2)
}

TEST(OrderElement, NormMultiplicativeAndConjugationProperties) {
    std::mt19937_64 rng(20240613);
    std::uniform_int_distribution<int> coef(-10'000, 10'000);
    for (int D : {5, 8, 13, 21, 29, 53, 85, 125, 173}) {
        for (int trial = 0; trial < 200; ++trial) {
            // (a, b) with a = bD mod 2; for these D that lands in the order.
            auto draw = [&] {
                Integer b = coef(rng);
                Integer a = 2 * Integer(coef(rng)) + (b * D) % 2;
                if (D % 4 == 0) a = 2 * Integer(coef(rng));
                return OrderElement(a, b, D);
            };
            OrderElement x = draw(), y = draw();
            EXPECT_EQ(norm(mul(x, y)), norm(x) * norm(y));
            EXPECT_EQ(conjugate(conjugate(x)), x);
            EXPECT_EQ(mul(x, conjugate(x)), OrderElement(2 * norm(x), 0, D));
        }
    }
    OrderElement eta = fundamental_negative_unit(3);
    EXPECT_EQ(mul(eta, conjugate(eta)), OrderElement(-2, 0, 13));
}

TEST(SolutionsByRecurrence, Examples) {
    auto s3 = solutions_by_recurrence(3, 3);
    ASSERT_EQ(s3.size(), 3U);
    EXPECT_EQ(to_string(s3[0]), "(3,1)");
    EXPECT_EQ(to_string(s3[1]), "(36,10)");
    EXPECT_EQ(to_string(s3[2]), "(393,109)");
    for (const auto& s : s3) EXPECT_EQ(s.a() * s.a() - 13 * s.b() * s.b(), -4);

    auto s5 = solutions_by_recurrence(5, 2);
    EXPECT_EQ(to_string(s5[1]), "(140,26)");
    EXPECT_EQ(Integer(140) * 140 - 29 * 26 * 26, -4);

    EXPECT_EQ(to_string(solutions_by_recurrence(3, 1).front()), "(3,1)");
    EXPECT_THROW(solutions_by_recurrence(4, 2), domain_error);
    EXPECT_THROW(solutions_by_recurrence(3, 0), domain_error);
}

TEST(SolutionsByRecurrence, ExactThroughFiftyTerms) {
    for (int d = 1; d <= 15; d += 2) {
        auto sols = solutions_by_recurrence(d, 51);
        for (const auto& s : sols) EXPECT_EQ(s.a() * s.a() - (d * d + 4) * s.b() * s.b(), -4);
        // Dozens of digits by the end.
        if (d >= 3) { EXPECT_GT(sols.back().a().str().size(), 50U); }
    }
}

TEST(OddUnitPower, Examples) {
    EXPECT_EQ(odd_unit_power(3, 0), OrderElement(3, 1, 13));
    EXPECT_EQ(odd_unit_power(3, 1), OrderElement(36, 10, 13));
    // eta^3 = 11 eta + conj(eta)
    OrderElement eta(3, 1, 13);
    EXPECT_EQ(odd_unit_power(3, 1).a(), 11 * eta.a() + eta.a());
    EXPECT_EQ(odd_unit_power(3, 1).b(), 11 * eta.b() - eta.b());
    EXPECT_THROW(odd_unit_power(2, 1), domain_error);
}

TEST(OddUnitPower, MatchesFloatingPointPowers) {
    for (int d : {1, 3, 5, 7}) {
        for (int k = 0; k < 6; ++k) {
            auto [fa, fb] = oracle::half_power_float(d, 1, d * d + 4, 2 * k + 1);
            OrderElement u = odd_unit_power(d, k);
            EXPECT_EQ(u.a(), Integer(boost::multiprecision::round(fa).convert_to<long long>()));
            EXPECT_EQ(u.b(), Integer(boost::multiprecision::round(fb).convert_to<long long>()));
        }
    }
}

TEST(OddUnitPower, AgreesWithRecurrence) {
    for (int d = 1; d <= 15; d += 2) {
        auto rec = solutions_by_recurrence(d, 51);
        for (unsigned k = 0; k <= 50; ++k) {
            OrderElement u = odd_unit_power(d, k);
            EXPECT_EQ(u.a(), rec[k].a()) << d << " " << k;
            EXPECT_EQ(u.b(), rec[k].b()) << d << " " << k;
            EXPECT_EQ(u.norm(), -1);
        }
    }
}

TEST(PellSolutions, AllNormsForThirteen) {
    auto to_s = [](const std::vector<PellSolution>& v) {
        std::string s;
        for (const auto& x : v) s += to_string(x);
        return s;
    };
    EXPECT_EQ(to_s(pell_solutions(13, -4, 3)), "(3,1)(36,10)(393,109)");
    EXPECT_EQ(to_s(pell_solutions(13, 4, 2)), "(11,3)(119,33)");
    EXPECT_EQ(to_s(pell_solutions(13, -1, 1)), "(18,5)");
    EXPECT_EQ(to_s(pell_solutions(13, 1, 1)), "(649,180)");
    EXPECT_TRUE(pell_solutions(3, -4, 3).empty());
    EXPECT_TRUE(pell_solutions(3, -1, 3).empty());
    EXPECT_EQ(to_s(pell_solutions(3, 1, 2)), "(2,1)(7,4)");
    EXPECT_THROW(pell_solutions(13, 2, 1), domain_error);
}

TEST(PellSolutions, FirstSolutionIsMinimal) {
    int checked = 0;
    for (oracle::i64 D = 2; D <= 200; ++D) {
        if (oracle::is_square(D)) continue;
        for (int N : {-4, -1, 1, 4}) {
            auto sols = pell_solutions(D, N, 1);
            // Keep D b^2 inside int64 and the scan short.
            if (sols.empty() || sols.front().b() > 1'000'000) continue;
            ++checked;
            auto ref = oracle::min_pell_scan(D, N, sols.front().b().convert_to<oracle::i64>());
            ASSERT_TRUE(ref) << D << " " << N;
            EXPECT_EQ(sols.front().b(), ref->second) << D << " " << N;
        }
    }
    EXPECT_GT(checked, 300);
}

TEST(PellSolution, ValidatesEquation) {
    EXPECT_NO_THROW(PellSolution(3, 1, 13, -4));
    EXPECT_THROW(PellSolution(3, 2, 13, -4), domain_error);
    EXPECT_THROW(PellSolution(3, 1, 13, 2), domain_error);
}
