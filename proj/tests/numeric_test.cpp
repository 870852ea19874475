#include "radrat/numeric.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace radrat;

namespace {

// Euclid by repeated remainder; independent of mpz_gcd.
BigInt euclid(BigInt a, BigInt b) {
    a = abs(a);
    b = abs(b);
    while (b != 0) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    return a;
}

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
    return make_rational(num(rng), den(rng));
}

} // namespace

TEST(Gcd, SmallCases) {
    EXPECT_EQ(gcd(12, 18), 6);
    EXPECT_EQ(gcd(0, 7), 7);
    EXPECT_EQ(gcd(0, 0), 0);
    EXPECT_EQ(gcd(-12, 18), 6);
}

TEST(Gcd, SixthFermatNumber) {
    const BigInt f6 = pow(BigInt(2), 64) + 1;
    // oracle: 274177 divides 2^64 + 1 and the cofactor shares no factor with it
    ASSERT_EQ(f6 % 274177, 0);
    EXPECT_EQ(euclid(f6, 274177), 274177);
    EXPECT_EQ(gcd(f6, 274177), 274177);
}

TEST(Factorize, PaperRadicands) {
    EXPECT_EQ(factorize(48), (PrimeFactorization{{2, 4}, {3, 1}}));
    EXPECT_EQ(factorize(10), (PrimeFactorization{{2, 1}, {5, 1}}));
    EXPECT_EQ(factorize(97), (PrimeFactorization{{97, 1}}));
}

TEST(Factorize, RejectsSmallInputs) {
    EXPECT_THROW(factorize(1), DomainError);
    EXPECT_THROW(factorize(0), DomainError);
    EXPECT_THROW(factorize(-6), DomainError);
}

TEST(Factorize, PollardRhoBeyondTrialBound) {
    const BigInt f6 = pow(BigInt(2), 64) + 1;
    EXPECT_EQ(factorize(f6), (PrimeFactorization{{274177, 1}, {BigInt("67280421310721"), 1}}));
    const BigInt semiprime = BigInt("1000000007") * BigInt("998244353");
    EXPECT_EQ(factorize(semiprime * semiprime),
              (PrimeFactorization{{BigInt("998244353"), 2}, {BigInt("1000000007"), 2}}));
}

TEST(Factorize, BudgetExhaustionIsResourceError) {
    const Limits saved = limits();
    limits().rho_iteration_budget = 10;
    limits().trial_division_bound = 100;
    const BigInt hard = BigInt("1000000007") * BigInt("998244353");
    EXPECT_THROW(factorize(hard), ResourceError);
    limits() = saved;
}

TEST(Factorize, ReconstructsRandomInputs) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<unsigned long> dist(2, 50'000'000);
    for (int trial = 0; trial < 500; ++trial) {
        const BigInt n = dist(rng);
        const auto f = factorize(n);
        BigInt product = 1;
        for (std::size_t i = 0; i < f.size(); ++i) {
            EXPECT_GE(f[i].exponent, 1u);
            if (i > 0) EXPECT_LT(f[i - 1].prime, f[i].prime);
            EXPECT_NE(mpz_probab_prime_p(f[i].prime.get_mpz_t(), 30), 0);
            product *= pow(f[i].prime, f[i].exponent);
        }
        EXPECT_EQ(product, n);
    }
}

TEST(IntegerRoot, Examples) {
    EXPECT_EQ(integer_root(4, 2), BigInt(2));
    EXPECT_EQ(integer_root(2, 2), std::nullopt);
    // oracle: 27^5 = 3^15 by exact exponentiation
    ASSERT_EQ(pow(BigInt(27), 5), pow(BigInt(3), 15));
    EXPECT_EQ(integer_root(pow(BigInt(3), 15), 5), BigInt(27));
    EXPECT_EQ(integer_root(1, 7), BigInt(1));
    EXPECT_EQ(integer_root(12345, 1), BigInt(12345));
    EXPECT_THROW(integer_root(0, 2), DomainError);
}

TEST(IntegerRoot, AgreesWithLinearScanOracle) {
    for (unsigned long n = 1; n <= 3000; ++n) {
        for (unsigned long k = 2; k <= 6; ++k) {
            std::optional<BigInt> expected;
            for (unsigned long r = 1; r <= n; ++r) {
                const BigInt p = pow(BigInt(r), k);
                if (p == n) expected = BigInt(r);
                if (p >= n) break;
            }
            const auto got = integer_root(n, k);
            ASSERT_EQ(got, expected) << n << " " << k;
            if (got) EXPECT_EQ(pow(*got, k), n);
        }
    }
}

TEST(IntegerRoot, LargePerfectPowers) {
    const BigInt r("123456789012345678901234567890");
    EXPECT_EQ(integer_root(pow(r, 7), 7), r);
    EXPECT_EQ(integer_root(pow(r, 7) + 1, 7), std::nullopt);
}

TEST(RationalArithmetic, FieldLawsHoldExactly) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        EXPECT_EQ(Rational((a + b) + c), Rational(a + (b + c)));
        EXPECT_EQ(Rational(a * (b + c)), Rational(a * b + a * c));
        if (sgn(a) != 0) EXPECT_EQ(Rational(a * (1 / a)), Rational(1));
        const Rational sum = a + b;
        EXPECT_EQ(gcd(sum.get_num(), sum.get_den()), 1);
        EXPECT_GE(sum.get_den(), 1);
    }
}

TEST(RationalText, ParseAndPrint) {
    EXPECT_EQ(to_string(parse_rational("6/8")), "3/4");
    EXPECT_EQ(to_string(parse_rational("-10/5")), "-2");
    EXPECT_EQ(to_string(parse_rational("0/9")), "0");
    EXPECT_EQ(parse_rational("0/9").get_den(), 1);
    EXPECT_EQ(to_string(parse_bigint("-123456789012345678901234567890")), "-123456789012345678901234567890");
    EXPECT_THROW(parse_rational("1/0"), DomainError);
    EXPECT_THROW(parse_bigint("12a"), DomainError);
}
