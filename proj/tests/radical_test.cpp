#include "radrat/radical.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace radrat;

namespace {

RadicalNumber rad(unsigned long degree, long radicand) {
    return canonicalize(Expr::root(degree, radicand));
}

Expr num(long n, long d = 1) { return Expr::number(make_rational(n, d)); }

const RadicalNumber sqrt2 = rad(2, 2);
const RadicalNumber sqrt3 = rad(2, 3);
const RadicalNumber cbrt2 = rad(3, 2);

void expect_exponents_in_range(const RadicalNumber& x) {
    for (const auto& [m, c] : x.terms()) {
        ASSERT_EQ(m.size(), x.basis().size());
        for (std::size_t i = 0; i < m.size(); ++i) EXPECT_LT(m[i], x.basis()[i].degree);
        EXPECT_NE(sgn(c), 0);
    }
}

// Random element over the fixed basis with a handful of nonzero terms.
RadicalNumber random_element(std::mt19937_64& rng, const RadicalBasis& basis, int max_terms) {
    std::uniform_int_distribution<int> terms(1, max_terms), num(-6, 6), den(1, 4);
    RadicalNumber::Terms t;
    const int count = terms(rng);
    for (int n = 0; n < count; ++n) {
        Monomial m;
        for (const auto& f : basis) m.push_back(std::uniform_int_distribution<std::uint32_t>(0, f.degree - 1)(rng));
        t[m] = make_rational(num(rng), den(rng));
    }
    return RadicalNumber::from_terms(basis, t);
}

Expr random_expr(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
    static const long radicands[] = {2, 3, 5, 6, 8, 12, 48, 10, 7, 18};
    switch (pick(rng)) {
    case 0: return num(std::uniform_int_distribution<long>(-9, 9)(rng), std::uniform_int_distribution<long>(1, 5)(rng));
    case 1:
        return Expr::root(std::uniform_int_distribution<unsigned long>(2, 4)(rng),
                          radicands[std::uniform_int_distribution<int>(0, 9)(rng)]);
    case 2: return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
    case 3: return random_expr(rng, depth - 1) - random_expr(rng, depth - 1);
    case 4:
    case 5: return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
    default: return -random_expr(rng, depth - 1);
    }
}

} // namespace

TEST(Canonicalize, SixthRootOf48) {
    const auto x = rad(6, 48);
    EXPECT_EQ(x.basis(), RadicalBasis({{2, 3}, {3, 6}}));
    ASSERT_EQ(x.terms().size(), 1u);
    EXPECT_EQ(x.terms().begin()->first, (Monomial{2, 1}));
    EXPECT_EQ(x.terms().begin()->second, 1);
    EXPECT_EQ(to_string(x), "(2)^(2/3) * (3)^(1/6)");
}

TEST(Canonicalize, DisplayElementLandsInTwelfthRootField) {
    const Expr r = Expr::root(4, 10);
    const auto x = canonicalize(num(1) - num(2, 3) * Expr::root(6, 48) + num(1, 4) * r * r * r);
    EXPECT_EQ(x.basis(), RadicalBasis({{2, 12}, {3, 6}, {5, 4}}));
    EXPECT_EQ(x.terms().size(), 3u);
    EXPECT_EQ(x.rational_part(), 1);
    EXPECT_EQ(x.coefficient({8, 1, 0}), Rational(-2, 3));
    EXPECT_EQ(x.coefficient({9, 0, 3}), Rational(1, 4));
}

TEST(Canonicalize, PerfectPowersCollapse) {
    EXPECT_EQ(rad(2, 4), RadicalNumber(2));
    EXPECT_TRUE(rad(2, 4).basis().empty());
    EXPECT_EQ(rad(3, 54), 3 * cbrt2);  // 54 = 27 * 2
    EXPECT_EQ(rad(4, 4), sqrt2);
    EXPECT_EQ(rad(6, 1), RadicalNumber(1));
}

TEST(Canonicalize, RationalPowers) {
    const auto x = canonicalize(Expr::power(num(8), make_rational(2, 3)));
    EXPECT_EQ(x, RadicalNumber(4));
    const auto y = canonicalize(Expr::power(num(1, 2), make_rational(1, 2)));
    EXPECT_EQ(y, sqrt2.scaled(Rational(1, 2)));
    const auto z = canonicalize(Expr::power(num(2), make_rational(-1, 2)));
    EXPECT_EQ(z, sqrt2.scaled(Rational(1, 2)));
}

TEST(Canonicalize, Errors) {
    EXPECT_THROW(canonicalize(num(1) / (Expr::root(2, 2) - Expr::root(2, 2))), DomainError);
    EXPECT_THROW(canonicalize(Expr::root(2, 0)), DomainError);
    EXPECT_THROW(canonicalize(Expr::root(1, 5)), DomainError);
    EXPECT_THROW(canonicalize(Expr::variable("x")), ContractError);
    EXPECT_THROW(canonicalize(Expr::power(num(-2), make_rational(1, 2))), DomainError);
}

TEST(UnifyBases, LcmOfDegreesPerPrime) {
    const std::vector<RadicalNumber> xs{cbrt2, rad(4, 2)};
    auto [basis, ys] = unify_bases(xs);
    EXPECT_EQ(basis, RadicalBasis({{2, 12}}));
    EXPECT_EQ(ys[0].terms().begin()->first, Monomial{4});
    EXPECT_EQ(ys[1].terms().begin()->first, Monomial{3});
    EXPECT_EQ(ys[0], cbrt2);
}

TEST(UnifyBases, IdempotentAndDisjoint) {
    const std::vector<RadicalNumber> same{sqrt2, sqrt2};
    auto [b1, y1] = unify_bases(same);
    EXPECT_EQ(b1, RadicalBasis({{2, 2}}));
    EXPECT_EQ(y1[0].terms(), sqrt2.terms());

    const std::vector<RadicalNumber> disjoint{sqrt2, rad(3, 3)};
    auto [b2, y2] = unify_bases(disjoint);
    EXPECT_EQ(b2, RadicalBasis({{2, 2}, {3, 3}}));
    EXPECT_EQ(y2[0].coefficient({1, 0}), 1);
    EXPECT_EQ(y2[1].coefficient({0, 1}), 1);
}

TEST(UnifyBases, DimensionCap) {
    const Limits saved = limits();
    limits().dimension_cap = 10;
    const std::vector<RadicalNumber> xs{rad(4, 2), rad(3, 3)};
    EXPECT_THROW(unify_bases(xs), ResourceError);
    limits() = saved;
}

TEST(UnifyBases, PreservesValue) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = random_element(rng, RadicalBasis({{2, 3}, {5, 2}}), 4);
        const auto y = random_element(rng, RadicalBasis({{2, 4}, {3, 2}}), 4);
        const std::vector<RadicalNumber> xs{x, y};
        auto [basis, ys] = unify_bases(xs);
        EXPECT_EQ(basis, RadicalBasis({{2, 12}, {3, 2}, {5, 2}}));
        EXPECT_TRUE(evaluate(x, 128).overlaps(evaluate(ys[0], 128)));
        EXPECT_TRUE(evaluate(y, 128).overlaps(evaluate(ys[1], 128)));
    }
}

TEST(Arithmetic, Examples) {
    const auto a = RadicalNumber(1) + sqrt2;
    const auto b = RadicalNumber(3) - sqrt2.scaled(2);
    EXPECT_EQ(a * b, sqrt2 - RadicalNumber(1));
    EXPECT_EQ(sqrt2 * sqrt2, RadicalNumber(2));
    EXPECT_TRUE((a + (-a)).is_zero());
    EXPECT_EQ(cbrt2 * cbrt2 * cbrt2, RadicalNumber(2));
}

TEST(Invert, Examples) {
    // oracle: (1 + sqrt2)(-1 + sqrt2) = 2 - 1 = 1
    const auto one_plus = RadicalNumber(1) + sqrt2;
    EXPECT_EQ(invert(one_plus), sqrt2 - RadicalNumber(1));
    EXPECT_EQ(invert(one_plus) * one_plus, RadicalNumber(1));
    EXPECT_EQ(invert(RadicalNumber(Rational(3, 4))), RadicalNumber(Rational(4, 3)));
    // oracle: cbrt2 * cbrt2^2 / 2 = 2 / 2 = 1
    const auto expected = (cbrt2 * cbrt2).scaled(Rational(1, 2));
    EXPECT_EQ(cbrt2 * expected, RadicalNumber(1));
    EXPECT_EQ(invert(cbrt2), expected);
    EXPECT_THROW(invert(RadicalNumber()), DomainError);
}

TEST(Invert, TowerAgreesWithMultiplicationMapSolve) {
    std::mt19937_64 rng(5);
    const RadicalBasis bases[] = {
        RadicalBasis({{2, 2}, {3, 2}, {5, 2}}), RadicalBasis({{2, 5}}), RadicalBasis({{3, 7}}),
        RadicalBasis({{2, 6}, {7, 2}}),         RadicalBasis({{2, 10}}), RadicalBasis({{2, 4}, {3, 3}}),
        RadicalBasis({{5, 9}}),
    };
    for (const auto& basis : bases) {
        for (int trial = 0; trial < 8; ++trial) {
            const auto x = random_element(rng, basis, 4);
            if (x.is_zero()) continue;
            const auto y = invert(x);
            expect_exponents_in_range(y);
            EXPECT_EQ(x * y, RadicalNumber(1));
            EXPECT_EQ(y, invert_by_linear_system(x));
        }
    }
}

TEST(Predicates, ZeroAndRational) {
    EXPECT_TRUE((sqrt2 - sqrt2).is_zero());
    EXPECT_TRUE(RadicalNumber(Rational(5, 3)).is_rational());
    const auto x = RadicalNumber(1) + sqrt2;
    EXPECT_FALSE(x.is_zero());
    EXPECT_FALSE(x.is_rational());
}

TEST(Sign, Examples) {
    // oracle: sqrt2 > 7/5 since 2 * 25 = 50 > 49
    EXPECT_EQ(sign(sqrt2 - RadicalNumber(Rational(7, 5))), 1);
    EXPECT_EQ(sign(RadicalNumber()), 0);
    EXPECT_EQ(sign(RadicalNumber(1) - sqrt2), -1);
}

TEST(Sign, NearCancellationNeedsRefinement) {
    // 99/70 approximates sqrt2 to ~7e-5; 665857/470832 to ~1.6e-12
    EXPECT_EQ(sign(sqrt2 - RadicalNumber(Rational(665857, 470832))), -1);
    const BigInt p("10000000000000000000000000000000000000000");
    const Rational close(BigInt(floor_root(2 * p * p, 2)), p);
    EXPECT_EQ(sign(sqrt2 - RadicalNumber(close)), 1);
}

TEST(Sign, PrecisionCapIsResourceError) {
    const Limits saved = limits();
    limits().precision_cap_bits = 128;
    const BigInt p = pow(BigInt(10), 60);
    const Rational close(BigInt(floor_root(2 * p * p, 2)), p);
    EXPECT_THROW(sign(sqrt2 - RadicalNumber(close)), ResourceError);
    limits() = saved;
}

TEST(Evaluate, SqrtTwoAgainstIntegerSquareRoot) {
    const Interval iv = evaluate(sqrt2, 64);
    BigInt s;
    const BigInt scaled = shifted(BigInt(2), 128);
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    const Interval oracle{dyadic(s, 64), dyadic(s + 1, 64)};
    EXPECT_TRUE(iv.overlaps(oracle));
    EXPECT_LE(iv.width(), Rational(1, 1) / Rational(shifted(BigInt(1), 63)));
    EXPECT_LT(iv.lo * iv.lo, 2);
    EXPECT_GT(iv.hi * iv.hi, 2);
}

TEST(Evaluate, RationalAndScaledRoot) {
    EXPECT_TRUE(evaluate(RadicalNumber(Rational(1, 3)), 200).contains(Rational(1, 3)));
    // oracle: mpmath at 50 digits, -(2/3) * 48^(1/6) = -1.27091239066258209834321199386590287703...
    const Rational lo = parse_rational("-127091239066258209834321199386590287704/100000000000000000000000000000000000000");
    const Rational hi = parse_rational("-127091239066258209834321199386590287703/100000000000000000000000000000000000000");
    const Interval iv = evaluate(rad(6, 48).scaled(Rational(-2, 3)), 200);
    EXPECT_TRUE(iv.overlaps({lo, hi}));
    EXPECT_LT(iv.width(), Rational(1, 1) / Rational(shifted(BigInt(1), 199)));
    EXPECT_THROW(evaluate(sqrt2, 8), ContractError);
}

TEST(FieldAxioms, RandomTriplesInDimension288) {
    std::mt19937_64 rng(1);
    const RadicalBasis basis({{2, 12}, {3, 6}, {5, 4}});
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_element(rng, basis, 4);
        const auto b = random_element(rng, basis, 4);
        const auto c = random_element(rng, basis, 4);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        const auto ab = a * b;
        expect_exponents_in_range(ab);
        if (!a.is_zero()) EXPECT_EQ(a * invert(a), RadicalNumber(1));
    }
}

TEST(Canonicalize, SoundAgainstRawTreeEvaluation) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const Expr e = random_expr(rng, 3);
        const auto x = canonicalize(e);
        expect_exponents_in_range(x);
        for (std::size_t bits : {16, 64, 256}) {
            EXPECT_TRUE(evaluate(x, bits).overlaps(evaluate_expr(e, bits))) << to_string(x);
        }
    }
}

TEST(Canonicalize, DivisionThroughInverse) {
    const auto q = canonicalize(num(1) / (num(1) + Expr::root(2, 2)));
    EXPECT_EQ(q, sqrt2 - RadicalNumber(1));
}

TEST(Besicovitch, NonzeroFormsHaveDecidableSign) {
    std::mt19937_64 rng(2024);
    const RadicalBasis bases[] = {RadicalBasis({{2, 2}, {3, 2}, {5, 2}, {7, 2}}), RadicalBasis({{2, 3}, {3, 2}}),
                                  RadicalBasis({{2, 12}, {3, 6}, {5, 4}})};
    int checked = 0;
    while (checked < 10'000) {
        const auto x = random_element(rng, bases[checked % 3], 5);
        if (x.is_zero()) continue;
        EXPECT_NE(sign(x), 0);
        ++checked;
    }
}

TEST(Text, RenderingParsesStructure) {
    EXPECT_EQ(to_string(RadicalNumber()), "0");
    EXPECT_EQ(to_string(RadicalNumber(Rational(-3, 4))), "-3/4");
    EXPECT_EQ(to_string(RadicalNumber(1) - sqrt2), "1 - (2)^(1/2)");
    EXPECT_EQ(to_string(sqrt2.scaled(Rational(-2, 3)) + sqrt3), "(3)^(1/2) - 2/3 * (2)^(1/2)");
}
