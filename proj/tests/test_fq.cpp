#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "plwe/fq.hpp"
#include "plwe/rng.hpp"

namespace {

using namespace plwe;

TEST(FqArith, CanonicalRange) {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t q = 29;
        FqElement a(rng.next_u64(), q), b(rng.next_u64(), q);
        for (FqElement r : {a + b, a - b, a * b, -a}) {
            EXPECT_LT(r.value(), q);
            EXPECT_EQ(r.modulus(), q);
        }
    }
}

TEST(FqArith, RhoIsFourthRootAtScale) {
    FqElement rho(12092, 24029);
    EXPECT_EQ((rho * rho).value(), 24028u);
    EXPECT_EQ(rho.pow(4).value(), 1u);
}

TEST(FqArith, MulIdentity) {
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        FqElement x(rng.next_u64(), 24029);
        EXPECT_EQ((FqElement(1, 24029) * x), x);
    }
}

TEST(FqArith, InverseMatchesExtendedGcd) {
    EXPECT_EQ(FqElement(4, 29).inv().value(), 22u);
    for (std::uint64_t q : {13ull, 29ull, 24029ull}) {
        Rng rng(q);
        for (int i = 0; i < 200; ++i) {
            std::uint64_t a = 1 + rng.uniform_below(q - 1);
            std::uint64_t inv = FqElement(a, q).inv().value();
            EXPECT_EQ(inv, oracle::inv_mod_egcd(a, q));
            EXPECT_EQ(mul_mod(a, inv, q), 1u);
        }
    }
}

TEST(FqArith, ZeroHasNoInverse) {
    EXPECT_THROW(FqElement(0, 29).inv(), std::domain_error);
    EXPECT_THROW(inv_mod(29, 29), std::domain_error);
}

TEST(FqArith, MismatchedModuliThrow) {
    FqElement a(3, 13), b(3, 29);
    EXPECT_THROW(a + b, std::invalid_argument);
    EXPECT_THROW(a * b, std::invalid_argument);
    EXPECT_THROW(a - b, std::invalid_argument);
}

TEST(FqArith, CenteredRepresentative) {
    EXPECT_EQ(FqElement(0, 29).centered(), 0);
    EXPECT_EQ(FqElement(14, 29).centered(), 14);
    EXPECT_EQ(FqElement(15, 29).centered(), -14);
    EXPECT_EQ(FqElement(28, 29).centered(), -1);
    EXPECT_EQ(FqElement::from_int(-1, 29).value(), 28u);
}

TEST(Primality, MatchesTrialDivision) {
    for (std::uint64_t n = 0; n < 2000; ++n)
        EXPECT_EQ(is_prime_u64(n), oracle::is_prime_trial(n)) << n;
    EXPECT_TRUE(is_prime_u64(24029));
    EXPECT_TRUE(is_prime_u64(40013));
    EXPECT_FALSE(is_prime_u64(24013)); // 11 * 37 * 59
}

TEST(Factorize, RecombinesAndIsPrime) {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t x = 2 + rng.uniform_below(100000);
        std::uint64_t prod = 1;
        for (auto [f, e] : factorize_u64(x)) {
            EXPECT_TRUE(oracle::is_prime_trial(f));
            for (unsigned k = 0; k < e; ++k) prod *= f;
        }
        EXPECT_EQ(prod, x);
    }
}

TEST(FieldContext, ValidatesShape) {
    FieldContext ctx(24029, 2, 2);
    EXPECT_EQ(ctx.u(), 6007u);
    EXPECT_EQ(ctx.p_pow_A(), 4u);
    EXPECT_THROW(FieldContext(24029, 4, 2), std::invalid_argument); // p not prime
    EXPECT_THROW(FieldContext(24030, 2, 2), std::invalid_argument); // q not prime
    EXPECT_THROW(FieldContext(17, 2, 2), std::invalid_argument);    // u = 4 not coprime to 2
}

TEST(FindAttackPrime, ReferenceValues) {
    FieldContext a = find_attack_prime(2, 10, 2, 24000);
    EXPECT_EQ(a.q(), 24029u);
    EXPECT_EQ(a.u(), 6007u);
    FieldContext b = find_attack_prime(2, 11, 2, 40000);
    EXPECT_EQ(b.q(), 40013u);
    EXPECT_EQ(b.u(), 10003u);
    FieldContext c = find_attack_prime(2, 4, 2, 20);
    EXPECT_EQ(c.q(), 29u);
    EXPECT_EQ(c.u(), 7u);
}

TEST(FindAttackPrime, OutputShapeIsMinimal) {
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        std::uint64_t p = (i % 2 == 0) ? 2 : 3;
        std::uint64_t q_min = 20 + rng.uniform_below(5000);
        FieldContext ctx = find_attack_prime(p, 5, 2, q_min);
        EXPECT_GE(ctx.q(), q_min);
        EXPECT_TRUE(oracle::is_prime_trial(ctx.q()));
        EXPECT_EQ((ctx.q() - 1) % (p * p), 0u);
        EXPECT_NE(ctx.u() % p, 0u);
        // no smaller admissible prime in [q_min, q)
        for (std::uint64_t c = q_min; c < ctx.q(); ++c) {
            bool admissible = oracle::is_prime_trial(c) && (c - 1) % (p * p) == 0 &&
                              ((c - 1) / (p * p)) % p != 0;
            EXPECT_FALSE(admissible) << c;
        }
    }
}

TEST(FindAttackPrime, RejectsBadArguments) {
    EXPECT_THROW(find_attack_prime(4, 5, 2, 20), std::invalid_argument);
    EXPECT_THROW(find_attack_prime(2, 2, 2, 20), std::invalid_argument);
    EXPECT_THROW(find_attack_prime(2, 5, 0, 20), std::invalid_argument);
}

TEST(Generators, SmallestGeneratorHasFullOrder) {
    for (std::uint64_t q : {13ull, 19ull, 29ull, 24029ull, 40013ull}) {
        std::uint64_t g = smallest_generator(q);
        EXPECT_EQ(multiplicative_order(g, q), q - 1);
        for (std::uint64_t h = 2; h < g; ++h)
            EXPECT_LT(multiplicative_order(h, q), q - 1);
    }
}

TEST(PrimitiveRoots, ReferenceSets) {
    auto roots_24029 = primitive_roots_of_unity(FieldContext(24029, 2, 2));
    EXPECT_EQ(roots_24029, (std::vector<std::uint64_t>{11937, 12092}));
    auto roots_29 = primitive_roots_of_unity(FieldContext(29, 2, 2));
    EXPECT_EQ(roots_29, (std::vector<std::uint64_t>{12, 17}));
    auto roots_13 = primitive_roots_of_unity(FieldContext(13, 2, 2));
    EXPECT_EQ(roots_13, (std::vector<std::uint64_t>{5, 8}));
}

TEST(PrimitiveRoots, ExactOrderAndCount) {
    struct Case { std::uint64_t q, p, A; } cases[] = {
        {29, 2, 2}, {13, 2, 2}, {19, 3, 2}, {24029, 2, 2}, {40013, 2, 2}, {53, 2, 2},
    };
    for (auto [q, p, A] : cases) {
        FieldContext ctx(q, p, A);
        auto roots = primitive_roots_of_unity(ctx);
        std::uint64_t pa = ctx.p_pow_A();
        EXPECT_EQ(roots.size(), pa / p * (p - 1)) << q;
        std::set<std::uint64_t> uniq(roots.begin(), roots.end());
        EXPECT_EQ(uniq.size(), roots.size());
        for (auto rho : roots) {
            EXPECT_EQ(pow_mod(rho, pa, q), 1u);
            EXPECT_NE(pow_mod(rho, pa / p, q), 1u);
            EXPECT_EQ(multiplicative_order(rho, q), pa);
        }
    }
}

TEST(PrimitiveRoots, DefaultRootMatchesReference) {
    EXPECT_EQ(default_primitive_root(FieldContext(24029, 2, 2)), 12092u);
    EXPECT_EQ(default_primitive_root(FieldContext(29, 2, 2)), 12u);
}

TEST(RankModQ, KnownRanks) {
    // identity 3x3
    EXPECT_EQ(rank_mod_q({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 29), 3u);
    // dependent rows
    EXPECT_EQ(rank_mod_q({{1, 2, 3}, {2, 4, 6}, {0, 0, 5}}, 29), 2u);
    // row that vanishes mod q
    EXPECT_EQ(rank_mod_q({{29, 58, 0}, {1, 1, 1}}, 29), 1u);
    EXPECT_EQ(rank_mod_q({{0, 0}, {0, 0}}, 13), 0u);
}

TEST(Rng, NamedStreamsAreStable) {
    EXPECT_EQ(derive_stream_seed(42, "secret"), derive_stream_seed(42, "secret"));
    EXPECT_NE(derive_stream_seed(42, "secret"), derive_stream_seed(42, "a-0"));
    EXPECT_NE(derive_stream_seed(42, "secret"), derive_stream_seed(43, "secret"));
}

TEST(Rng, UniformBelowIsInRangeAndCoversCells) {
    Rng rng(7);
    std::vector<std::uint64_t> counts(29, 0);
    for (int i = 0; i < 29000; ++i) {
        std::uint64_t v = rng.uniform_below(29);
        ASSERT_LT(v, 29u);
        ++counts[v];
    }
    for (auto c : counts) EXPECT_GT(c, 800u); // expected 1000 per cell
}

TEST(Rng, GaussianMomentsAtSigma8) {
    Rng rng(8);
    const int n = 100000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < n; ++i) {
        double v = static_cast<double>(rng.gaussian_int(8.0));
        sum += v;
        sumsq += v * v;
    }
    double mean = sum / n;
    double stddev = std::sqrt(sumsq / n - mean * mean);
    EXPECT_NEAR(mean, 0.0, 0.1);
    EXPECT_GT(stddev, 7.8);
    EXPECT_LT(stddev, 8.2);
}

} // namespace
