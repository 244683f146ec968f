#include <gtest/gtest.h>

#include <random>

#include "lrc/field.hpp"
#include "lrc/subfield.hpp"
#include "support.hpp"

using lrc::Elem;
using lrc::Field;
using lrc::FieldElement;

TEST(Field, PrimeFieldBasics) {
    const auto f2 = Field::make(2, 1);
    EXPECT_EQ(f2.q(), 2u);
    EXPECT_EQ(f2.add(1, 1), 0u);
    const auto f7 = Field::make(7, 1);
    EXPECT_EQ(f7.q(), 7u);
    EXPECT_EQ(f7.inv(3), 5u);
    EXPECT_EQ(f7.sub(2, 5), 4u);
}

TEST(Field, LowestQuarticModulus) {
    const auto f = Field::make(2, 4);
    EXPECT_EQ(f.modulus(), (std::vector<std::uint32_t>{1, 1, 0, 0, 1}));
}

TEST(Field, LowestModulusMatchesScan) {
    // the smallest-encoded monic irreducible, by testing every candidate for roots and factors
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {2, 3}, {2, 6}, {3, 2}, {3, 3}, {5, 2}}) {
        const auto f = Field::make(p, m);
        std::uint32_t pm = 1;
        for (std::uint32_t i = 0; i < m; ++i) pm *= p;
        std::vector<std::uint32_t> found;
        for (std::uint32_t low = 0; low < pm && found.empty(); ++low) {
            std::vector<std::uint32_t> cand(m + 1, 0);
            std::uint32_t v = low;
            for (std::uint32_t i = 0; i < m; ++i) {
                cand[i] = v % p;
                v /= p;
            }
            cand[m] = 1;
            oracle::NaiveField trial(p, m, cand);
            // irreducible iff the quotient ring has no zero divisors
            bool domain = true;
            for (std::uint32_t a = 1; a < pm && domain; ++a)
                for (std::uint32_t b = 1; b < pm && domain; ++b) domain = trial.mul(a, b) != 0;
            if (domain) found = cand;
        }
        EXPECT_EQ(f.modulus(), found) << p << "^" << m;
    }
}

TEST(Field, SameParametersSameModulus) {
    EXPECT_EQ(Field::make(3, 4), Field::make(3, 4));
    EXPECT_EQ(Field::make(2, 8).modulus(), Field::of_order(256).modulus());
}

TEST(Field, ReductionInGF16) {
    const auto f = Field::make(2, 4);
    // x * x^3 = x^4 = x + 1
    EXPECT_EQ(f.mul(0b10, 0b1000), 0b11u);
}

TEST(Field, Errors) {
    EXPECT_THROW(Field::make(4, 1), lrc::PreconditionError);
    EXPECT_THROW(Field::make(2, 0), lrc::PreconditionError);
    EXPECT_THROW(Field::make(2, 17), lrc::PreconditionError);
    const auto f = Field::make(5, 1);
    EXPECT_THROW(f.inv(0), lrc::DivisionByZero);
    EXPECT_THROW(f.div(3, 0), lrc::DivisionByZero);
    EXPECT_THROW(Field::with_modulus(2, 2, {1, 0, 1}), lrc::PreconditionError);
    FieldElement a(Field::make(2, 2), 1), b(Field::make(2, 3), 1);
    EXPECT_THROW(a + b, lrc::FieldMismatch);
}

TEST(Field, MatchesNaiveArithmetic) {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u}) {
        const auto f = Field::of_order(q);
        const auto ref = testing_support::naive(f);
        for (Elem a = 0; a < q; ++a)
            for (Elem b = 0; b < q; ++b) {
                ASSERT_EQ(f.add(a, b), ref.add(a, b)) << q;
                ASSERT_EQ(f.mul(a, b), ref.mul(a, b)) << q;
                ASSERT_EQ(f.sub(a, b), ref.add(a, ref.neg(b))) << q;
            }
    }
}

TEST(Field, AxiomsExhaustiveSmall) {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
        const auto f = Field::of_order(q);
        for (Elem a = 0; a < q; ++a)
            for (Elem b = 0; b < q; ++b) {
                ASSERT_EQ(f.add(a, b), f.add(b, a));
                ASSERT_EQ(f.mul(a, b), f.mul(b, a));
                for (Elem c = 0; c < q; ++c) {
                    ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
    }
}

TEST(Field, AxiomsRandomLarger) {
    std::mt19937_64 rng(11);
    for (std::uint32_t q : {17u, 25u, 27u, 31u, 32u, 49u, 64u, 256u, 4096u, 65536u, 59049u}) {
        const auto f = Field::of_order(q);
        for (int i = 0; i < 100000; ++i) {
            const Elem a = rng() % q, b = rng() % q, c = rng() % q;
            ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        }
    }
}

TEST(Field, InversesAndPrimitiveOrder) {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u}) {
        const auto f = Field::of_order(q);
        for (Elem a = 1; a < q; ++a) ASSERT_EQ(f.mul(a, f.inv(a)), 1u);
        // the primitive element has multiplicative order exactly q-1
        Elem g = f.primitive(), x = g;
        std::uint32_t order = 1;
        while (x != 1) {
            x = f.mul(x, g);
            ++order;
        }
        EXPECT_EQ(order, q - 1) << q;
    }
}

TEST(Field, Identities) {
    const auto f = Field::of_order(27);
    for (Elem a = 0; a < 27; ++a) {
        EXPECT_EQ(f.add(a, 0), a);
        EXPECT_EQ(f.mul(a, 1), a);
        EXPECT_EQ(f.add(a, f.neg(a)), 0u);
    }
    EXPECT_EQ(f.pow(5, 0), 1u);
    EXPECT_EQ(f.pow(5, -1), f.inv(5));
    EXPECT_EQ(f.pow(5, 26), 1u);
}

TEST(Field, ElementOperators) {
    const auto f = Field::make(7, 1);
    FieldElement a(f, 3), b(f, 5);
    EXPECT_EQ((a * b).value(), 1u);
    EXPECT_EQ((a + b).value(), 1u);
    EXPECT_EQ((a - b).value(), 5u);
    EXPECT_EQ((a / b).value(), f.mul(3, 3));
    EXPECT_EQ(a.inv().value(), 5u);
}

TEST(Field, DescriptorRoundTrip) {
    const auto f = Field::make(2, 4);
    EXPECT_EQ(f.descriptor(), "2 4 1 1 0 0 1");
    EXPECT_EQ(Field::parse_descriptor(f.descriptor()), f);
    EXPECT_THROW(Field::parse_descriptor("2 4 1 0 0 0 1"), lrc::Error);
}

TEST(Subfield, PrimeSubfieldIsPolynomialReadout) {
    lrc::RelativeBasis rb(Field::make(2, 4), Field::make(2, 1));
    EXPECT_EQ(rb.coords(0b0101), (std::vector<Elem>{1, 0, 1, 0}));
    EXPECT_EQ(rb.coords(0), (std::vector<Elem>{0, 0, 0, 0}));
}

TEST(Subfield, RoundTripAndLinearity) {
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> cases = {{16, 4}, {16, 2}, {64, 8}, {64, 4}, {256, 16}, {81, 9}, {8, 2}, {9, 3}};
    for (auto [Q, q] : cases) {
        const auto big = Field::of_order(Q), base = Field::of_order(q);
        lrc::RelativeBasis rb(big, base);
        for (Elem x = 0; x < Q; ++x) ASSERT_EQ(rb.uncoords(rb.coords(x)), x);
        for (Elem x = 0; x < Q; ++x)
            for (Elem y = 0; y < Q; ++y) {
                const auto cx = rb.coords(x), cy = rb.coords(y), cs = rb.coords(big.add(x, y));
                for (std::size_t j = 0; j < cx.size(); ++j) ASSERT_EQ(cs[j], base.add(cx[j], cy[j]));
            }
        for (Elem lam = 0; lam < q; ++lam)
            for (Elem x = 0; x < Q; ++x) {
                const auto cx = rb.coords(x), cl = rb.coords(big.mul(rb.embed(lam), x));
                for (std::size_t j = 0; j < cx.size(); ++j) ASSERT_EQ(cl[j], base.mul(lam, cx[j]));
            }
    }
}

TEST(Subfield, EmbeddingIsHomomorphism) {
    const auto big = Field::of_order(256), base = Field::of_order(16);
    lrc::RelativeBasis rb(big, base);
    for (Elem a = 0; a < 16; ++a)
        for (Elem b = 0; b < 16; ++b) {
            ASSERT_EQ(rb.embed(base.mul(a, b)), big.mul(rb.embed(a), rb.embed(b)));
            ASSERT_EQ(rb.embed(base.add(a, b)), big.add(rb.embed(a), rb.embed(b)));
        }
}

TEST(Subfield, Errors) {
    EXPECT_THROW(lrc::RelativeBasis(Field::of_order(16), Field::of_order(8)), lrc::PreconditionError);
    EXPECT_THROW(lrc::RelativeBasis(Field::of_order(16), Field::of_order(3)), lrc::PreconditionError);
}
