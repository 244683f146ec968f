#include <gtest/gtest.h>

#include <random>

#include "lrc/matrix.hpp"
#include "support.hpp"

using lrc::Elem;
using lrc::Field;
using lrc::MatrixGF;

namespace {

MatrixGF ext_hamming_8() {
    // rows (1|v) for v in GF(2)^3, as a parity-check / generator
    const auto f = Field::make(2, 1);
    MatrixGF H(f, 4, 8);
    for (std::size_t c = 0; c < 8; ++c) {
        H(0, c) = 1;
        for (std::size_t b = 0; b < 3; ++b) H(b + 1, c) = (c >> b) & 1;
    }
    return H;
}

}  // namespace

TEST(Matrix, RankBasics) {
    const auto f2 = Field::make(2, 1);
    EXPECT_EQ(lrc::rank(MatrixGF::identity(f2, 3)), 3u);
    EXPECT_EQ(lrc::rank(MatrixGF(f2, 3, 4)), 0u);
    const auto f7 = Field::make(7, 1);
    MatrixGF V(f7, 3, 5);
    for (std::size_t c = 0; c < 5; ++c)
        for (std::size_t r = 0; r < 3; ++r) V(r, c) = f7.pow(static_cast<Elem>(c), static_cast<long long>(r));
    EXPECT_EQ(lrc::rank(V), 3u);
}

TEST(Matrix, RrefShapeAndPivots) {
    const auto f = Field::make(3, 1);
    auto M = MatrixGF::from_rows(f, {{0, 2, 1, 1}, {0, 1, 2, 0}, {0, 0, 0, 0}});
    const auto res = lrc::rref(M);
    EXPECT_EQ(res.rank, 2u);
    EXPECT_EQ(res.pivots, (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(res.reduced(0, 1), 1u);
    EXPECT_EQ(res.reduced(0, 2), 2u);
    EXPECT_EQ(res.reduced(0, 3), 0u);
    EXPECT_EQ(res.reduced(1, 3), 1u);
}

TEST(Matrix, NullspaceOfParityRow) {
    const auto f = Field::make(2, 1);
    auto M = MatrixGF::from_rows(f, {{1, 1, 1, 1, 1}});
    const auto K = lrc::nullspace(M);
    EXPECT_EQ(K.rows(), 4u);
    for (std::size_t r = 0; r < K.rows(); ++r) {
        std::size_t w = 0;
        for (std::size_t c = 0; c < 5; ++c) w += K(r, c);
        EXPECT_EQ(w % 2, 0u);
    }
    EXPECT_EQ(lrc::nullspace(MatrixGF::identity(f, 4)).rows(), 0u);
}

TEST(Matrix, ExtendedHammingSelfDual) {
    const auto H = ext_hamming_8();
    EXPECT_TRUE(lrc::same_row_space(lrc::nullspace(H), H));
}

TEST(Matrix, RandomProperties) {
    std::mt19937_64 rng(5);
    for (std::uint32_t q : {2u, 3u, 4u, 7u, 8u, 9u, 16u}) {
        const auto f = Field::of_order(q);
        const auto ref = testing_support::naive(f);
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 8;
            auto M = testing_support::random_matrix(f, rows, cols, rng);
            if (trial % 3 == 0 && rows > 1) {
                // force a dependent row
                for (std::size_t c = 0; c < cols; ++c) M(rows - 1, c) = f.add(M(0, c), f.mul(2 % q, M(rows - 2 < rows ? rows - 2 : 0, c)));
            }
            const auto res = lrc::rref(M);
            ASSERT_EQ(res.rank, oracle::rank(ref, M.to_rows()));
            ASSERT_EQ(lrc::rank(M.transpose()), res.rank);
            ASSERT_EQ(lrc::rref(res.reduced).reduced, res.reduced);
            const auto K = lrc::nullspace(M);
            ASSERT_EQ(K.rows(), cols - res.rank);
            if (K.rows()) {
                ASSERT_EQ(lrc::rank(K), K.rows());
                ASSERT_TRUE((M * K.transpose()).is_zero());
            }
        }
    }
}

TEST(Matrix, ColumnsIndependent) {
    const auto f = Field::make(5, 1);
    auto M = MatrixGF::from_rows(f, {{1, 1, 0, 2}, {0, 0, 1, 3}});
    const std::vector<std::size_t> single{0}, repeated{0, 1}, pair{0, 2}, bad{0, 4};
    EXPECT_TRUE(lrc::columns_independent(M, single));
    EXPECT_FALSE(lrc::columns_independent(M, repeated));
    EXPECT_TRUE(lrc::columns_independent(M, pair));
    EXPECT_THROW(lrc::columns_independent(M, bad), lrc::PreconditionError);
}

TEST(Matrix, InverseAndProducts) {
    std::mt19937_64 rng(9);
    const auto f = Field::of_order(9);
    for (int t = 0; t < 20; ++t) {
        auto A = testing_support::random_full_rank(f, 4, 4, rng);
        auto inv = lrc::inverse(A);
        ASSERT_TRUE(inv.has_value());
        EXPECT_EQ(A * *inv, MatrixGF::identity(f, 4));
    }
    EXPECT_FALSE(lrc::inverse(MatrixGF(f, 2, 2)).has_value());
}

TEST(Matrix, TextRoundTrip) {
    std::mt19937_64 rng(3);
    for (std::uint32_t q : {2u, 7u, 16u, 27u}) {
        const auto f = Field::of_order(q);
        auto M = testing_support::random_matrix(f, 3, 5, rng);
        const auto text = lrc::to_text(M);
        EXPECT_EQ(lrc::parse_matrix_text(text), M) << text;
    }
    EXPECT_THROW(lrc::parse_matrix_text("2 1 2 2\n1 0\n"), lrc::ParseError);
    EXPECT_THROW(lrc::parse_matrix_text("2 1 1 2\n1 5\n"), lrc::ParseError);
}

TEST(Matrix, FieldMismatch) {
    MatrixGF a(Field::make(2, 1), 2, 2), b(Field::make(3, 1), 2, 2);
    EXPECT_THROW(a * b, lrc::FieldMismatch);
}
