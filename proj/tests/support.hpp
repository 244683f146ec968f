#pragma once

#include <random>

#include "lrc/field.hpp"
#include "lrc/matrix.hpp"
#include "oracles.hpp"

namespace testing_support {

inline oracle::NaiveField naive(const lrc::Field& f) { return {f.p(), f.m(), f.modulus()}; }

inline lrc::MatrixGF random_matrix(const lrc::Field& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    lrc::MatrixGF M(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) M(r, c) = static_cast<lrc::Elem>(rng() % f.q());
    return M;
}

inline lrc::MatrixGF random_full_rank(const lrc::Field& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    while (true) {
        auto M = random_matrix(f, rows, cols, rng);
        if (lrc::rank(M) == rows) return M;
    }
}

}  // namespace testing_support
