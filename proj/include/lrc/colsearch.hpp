#pragma once

// Searches for small sets of linearly dependent columns.
//
// The smallest number of dependent columns of a parity-check matrix is
// the minimum distance of its code. Subsets are enumerated level by level
// (size 1, 2, ...). Within a level the subset space is partitioned by
// first index; workers pull first indices from a shared counter and the
// reported witness is always the lexicographically first dependent subset,
// whatever the worker count.
//
// Binary matrices use packed columns. Once every subset of size < w is
// known to be independent, a w-subset is dependent iff its columns XOR to
// zero, so level w only walks the (w-1)-prefixes and looks the prefix sum
// up in a hash index of the columns. Other fields extend an echelon basis
// column by column along the enumeration tree.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "lrc/field.hpp"
#include "lrc/matrix.hpp"

namespace lrc {

inline constexpr std::uint64_t kDefaultSubsetBudget = 2'000'000'000ULL;

/// C(n, k), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(acc);
}

struct DependencyResult {
    /// True: `weight` columns (the witness) are dependent and every smaller set
    /// is independent. False: every set of fewer than `weight` columns is
    /// independent and nothing more is known.
    bool exact = false;
    std::size_t weight = 1;
    std::vector<std::size_t> witness;
    /// Set when the search stopped because a level exceeded the budget.
    bool budget_limited = false;
};

namespace detail {

struct PackedColumns {
    std::size_t n = 0, words = 0;
    std::vector<std::uint64_t> bits;                          // n * words
    std::vector<std::pair<std::uint64_t, std::uint32_t>> index;  // (hash, column), sorted

    explicit PackedColumns(const MatrixGF& M) : n(M.cols()), words((M.rows() + 63) / 64) {
        if (words == 0) words = 1;
        bits.assign(n * words, 0);
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < M.rows(); ++r)
                if (M(r, c)) bits[c * words + r / 64] |= std::uint64_t{1} << (r % 64);
        index.reserve(n);
        for (std::size_t c = 0; c < n; ++c) index.emplace_back(hash(col(c)), static_cast<std::uint32_t>(c));
        std::sort(index.begin(), index.end());
    }

    const std::uint64_t* col(std::size_t c) const { return bits.data() + c * words; }

    std::uint64_t hash(const std::uint64_t* v) const {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL;
        for (std::size_t i = 0; i < words; ++i) {
            std::uint64_t z = v[i] + h + 0x9E3779B97F4A7C15ULL * (i + 1);
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            h ^= z ^ (z >> 31);
        }
        return h;
    }

    bool equal(const std::uint64_t* a, const std::uint64_t* b) const {
        for (std::size_t i = 0; i < words; ++i)
            if (a[i] != b[i]) return false;
        return true;
    }

    /// Smallest column index > after whose packed value equals v.
    std::optional<std::size_t> find_after(const std::uint64_t* v, std::size_t after) const {
        const std::uint64_t h = hash(v);
        auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(h, std::uint32_t{0}));
        for (; it != index.end() && it->first == h; ++it)
            if (it->second > after && equal(col(it->second), v)) return it->second;
        return std::nullopt;
    }
};

// Outcome of searching one first index at one level.
struct BranchOutcome {
    bool found = false;
    std::vector<std::size_t> witness;
};

class BinaryLevel {
public:
    BinaryLevel(const PackedColumns& pc, std::size_t w, std::uint64_t* leaf_budget)
        : pc_(pc), w_(w), leaf_budget_(leaf_budget), acc_((w + 1) * pc.words, 0), chosen_(w) {}

    BranchOutcome run(std::size_t first) {
        BranchOutcome out;
        chosen_[0] = first;
        std::copy(pc_.col(first), pc_.col(first) + pc_.words, acc_.begin() + pc_.words);
        if (w_ == 1) {
            bool zero = true;
            for (std::size_t i = 0; i < pc_.words; ++i) zero = zero && pc_.col(first)[i] == 0;
            if (zero) out = {true, {first}};
            return out;
        }
        if (recurse(1, out)) return out;
        return out;
    }

    bool exhausted() const { return stop_; }

private:
    // depth = number of indices chosen so far; acc_ row `depth` holds their XOR
    bool recurse(std::size_t depth, BranchOutcome& out) {
        const std::uint64_t* cur = acc_.data() + depth * pc_.words;
        if (depth == w_ - 1) {
            if (leaf_budget_) {
                if (*leaf_budget_ == 0) {
                    stop_ = true;
                    return false;
                }
                --*leaf_budget_;
            }
            if (auto j = pc_.find_after(cur, chosen_[depth - 1])) {
                out.found = true;
                out.witness.assign(chosen_.begin(), chosen_.begin() + depth);
                out.witness.push_back(*j);
                return true;
            }
            return false;
        }
        std::uint64_t* nxt = acc_.data() + (depth + 1) * pc_.words;
        const std::size_t remaining = w_ - depth;
        for (std::size_t j = chosen_[depth - 1] + 1; j + remaining <= pc_.n; ++j) {
            const std::uint64_t* c = pc_.col(j);
            for (std::size_t i = 0; i < pc_.words; ++i) nxt[i] = cur[i] ^ c[i];
            chosen_[depth] = j;
            if (recurse(depth + 1, out)) return true;
            if (stop_) return false;
        }
        return false;
    }

    const PackedColumns& pc_;
    std::size_t w_;
    std::uint64_t* leaf_budget_;
    std::vector<std::uint64_t> acc_;
    std::vector<std::size_t> chosen_;
    bool stop_ = false;
};

class GenericLevel {
public:
    GenericLevel(const MatrixGF& M, std::size_t w, std::uint64_t* leaf_budget)
        : M_(M), f_(M.field()), w_(w), R_(M.rows()), leaf_budget_(leaf_budget), basis_(w * M.rows()),
          pivots_(w), chosen_(w), scratch_(M.rows()) {
        cols_.resize(M.cols() * R_);
        for (std::size_t c = 0; c < M.cols(); ++c)
            for (std::size_t r = 0; r < R_; ++r) cols_[c * R_ + r] = M(r, c);
    }

    BranchOutcome run(std::size_t first) {
        BranchOutcome out;
        recurse_at(0, first, out);
        return out;
    }

    bool exhausted() const { return stop_; }

private:
    // Reduce column j against the first `depth` basis vectors into scratch_;
    // returns the pivot position or R_ when the column lies in their span.
    std::size_t reduce(std::size_t depth, std::size_t j) {
        std::copy(cols_.begin() + j * R_, cols_.begin() + (j + 1) * R_, scratch_.begin());
        for (std::size_t b = 0; b < depth; ++b) {
            const Elem factor = scratch_[pivots_[b]];
            if (!factor) continue;
            const Elem* bv = basis_.data() + b * R_;
            for (std::size_t r = 0; r < R_; ++r)
                if (bv[r]) scratch_[r] = f_.sub(scratch_[r], f_.mul(factor, bv[r]));
        }
        for (std::size_t r = 0; r < R_; ++r)
            if (scratch_[r]) return r;
        return R_;
    }

    bool recurse_at(std::size_t depth, std::size_t j, BranchOutcome& out) {
        const bool leaf = depth + 1 == w_;
        if (leaf && leaf_budget_) {
            if (*leaf_budget_ == 0) {
                stop_ = true;
                return false;
            }
            --*leaf_budget_;
        }
        chosen_[depth] = j;
        const std::size_t piv = reduce(depth, j);
        if (piv == R_) {
            out.found = true;
            out.witness.assign(chosen_.begin(), chosen_.begin() + depth + 1);
            return true;
        }
        if (leaf) return false;
        const Elem inv = f_.inv(scratch_[piv]);
        Elem* dst = basis_.data() + depth * R_;
        for (std::size_t r = 0; r < R_; ++r) dst[r] = scratch_[r] ? f_.mul(scratch_[r], inv) : 0;
        pivots_[depth] = piv;
        const std::size_t remaining = w_ - depth - 1;
        for (std::size_t k = j + 1; k + remaining <= M_.cols(); ++k) {
            if (recurse_at(depth + 1, k, out)) return true;
            if (stop_) return false;
        }
        return false;
    }

    const MatrixGF& M_;
    const Field& f_;
    std::size_t w_, R_;
    std::uint64_t* leaf_budget_;
    std::vector<Elem> cols_, basis_;
    std::vector<std::size_t> pivots_, chosen_;
    std::vector<Elem> scratch_;
    bool stop_ = false;
};

// Lexicographically first dependent w-subset, searched by first index.
// Assumes (for the binary path) that all smaller subsets are independent.
inline std::optional<std::vector<std::size_t>> search_level(const MatrixGF& M, const PackedColumns* packed,
                                                             std::size_t w, unsigned workers) {
    const std::size_t n = M.cols();
    if (w == 0 || w > n) return std::nullopt;
    const std::size_t firsts = n - w + 1;
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(firsts)));
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{firsts};
    std::vector<std::vector<std::size_t>> found(firsts);

    auto work = [&]() {
        std::optional<BinaryLevel> bin;
        std::optional<GenericLevel> gen;
        if (packed)
            bin.emplace(*packed, w, nullptr);
        else
            gen.emplace(M, w, nullptr);
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= firsts || i > best.load()) return;
            BranchOutcome o = packed ? bin->run(i) : gen->run(i);
            if (o.found) {
                found[i] = std::move(o.witness);
                std::size_t cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    const std::size_t b = best.load();
    if (b == firsts) return std::nullopt;
    return found[b];
}

}  // namespace detail

/// Smallest w <= wmax such that some w columns of M are dependent, or a
/// certificate that all subsets of size <= wmax (or up to the first level
/// whose subset count exceeds budget) are independent.
inline DependencyResult min_dependent_columns(const MatrixGF& M, std::size_t wmax, unsigned workers = 1,
                                              std::uint64_t budget = kDefaultSubsetBudget) {
    if (wmax < 1) throw PreconditionError("wmax must be >= 1");
    std::optional<detail::PackedColumns> packed;
    if (M.field().q() == 2) packed.emplace(M);
    const std::size_t top = std::min(wmax, M.cols());
    for (std::size_t w = 1; w <= top; ++w) {
        if (binomial(M.cols(), w) > budget) return {false, w, {}, true};
        if (auto wit = detail::search_level(M, packed ? &*packed : nullptr, w, workers)) return {true, w, *wit, false};
    }
    return {false, top + 1, {}, false};
}

/// Look for any dependent set of exactly w columns, examining at most
/// `limit` subsets in lexicographic order. The binary path relies on all
/// smaller subsets being independent; a hit there is a codeword of weight w.
/// Elsewhere a hit means the columns are dependent (a codeword of weight <= w).
inline std::optional<std::vector<std::size_t>> hunt_dependent_columns(const MatrixGF& M, std::size_t w,
                                                                      std::uint64_t limit) {
    if (w < 1 || w > M.cols()) return std::nullopt;
    std::uint64_t left = limit;
    if (M.field().q() == 2) {
        detail::PackedColumns pc(M);
        detail::BinaryLevel lvl(pc, w, &left);
        for (std::size_t i = 0; i + w <= M.cols(); ++i) {
            auto o = lvl.run(i);
            if (o.found) return o.witness;
            if (lvl.exhausted()) break;
        }
        return std::nullopt;
    }
    detail::GenericLevel lvl(M, w, &left);
    for (std::size_t i = 0; i + w <= M.cols(); ++i) {
        auto o = lvl.run(i);
        if (o.found) return o.witness;
        if (lvl.exhausted()) break;
    }
    return std::nullopt;
}

}  // namespace lrc
