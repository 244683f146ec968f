#pragma once

// Linear codes given by a generator/parity-check pair, plus the machinery
// that turns construction-time distance guarantees into certified values.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "lrc/colsearch.hpp"
#include "lrc/error.hpp"
#include "lrc/field.hpp"
#include "lrc/matrix.hpp"

namespace lrc {

/// What is known about the minimum distance: lower <= d <= upper.
struct DistanceKnowledge {
    std::size_t lower = 1;
    std::size_t upper = 1;
    std::string lower_by = "trivial";
    std::string upper_by = "length";

    bool exact() const { return lower == upper; }

    /// Intersection of two bodies of knowledge; throws if they contradict.
    DistanceKnowledge merged(const DistanceKnowledge& o) const {
        DistanceKnowledge out = *this;
        if (o.lower > out.lower) {
            out.lower = o.lower;
            out.lower_by = o.lower_by;
        }
        if (o.upper < out.upper) {
            out.upper = o.upper;
            out.upper_by = o.upper_by;
        }
        if (out.lower > out.upper)
            throw Error("contradictory distance knowledge: lower " + std::to_string(out.lower) + " (" +
                        out.lower_by + ") > upper " + std::to_string(out.upper) + " (" + out.upper_by + ")");
        return out;
    }
    DistanceKnowledge with_lower(std::size_t v, std::string by) const {
        DistanceKnowledge o{v, upper, std::move(by), upper_by};
        if (v <= lower) return *this;
        return merged(o);
    }
    DistanceKnowledge with_upper(std::size_t v, std::string by) const {
        if (v >= upper) return *this;
        DistanceKnowledge o{lower, v, lower_by, std::move(by)};
        return merged(o);
    }

    std::string to_string() const {
        if (exact()) return std::to_string(lower);
        return "[" + std::to_string(lower) + "," + std::to_string(upper) + "]";
    }
};

class LinearCode {
public:
    static LinearCode from_generator(const MatrixGF& G) {
        if (G.empty() || G.is_zero()) throw PreconditionError("generator matrix is zero");
        MatrixGF basis = rank(G) == G.rows() ? G : row_basis(G);
        if (basis.rows() == basis.cols()) throw TrivialCodeError("code is the full space; parity-check matrix would be empty");
        MatrixGF H = nullspace(basis);
        return LinearCode(std::move(basis), std::move(H));
    }

    static LinearCode from_parity(const MatrixGF& H) {
        if (H.empty() || H.is_zero()) throw PreconditionError("parity-check matrix is zero");
        MatrixGF basis = rank(H) == H.rows() ? H : row_basis(H);
        if (basis.rows() == basis.cols()) throw TrivialCodeError("code is {0}; generator matrix would be empty");
        MatrixGF G = nullspace(basis);
        return LinearCode(std::move(G), std::move(basis));
    }

    /// Both matrices given (e.g. loaded from a file); checked for consistency.
    static LinearCode from_pair(const MatrixGF& G, const MatrixGF& H, std::optional<DistanceKnowledge> d = {}) {
        G.require_same_field(H);
        if (G.cols() != H.cols()) throw PreconditionError("generator and parity-check lengths differ");
        if (G.rows() == 0 || H.rows() == 0) throw TrivialCodeError("trivial code");
        if (G.rows() + H.rows() != G.cols()) throw PreconditionError("dimensions of G and H do not add up to n");
        if (rank(G) != G.rows() || rank(H) != H.rows()) throw PreconditionError("G or H is not full rank");
        if (!(G * H.transpose()).is_zero()) throw PreconditionError("G * H^T != 0");
        LinearCode c(G, H);
        if (d) {
            if (d->lower < 1 || d->upper > c.n() || d->lower > d->upper)
                throw PreconditionError("distance knowledge out of range");
            c.distance_ = *d;
        }
        return c;
    }

    const Field& field() const { return G_.field(); }
    std::size_t n() const { return G_.cols(); }
    std::size_t k() const { return G_.rows(); }
    const MatrixGF& G() const { return G_; }
    const MatrixGF& H() const { return H_; }
    const DistanceKnowledge& distance() const { return distance_; }

    /// A copy whose knowledge is the intersection with d (never loosens).
    LinearCode with_distance(const DistanceKnowledge& d) const {
        LinearCode c = *this;
        c.distance_ = distance_.merged(d);
        return c;
    }

    std::string params() const {
        return "[" + std::to_string(n()) + "," + std::to_string(k()) + "," + distance_.to_string() + "]_" +
               std::to_string(field().q());
    }

private:
    LinearCode(MatrixGF G, MatrixGF H) : G_(std::move(G)), H_(std::move(H)) {
        distance_ = {1, n(), "trivial", "length"};
    }

    MatrixGF G_, H_;
    DistanceKnowledge distance_;
};

inline LinearCode dual(const LinearCode& C) {
    if (C.k() < 1 || C.k() > C.n() - 1) throw TrivialCodeError("dual would be trivial");
    return LinearCode::from_pair(C.H(), C.G());
}

inline std::vector<Elem> encode(const LinearCode& C, std::span<const Elem> message) {
    if (message.size() != C.k()) throw PreconditionError("message length must equal k");
    for (auto v : message)
        if (!C.field().contains(v)) throw PreconditionError("message symbol outside the field");
    return C.G().left_multiply(message);
}

inline bool contains(const LinearCode& C, std::span<const Elem> word) {
    if (word.size() != C.n()) throw PreconditionError("word length must equal n");
    for (auto v : word)
        if (!C.field().contains(v)) return false;
    for (auto s : C.H().apply(word))
        if (s) return false;
    return true;
}

inline std::size_t hamming_weight(std::span<const Elem> v) {
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Elem e) { return e != 0; }));
}

/// q^k, saturating.
inline std::uint64_t codeword_count(const LinearCode& C) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < C.k(); ++i) {
        if (total > (std::uint64_t{1} << 62) / C.field().q()) return std::numeric_limits<std::uint64_t>::max();
        total *= C.field().q();
    }
    return total;
}

/// Minimum weight by walking every codeword up to scalar multiples.
inline std::size_t enumerate_min_weight(const LinearCode& C) {
    const Field& f = C.field();
    const std::size_t n = C.n(), k = C.k();
    if (f.q() == 2) {
        const std::size_t W = (n + 63) / 64;
        std::vector<std::uint64_t> rows(k * W, 0), cw(W, 0);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (C.G()(r, c)) rows[r * W + c / 64] |= std::uint64_t{1} << (c % 64);
        std::size_t best = n;
        const std::uint64_t total = std::uint64_t{1} << k;
        for (std::uint64_t i = 1; i < total; ++i) {
            const auto flip = static_cast<std::size_t>(std::countr_zero(i));
            std::size_t w = 0;
            for (std::size_t j = 0; j < W; ++j) {
                cw[j] ^= rows[flip * W + j];
                w += static_cast<std::size_t>(std::popcount(cw[j]));
            }
            best = std::min(best, w);
        }
        return best;
    }
    // scaled[r][a] = a * row r
    const std::uint32_t q = f.q();
    std::vector<Elem> scaled(k * q * n);
    for (std::size_t r = 0; r < k; ++r)
        for (Elem a = 0; a < q; ++a)
            for (std::size_t c = 0; c < n; ++c) scaled[(r * q + a) * n + c] = f.mul(a, C.G()(r, c));
    std::size_t best = n;
    std::vector<std::vector<Elem>> partial(k + 1, std::vector<Elem>(n));
    // leading nonzero digit fixed to 1 at position lead
    for (std::size_t lead = 0; lead < k; ++lead) {
        std::copy_n(scaled.begin() + static_cast<std::ptrdiff_t>((lead * q + 1) * n), n, partial[lead + 1].begin());
        auto dfs = [&](auto&& self, std::size_t pos) -> void {
            if (pos == k) {
                best = std::min(best, hamming_weight(partial[k]));
                return;
            }
            for (Elem a = 0; a < q; ++a) {
                const Elem* s = scaled.data() + (pos * q + a) * n;
                for (std::size_t c = 0; c < n; ++c) partial[pos + 1][c] = f.add(partial[pos][c], s[c]);
                self(self, pos + 1);
            }
        };
        dfs(dfs, lead + 1);
    }
    return best;
}

struct CertifyBudget {
    std::uint64_t codewords = std::uint64_t{1} << 24;
    std::uint64_t subsets = kDefaultSubsetBudget;
    /// Subsets examined when hunting for a codeword at the lower bound.
    std::uint64_t hunt = 50'000'000;
    unsigned workers = 1;
    /// Random information sets tried when the bounds still disagree.
    std::size_t probe_iterations = 0;
    std::uint64_t seed = 1;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Weight of the lightest row of the systematic form on a random information set.
inline std::size_t probe_once(const LinearCode& C, std::uint64_t seed, std::uint64_t iteration) {
    std::mt19937_64 rng(mix_seed(seed, iteration));
    const std::size_t n = C.n();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
    const auto R = rref(C.G().select_columns(perm)).reduced;
    std::size_t best = n;
    for (std::size_t r = 0; r < R.rows(); ++r) best = std::min(best, hamming_weight(R.row(r)));
    return best;
}

}  // namespace detail

/// Lightest codeword weight seen over `iterations` random information sets.
/// Deterministic for a given seed and independent of the worker count.
inline std::size_t distance_upper_probe(const LinearCode& C, std::size_t iterations, std::uint64_t seed,
                                        unsigned workers = 1) {
    if (iterations < 1) throw PreconditionError("iterations must be >= 1");
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(iterations)));
    std::vector<std::size_t> best(workers, C.n());
    auto run = [&](unsigned t) {
        for (std::size_t i = t; i < iterations; i += workers) best[t] = std::min(best[t], detail::probe_once(C, seed, i));
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(run, t);
        for (auto& th : pool) th.join();
    }
    return *std::min_element(best.begin(), best.end());
}

/// Binary code whose dual contains the all-ones word: every codeword has even weight.
inline bool is_even_weight_code(const LinearCode& C) {
    if (C.field().q() != 2) return false;
    for (std::size_t r = 0; r < C.k(); ++r)
        if (hamming_weight(C.G().row(r)) % 2) return false;
    return true;
}

/// Tightest distance knowledge reachable within the budget; never looser
/// than what C already carries.
inline DistanceKnowledge distance_certify(const LinearCode& C, const CertifyBudget& budget = {}) {
    DistanceKnowledge K = C.distance().with_upper(C.n() - C.k() + 1, "singleton");
    if (codeword_count(C) <= budget.codewords) {
        const std::size_t d = enumerate_min_weight(C);
        return K.merged({d, d, "enumeration", "enumeration"});
    }
    if (K.exact()) return K;
    const auto col = min_dependent_columns(C.H(), K.upper, budget.workers, budget.subsets);
    if (col.exact)
        K = K.merged({col.weight, col.weight, "column-search", "column-search"});
    else
        K = K.with_lower(col.weight, "column-search");
    if (!K.exact() && is_even_weight_code(C) && K.lower % 2) K = K.with_lower(K.lower + 1, "even-weight");
    if (!K.exact() && budget.hunt > 0) {
        if (hunt_dependent_columns(C.H(), K.lower, budget.hunt)) K = K.with_upper(K.lower, "column-hunt");
    }
    if (!K.exact() && budget.probe_iterations > 0)
        K = K.with_upper(distance_upper_probe(C, budget.probe_iterations, budget.seed, budget.workers), "probe");
    return K;
}

/// A nonzero codeword supported inside the column set S (S must be dependent in H).
inline std::vector<Elem> codeword_on(const LinearCode& C, std::span<const std::size_t> S) {
    const auto K = nullspace(C.H().select_columns(S));
    if (K.rows() == 0) throw PreconditionError("columns are independent; no codeword on them");
    std::vector<Elem> w(C.n(), 0);
    for (std::size_t j = 0; j < S.size(); ++j) w[S[j]] = K(0, j);
    return w;
}

/// A codeword of provably minimum weight, if one is found within the budget.
inline std::optional<std::vector<Elem>> min_weight_codeword(const LinearCode& C, const CertifyBudget& budget = {}) {
    DistanceKnowledge K = C.distance();
    if (!K.exact()) {
        const auto col = min_dependent_columns(C.H(), K.upper, budget.workers, budget.subsets);
        if (col.exact) return codeword_on(C, col.witness);
        K = K.with_lower(col.weight, "column-search");
        if (is_even_weight_code(C) && K.lower % 2 && K.lower < K.upper) K = K.with_lower(K.lower + 1, "even-weight");
    }
    // every smaller set of columns is independent, so a hit has weight exactly K.lower
    if (auto hit = hunt_dependent_columns(C.H(), K.lower, budget.hunt)) return codeword_on(C, *hit);
    return std::nullopt;
}

}  // namespace lrc
