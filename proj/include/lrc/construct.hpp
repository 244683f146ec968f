#pragma once

// Base codes, concatenation, the three propagation rules and the two
// lengthening constructions.

#include <array>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <unordered_set>
#include <vector>

#include "lrc/lrc.hpp"
#include "lrc/subfield.hpp"

namespace lrc {

/// Columns grouped for lengthening: n = m*r + s with 1 <= s <= r, so there
/// are always m + 1 = ceil(n/r) blocks, the last one of size s.
struct BlockLayout {
    std::size_t n = 0, r = 0, m = 0, s = 0;

    BlockLayout(std::size_t n_, std::size_t r_) : n(n_), r(r_) {
        if (r < 1 || r > n) throw PreconditionError("block layout needs 1 <= r <= n");
        m = (n - 1) / r;
        s = n - m * r;
    }
    std::size_t blocks() const { return m + 1; }
    std::size_t block_size(std::size_t b) const { return b < m ? r : s; }
    /// Position (in base order) of the first base column of block b.
    std::size_t base_begin(std::size_t b) const { return b * r; }
    /// Column of the lengthened matrix holding base slot j of block b.
    std::size_t column(std::size_t b, std::size_t j) const { return b * (r + 1) + j; }
    /// The added column of block b.
    std::size_t new_column(std::size_t b) const { return b * (r + 1) + block_size(b); }
    std::size_t lengthened() const { return n + blocks(); }
};

namespace detail {

inline LinearCode with_lower(LinearCode C, std::size_t d, const std::string& by) {
    return C.with_distance(C.distance().with_lower(d, by));
}

inline std::vector<Elem> unit(std::size_t n, std::size_t i, Elem v = 1) {
    std::vector<Elem> w(n, 0);
    w[i] = v;
    return w;
}

// Reduced certificate: zero words dropped, r tightened to the heaviest word.
inline LocalityCertificate tighten(std::size_t n, std::vector<std::vector<Elem>> words) {
    LocalityCertificate cert;
    std::size_t heaviest = 1;
    for (auto& w : words) {
        const auto wt = hamming_weight(w);
        if (!wt) continue;
        heaviest = std::max(heaviest, wt);
        cert.words.push_back(std::move(w));
    }
    cert.r = std::max<std::size_t>(1, heaviest - 1);
    cert.disjoint = supports_partition(n, cert.words);
    return cert;
}

inline std::vector<Elem> drop_positions(std::span<const Elem> w, const std::vector<bool>& drop) {
    std::vector<Elem> out;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!drop[i]) out.push_back(w[i]);
    return out;
}

}  // namespace detail

/// Single parity-check [n, n-1, 2; n-1].
inline LocallyRepairableCode spc(std::size_t n, const Field& f) {
    if (n < 2) throw PreconditionError("single parity-check code needs n >= 2");
    MatrixGF G(f, n - 1, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        G(i, i) = 1;
        G(i, n - 1) = f.neg(1);
    }
    auto C = LinearCode::from_generator(G).with_distance({2, 2, "single parity", "single parity"});
    LocalityCertificate cert{n - 1, true, {std::vector<Elem>(n, 1)}};
    return {std::move(C), std::move(cert)};
}

/// Repetition [n, 1, n; 1] with recovery words e_i - e_{i+1}.
inline LocallyRepairableCode repetition(std::size_t n, const Field& f) {
    if (n < 2) throw PreconditionError("repetition code needs n >= 2");
    MatrixGF G(f, 1, n);
    for (std::size_t i = 0; i < n; ++i) G(0, i) = 1;
    auto C = LinearCode::from_generator(G).with_distance({n, n, "repetition", "repetition"});
    LocalityCertificate cert{1, n == 2, {}};
    for (std::size_t i = 0; i + 1 < n; ++i) {
        auto w = detail::unit(n, i);
        w[i + 1] = f.neg(1);
        cert.words.push_back(std::move(w));
    }
    return {std::move(C), std::move(cert)};
}

/// Evaluation code of polynomials of degree < k on the given points.
inline LinearCode rs(const Field& f, const std::vector<Elem>& points, std::size_t k) {
    const std::size_t n = points.size();
    if (k < 1 || k > n) throw PreconditionError("Reed-Solomon code needs 1 <= k <= n");
    std::unordered_set<Elem> seen;
    for (auto a : points) {
        if (!f.contains(a)) throw PreconditionError("evaluation point outside the field");
        if (!seen.insert(a).second) throw PreconditionError("evaluation points must be distinct");
    }
    MatrixGF G(f, k, n);
    for (std::size_t j = 0; j < n; ++j) {
        Elem x = 1;
        for (std::size_t i = 0; i < k; ++i) {
            G(i, j) = x;
            x = f.mul(x, points[j]);
        }
    }
    const std::size_t d = n - k + 1;
    return LinearCode::from_generator(G).with_distance({d, d, "mds", "mds"});
}

inline std::vector<Elem> first_points(const Field& f, std::size_t n) {
    if (n > f.q()) throw PreconditionError("more evaluation points than field elements");
    std::vector<Elem> pts(n);
    std::iota(pts.begin(), pts.end(), Elem{0});
    return pts;
}

/// [n, k, n-k+1] for n <= q+1; length q+1 adds the x^(k-1) coefficient position.
inline LinearCode extended_rs(const Field& f, std::size_t n, std::size_t k) {
    if (n > f.q() + 1) throw PreconditionError("extended Reed-Solomon length must be <= q+1");
    if (n <= f.q()) return rs(f, first_points(f, n), k);
    if (k < 1 || k > n) throw PreconditionError("Reed-Solomon code needs 1 <= k <= n");
    const auto base = rs(f, first_points(f, f.q()), k);
    MatrixGF G(f, k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < f.q(); ++j) G(i, j) = base.G()(i, j);
    G(k - 1, n - 1) = 1;
    const std::size_t d = n - k + 1;
    return LinearCode::from_generator(G).with_distance({d, d, "mds", "mds"});
}

/// [m, m-t, t+1] RS on points 0..m-1 with recovery words of weight m-t+1
/// taken from the generalized RS dual.
inline LocallyRepairableCode rs_with_locality(const Field& f, std::size_t m, std::size_t t) {
    if (m > f.q()) throw PreconditionError("rs_with_locality needs m <= q");
    if (t < 1 || t + 1 > m) throw PreconditionError("rs_with_locality needs 1 <= t <= m-1");
    const auto pts = first_points(f, m);
    auto C = rs(f, pts, m - t);
    std::vector<Elem> v(m);
    for (std::size_t j = 0; j < m; ++j) {
        Elem prod = 1;
        for (std::size_t l = 0; l < m; ++l)
            if (l != j) prod = f.mul(prod, f.sub(pts[j], pts[l]));
        v[j] = f.inv(prod);
    }
    std::vector<bool> covered(m, false);
    LocalityCertificate cert;
    cert.r = m - t;
    for (std::size_t i = 0; i < m; ++i) {
        if (covered[i]) continue;
        // vanish on the t-1 positions following i (cyclically)
        std::vector<Elem> w(m);
        for (std::size_t j = 0; j < m; ++j) {
            Elem h = 1;
            for (std::size_t z = 1; z < t; ++z) h = f.mul(h, f.sub(pts[j], pts[(i + z) % m]));
            w[j] = f.mul(v[j], h);
        }
        for (std::size_t j = 0; j < m; ++j)
            if (w[j]) covered[j] = true;
        cert.words.push_back(std::move(w));
    }
    cert.disjoint = supports_partition(m, cert.words);
    return {std::move(C), std::move(cert)};
}

/// Extended Hamming [2^t, 2^t-1-t, 4]: parity-check columns (1 | v), v in the given order.
inline LinearCode hamming_ext(unsigned t, std::optional<std::vector<std::uint32_t>> order = std::nullopt) {
    if (t < 2) throw PreconditionError("extended Hamming code needs t >= 2");
    if (t > 16) throw PreconditionError("extended Hamming code needs t <= 16");
    const std::size_t n = std::size_t{1} << t;
    std::vector<std::uint32_t> cols(n);
    if (order) {
        if (order->size() != n) throw PreconditionError("column order must list all 2^t vectors");
        std::vector<bool> seen(n, false);
        for (auto v : *order) {
            if (v >= n || seen[v]) throw PreconditionError("column order must be a permutation of 0..2^t-1");
            seen[v] = true;
        }
        cols = *order;
    } else {
        std::iota(cols.begin(), cols.end(), 0u);
    }
    const auto f = Field::make(2, 1);
    MatrixGF H(f, t + 1, n);
    std::vector<std::size_t> where(n);
    for (std::size_t c = 0; c < n; ++c) {
        H(0, c) = 1;
        for (unsigned b = 0; b < t; ++b) H(b + 1, c) = (cols[c] >> b) & 1;
        where[cols[c]] = c;
    }
    auto C = LinearCode::from_parity(H);
    // v = 0, 1, 2, 3 sum to zero
    std::vector<Elem> w(n, 0);
    for (std::uint32_t v = 0; v < 4; ++v) w[where[v]] = 1;
    return C.with_distance({4, contains(C, w) ? 4 : C.n(), "extended hamming", "witness"});
}

namespace detail {

inline constexpr std::array<std::uint32_t, 12> kGolayParity = {0x8ed, 0x1db, 0x3b5, 0x769, 0xed1, 0xda3,
                                                                0xb47, 0x68f, 0xd1d, 0xa3b, 0x477, 0xffe};

}  // namespace detail

/// Extended Golay [24, 12, 8]_2 with a locality-7 certificate of weight-8 dual words.
inline LocallyRepairableCode golay_ext() {
    const auto f = Field::make(2, 1);
    MatrixGF G(f, 12, 24);
    for (std::size_t i = 0; i < 12; ++i) {
        const std::uint32_t row = (1u << (23 - i)) | detail::kGolayParity[i];
        for (std::size_t c = 0; c < 24; ++c) G(i, c) = (row >> (23 - c)) & 1;
    }
    auto C = LinearCode::from_generator(G);
    if (!(G * G.transpose()).is_zero()) throw Error("stored Golay matrix is not self-orthogonal");
    const auto col = min_dependent_columns(C.H(), 8);
    if (!col.exact || col.weight != 8) throw Error("stored Golay matrix does not have distance 8");
    C = C.with_distance({8, 8, "column-search", "column-search"});
    auto found = find_locality(C, 7);
    if (found.status != SearchStatus::found) throw Error("Golay locality-7 cover not found");
    return {std::move(C), std::move(*found.certificate)};
}

/// Result of concatenation, keeping its parts for the weight probe.
struct Concatenation {
    LocallyRepairableCode code;
    LocallyRepairableCode inner;
    LinearCode outer;
    std::shared_ptr<const RelativeBasis> phi;

    /// phi: outer symbol -> inner codeword.
    std::vector<Elem> expand(Elem x) const {
        return encode(inner.code(), phi->coords(x));
    }
};

inline Concatenation concatenate(const LocallyRepairableCode& inner, const LinearCode& outer,
                                 std::optional<Elem> generator = std::nullopt) {
    const Field& fi = inner.field();
    const Field& fo = outer.field();
    const std::size_t n1 = inner.n(), k1 = inner.k(), n2 = outer.n(), k2 = outer.k();
    if (fo.p() != fi.p() || fo.m() != fi.m() * k1)
        throw PreconditionError("outer field must be an extension of the inner field of degree k1 = " + std::to_string(k1));
    auto phi = std::make_shared<const RelativeBasis>(fo, fi, generator);
    MatrixGF G(fi, k1 * k2, n1 * n2);
    for (std::size_t i = 0; i < k2; ++i)
        for (std::size_t l = 0; l < k1; ++l) {
            const std::size_t row = i * k1 + l;
            for (std::size_t j = 0; j < n2; ++j) {
                const Elem x = fo.mul(phi->basis()[l], outer.G()(i, j));
                const auto block = encode(inner.code(), phi->coords(x));
                for (std::size_t c = 0; c < n1; ++c) G(row, j * n1 + c) = block[c];
            }
        }
    if (rank(G) != k1 * k2) throw Error("concatenated generator is rank deficient");
    auto C = LinearCode::from_generator(G);
    C = C.with_distance(C.distance().with_lower(inner.distance().lower * outer.distance().lower, "concatenation"));
    LocalityCertificate cert;
    cert.r = inner.r();
    for (std::size_t j = 0; j < n2; ++j)
        for (const auto& w : inner.certificate().words) {
            std::vector<Elem> full(n1 * n2, 0);
            std::copy(w.begin(), w.end(), full.begin() + static_cast<std::ptrdiff_t>(j * n1));
            cert.words.push_back(std::move(full));
        }
    cert.disjoint = inner.certificate().disjoint;
    return {LocallyRepairableCode(std::move(C), std::move(cert)), inner, outer, std::move(phi)};
}

struct WeightWitness {
    std::size_t weight = 0;
    std::vector<Elem> word;
    std::string method;
};

/// Lightest concatenated image of a minimum-weight outer codeword (outer MDS),
/// else the random information-set probe.
inline WeightWitness concat_weight_probe(const Concatenation& cc, std::size_t fallback_iterations = 2000,
                                         std::uint64_t seed = 1) {
    const auto& outer = cc.outer;
    const std::size_t n2 = outer.n(), k2 = outer.k(), n1 = cc.inner.n();
    const std::size_t d2 = n2 - k2 + 1;
    const bool mds = outer.distance().lower == d2;
    if (!mds) {
        WeightWitness w;
        w.weight = distance_upper_probe(cc.code.code(), fallback_iterations, seed);
        w.method = "probe";
        return w;
    }
    const Field& fo = outer.field();
    std::vector<std::size_t> wt(fo.q());
    for (Elem x = 0; x < fo.q(); ++x) wt[x] = hamming_weight(cc.expand(x));
    WeightWitness best;
    best.weight = cc.code.n() + 1;
    best.method = "outer minimum-weight supports";
    std::vector<std::size_t> S(d2);
    std::iota(S.begin(), S.end(), 0);
    while (true) {
        // the codeword vanishing off S is unique up to scalars: left kernel of G restricted to the complement
        std::vector<std::size_t> rest;
        for (std::size_t j = 0, s = 0; j < n2; ++j) {
            if (s < d2 && S[s] == j) {
                ++s;
                continue;
            }
            rest.push_back(j);
        }
        const auto K = nullspace(outer.G().select_columns(rest).transpose());
        if (K.rows() >= 1) {
            const auto c = outer.G().left_multiply(K.row(0));
            for (Elem lam = 1; lam < fo.q(); ++lam) {
                std::size_t w = 0;
                for (auto j : S) w += wt[fo.mul(lam, c[j])];
                if (w < best.weight) {
                    best.weight = w;
                    best.word.assign(cc.code.n(), 0);
                    for (std::size_t j = 0; j < n2; ++j) {
                        const auto img = cc.expand(fo.mul(lam, c[j]));
                        std::copy(img.begin(), img.end(), best.word.begin() + static_cast<std::ptrdiff_t>(j * n1));
                    }
                }
            }
        }
        std::size_t i = d2;
        while (i-- > 0 && S[i] == n2 - d2 + i) {}
        if (i == static_cast<std::size_t>(-1)) break;
        ++S[i];
        for (std::size_t j = i + 1; j < d2; ++j) S[j] = S[j - 1] + 1;
    }
    if (best.word.empty() || !contains(cc.code.code(), best.word)) throw Error("weight probe produced a non-codeword");
    return best;
}

/// Rule (i): append an always-zero coordinate with recovery set {n+1}.
inline LocallyRepairableCode extend_zero(const LocallyRepairableCode& L) {
    const auto& C = L.code();
    const std::size_t n = C.n();
    MatrixGF G(C.field(), C.k(), n + 1);
    for (std::size_t r = 0; r < C.k(); ++r)
        for (std::size_t c = 0; c < n; ++c) G(r, c) = C.G()(r, c);
    MatrixGF H(C.field(), C.H().rows() + 1, n + 1);
    for (std::size_t r = 0; r < C.H().rows(); ++r)
        for (std::size_t c = 0; c < n; ++c) H(r, c) = C.H()(r, c);
    H(C.H().rows(), n) = 1;
    auto D = LinearCode::from_pair(G, H, C.distance());
    LocalityCertificate cert = L.certificate();
    for (auto& w : cert.words) w.push_back(0);
    cert.words.push_back(detail::unit(n + 1, n));
    return {std::move(D), std::move(cert)};
}

struct PunctureResult {
    LocallyRepairableCode code;
    std::size_t column;
    /// The minimum-weight codeword restricted to the remaining positions, when one was known.
    std::optional<std::vector<Elem>> witness;
};

/// Rule (ii): delete the last column of H that keeps its rank and avoids the
/// support of `witness` (a minimum-weight codeword, found if not supplied).
inline PunctureResult puncture_parity(const LocallyRepairableCode& L, std::optional<std::vector<Elem>> witness = std::nullopt,
                                      const CertifyBudget& budget = {}) {
    const auto& C = L.code();
    const std::size_t n = C.n();
    if (n < 2) throw PreconditionError("puncture needs n >= 2");
    if (witness && (witness->size() != n || !contains(C, *witness) || hamming_weight(*witness) == 0))
        throw PreconditionError("supplied witness is not a nonzero codeword");
    if (!witness) witness = min_weight_codeword(C, budget);
    std::vector<bool> avoid(n, false);
    if (witness)
        for (std::size_t i = 0; i < n; ++i) avoid[i] = (*witness)[i] != 0;
    const std::size_t target = C.H().rows();
    for (std::size_t j = n; j-- > 0;) {
        if (avoid[j]) continue;
        const std::vector<std::size_t> drop{j};
        const auto H1 = C.H().drop_columns(drop);
        if (rank(H1) != target) continue;
        auto D = LinearCode::from_parity(H1);
        DistanceKnowledge K{C.distance().lower, D.n(), C.distance().lower_by, "length"};
        std::optional<std::vector<Elem>> kept;
        if (witness) {
            std::vector<bool> mask(n, false);
            mask[j] = true;
            kept = detail::drop_positions(*witness, mask);
            K = K.with_upper(hamming_weight(*kept), "witness");
        }
        D = D.with_distance(K);
        std::vector<std::vector<Elem>> words;
        std::vector<bool> mask(n, false);
        mask[j] = true;
        for (const auto& w : L.certificate().words) words.push_back(detail::drop_positions(w, mask));
        return {LocallyRepairableCode(std::move(D), detail::tighten(n - 1, std::move(words))), j, std::move(kept)};
    }
    throw PreconditionError("no admissible column: every column is essential or in the dependency set");
}

/// Rule (iii): remove a whole recovery set of size t, keeping s of its positions
/// through the shortening step before puncturing them.
inline LocallyRepairableCode shorten_recovery(const LocallyRepairableCode& L, std::size_t t, std::size_t s) {
    const auto& C = L.code();
    const auto& cert = L.certificate();
    if (!cert.disjoint) throw PreconditionError("shorten_recovery needs disjoint recovery sets");
    if (s > t) throw PreconditionError("shorten_recovery needs 0 <= s <= t");
    std::optional<std::size_t> pick;
    for (std::size_t j = 0; j < cert.words.size() && !pick; ++j)
        if (hamming_weight(cert.words[j]) == t) pick = j;
    if (!pick) throw PreconditionError("no recovery set of size " + std::to_string(t));
    if (t >= C.n()) throw PreconditionError("cannot remove every coordinate");
    const auto R = support(cert.words[*pick]);
    // shorten: drop the last t-s columns of the set from H
    std::vector<std::size_t> shortened(R.end() - static_cast<std::ptrdiff_t>(t - s), R.end());
    const MatrixGF H2 = C.H().drop_columns(shortened);
    const MatrixGF G2 = nullspace(H2);
    if (G2.rows() == 0) throw TrivialCodeError("shortened code is {0}");
    // puncture: remaining s positions of the set, re-indexed after the first deletion
    std::vector<bool> removed(C.n(), false);
    for (auto i : R) removed[i] = true;
    std::vector<std::size_t> map2;  // position in C2 -> position in C
    for (std::size_t i = 0; i < C.n(); ++i)
        if (std::find(shortened.begin(), shortened.end(), i) == shortened.end()) map2.push_back(i);
    std::vector<std::size_t> punct;
    for (std::size_t j = 0; j < map2.size(); ++j)
        if (removed[map2[j]]) punct.push_back(j);
    const MatrixGF G3 = G2.drop_columns(punct);
    auto D = LinearCode::from_generator(G3);
    const std::size_t lower = C.distance().lower > s ? C.distance().lower - s : 1;
    D = D.with_distance(D.distance().with_lower(lower, "shorten/puncture"));
    std::vector<std::vector<Elem>> words;
    for (std::size_t j = 0; j < cert.words.size(); ++j)
        if (j != *pick) words.push_back(detail::drop_positions(cert.words[j], removed));
    return {std::move(D), detail::tighten(D.n(), std::move(words))};
}

/// Parity-check matrix of the lengthened code: one indicator row per block
/// above H0, the base columns of each block followed by its added column.
/// `order[p]` is the base column placed in slot p.
inline MatrixGF lengthened_parity(const Field& f, const MatrixGF& H0, std::size_t n, std::size_t r,
                                  const std::vector<std::size_t>& order) {
    if (H0.rows() && H0.cols() != n) throw PreconditionError("base parity-check length mismatch");
    if (order.size() != n) throw PreconditionError("order must list every base column");
    const BlockLayout L(n, r);
    const std::size_t nb = L.blocks(), rows = nb + H0.rows();
    MatrixGF H(f, rows, L.lengthened());
    for (std::size_t b = 0; b < nb; ++b) {
        for (std::size_t j = 0; j < L.block_size(b); ++j) {
            const std::size_t col = L.column(b, j), src = order[L.base_begin(b) + j];
            H(b, col) = 1;
            for (std::size_t i = 0; i < H0.rows(); ++i) H(nb + i, col) = H0(i, src);
        }
        H(b, L.new_column(b)) = 1;
    }
    return H;
}

inline std::vector<std::size_t> identity_order(std::size_t n) {
    std::vector<std::size_t> o(n);
    std::iota(o.begin(), o.end(), 0);
    return o;
}

inline LocalityCertificate indicator_certificate(const MatrixGF& H, const BlockLayout& L) {
    LocalityCertificate cert;
    cert.r = L.r;
    cert.disjoint = true;
    for (std::size_t b = 0; b < L.blocks(); ++b) {
        const auto row = H.row(b);
        cert.words.emplace_back(row.begin(), row.end());
    }
    return cert;
}

/// Lengthening: [n + ceil(n/r), k, >= d; r].
inline LocallyRepairableCode lengthen(const LinearCode& base, std::size_t r,
                                      std::optional<std::vector<std::size_t>> order = std::nullopt) {
    const std::size_t n = base.n();
    if (r < 1 || r > n) throw PreconditionError("lengthen needs 1 <= r <= n");
    const BlockLayout L(n, r);
    const auto H = lengthened_parity(base.field(), base.H(), n, r, order ? *order : identity_order(n));
    auto C = LinearCode::from_parity(H);
    if (C.k() != base.k()) throw Error("lengthened parity-check rows are dependent");
    C = detail::with_lower(std::move(C), base.distance().lower, "lengthening");
    return {std::move(C), indicator_certificate(H, L)};
}

namespace detail {

// r = 2: pair the 2^t vectors so that the XORs of the pairs are pairwise distinct.
inline std::optional<std::vector<std::uint32_t>> distinct_difference_pairs(unsigned t, std::uint64_t seed) {
    const std::uint32_t n = 1u << t;
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> out;
    std::vector<bool> used(n, false), diff(n, false);
    for (std::uint32_t a = 0; a < n; ++a) {
        if (used[a]) continue;
        std::vector<std::uint32_t> cands;
        for (std::uint32_t b = a + 1; b < n; ++b)
            if (!used[b] && !diff[a ^ b]) cands.push_back(b);
        if (cands.empty()) return std::nullopt;
        const std::uint32_t b = seed == 0 ? cands.front() : cands[rng() % cands.size()];
        used[a] = used[b] = true;
        diff[a ^ b] = true;
        out.push_back(a);
        out.push_back(b);
    }
    return out;
}

// r = 3, t even: cosets of GF(4)* inside GF(2^t), then {0}.
inline std::vector<std::uint32_t> gf4_coset_triples(unsigned t) {
    const auto f = Field::make(2, t);
    const Elem w = f.pow(f.primitive(), static_cast<long long>((f.q() - 1) / 3));
    std::vector<bool> used(f.q(), false);
    std::vector<std::uint32_t> out;
    for (Elem x = 1; x < f.q(); ++x) {
        if (used[x]) continue;
        std::array<Elem, 3> tri{x, f.mul(w, x), f.mul(f.mul(w, w), x)};
        std::sort(tri.begin(), tri.end());
        for (auto v : tri) {
            used[v] = true;
            out.push_back(v);
        }
    }
    out.push_back(0);
    return out;
}

// r = 3, t odd: greedy triples whose pair sums are fresh; leftovers fill the tail.
inline std::vector<std::uint32_t> greedy_triples(unsigned t) {
    const std::uint32_t n = 1u << t;
    const BlockLayout L(n, 3);
    std::vector<bool> used(n, false), diff(n, false);
    std::vector<std::uint32_t> out;
    std::size_t full_blocks = L.m;
    for (std::uint32_t a = 0; a < n && full_blocks > 0; ++a) {
        if (used[a]) continue;
        bool placed = false;
        for (std::uint32_t b = a + 1; b < n && !placed; ++b) {
            if (used[b] || diff[a ^ b]) continue;
            for (std::uint32_t c = b + 1; c < n && !placed; ++c) {
                if (used[c] || diff[a ^ c] || diff[b ^ c]) continue;
                used[a] = used[b] = used[c] = true;
                diff[a ^ b] = diff[a ^ c] = diff[b ^ c] = true;
                out.insert(out.end(), {a, b, c});
                --full_blocks;
                placed = true;
            }
        }
    }
    for (std::uint32_t v = 0; v < n; ++v)
        if (!used[v]) out.push_back(v);
    return out;
}

}  // namespace detail

/// Column order (vectors of GF(2)^t by block) for lengthening the extended Hamming code.
inline std::vector<std::uint32_t> hamming_block_order(unsigned t, std::size_t r) {
    if (r == 2) {
        for (std::uint64_t attempt = 0; attempt < 1000; ++attempt)
            if (auto o = detail::distinct_difference_pairs(t, attempt)) return *o;
        throw Error("no distinct-difference pairing found");
    }
    if (r == 3) return t % 2 == 0 ? detail::gf4_coset_triples(t) : detail::greedy_triples(t);
    std::vector<std::uint32_t> o(std::size_t{1} << t);
    std::iota(o.begin(), o.end(), 0u);
    return o;
}

struct HammingStructure {
    bool distance5 = false;
    /// Four base slots whose columns sum to zero when the check fails.
    std::vector<std::size_t> collision;
};

/// For the lengthened extended Hamming code every dependency of size <= 4 is
/// a pair of base columns in each of two blocks with equal sums (or four base
/// columns of one block). Checks that none exists.
inline HammingStructure check_hamming_lengthening(const std::vector<std::uint32_t>& order, std::size_t r) {
    const std::size_t n = order.size();
    const BlockLayout L(n, r);
    std::vector<std::int64_t> owner(n, -1);  // pair sum -> block
    std::vector<std::pair<std::size_t, std::size_t>> pair_of(n);
    HammingStructure res;
    for (std::size_t b = 0; b < L.blocks(); ++b) {
        const std::size_t beg = L.base_begin(b), sz = L.block_size(b);
        for (std::size_t i = 0; i < sz; ++i)
            for (std::size_t j = i + 1; j < sz; ++j) {
                const auto x = order[beg + i] ^ order[beg + j];
                if (owner[x] >= 0 && static_cast<std::size_t>(owner[x]) != b) {
                    res.collision = {pair_of[x].first, pair_of[x].second, beg + i, beg + j};
                    return res;
                }
                owner[x] = static_cast<std::int64_t>(b);
                pair_of[x] = {beg + i, beg + j};
            }
        for (std::size_t i = 0; i < sz; ++i)
            for (std::size_t j = i + 1; j < sz; ++j)
                for (std::size_t k = j + 1; k < sz; ++k)
                    for (std::size_t l = k + 1; l < sz; ++l)
                        if ((order[beg + i] ^ order[beg + j] ^ order[beg + k] ^ order[beg + l]) == 0) {
                            res.collision = {beg + i, beg + j, beg + k, beg + l};
                            return res;
                        }
    }
    res.distance5 = true;
    return res;
}

/// Lengthened extended Hamming code for r in {2, 3}.
inline LocallyRepairableCode lengthen_hamming(unsigned t, std::size_t r) {
    if (t < 3) throw PreconditionError("lengthen_hamming needs t >= 3");
    if (r != 2 && r != 3) throw PreconditionError("lengthen_hamming needs r in {2, 3}");
    const auto order = hamming_block_order(t, r);
    const auto base = hamming_ext(t, order);
    auto L = lengthen(base, r);
    const auto chk = check_hamming_lengthening(order, r);
    if (chk.distance5) return L.with_distance(L.distance().with_lower(5, "block structure"));
    const BlockLayout layout(base.n(), r);
    std::vector<Elem> w(L.n(), 0);
    for (auto slot : chk.collision) w[layout.column(slot / r, slot % r)] = 1;
    if (!contains(L.code(), w)) throw Error("structural collision is not a codeword");
    return L.with_distance(L.distance().with_upper(4, "block collision"));
}

/// Lengthened Vandermonde code: [n + ceil(n/r), n - d + 1, >= d + 1; r]_q.
inline LocallyRepairableCode lengthen_rs(const Field& f, std::size_t n, std::size_t r, std::size_t d) {
    if (n < 1 || n + 1 > f.q()) throw PreconditionError("lengthen_rs needs 1 <= n <= q-1");
    if (r < 1 || r > n) throw PreconditionError("lengthen_rs needs 1 <= r <= n");
    const BlockLayout L(n, r);
    if (d < 1 || d > L.s) throw PreconditionError("lengthen_rs needs 1 <= d <= s = " + std::to_string(L.s));
    MatrixGF H0(f, d - 1, n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto alpha = static_cast<Elem>(j + 1);
        Elem x = alpha;
        for (std::size_t e = 0; e + 1 < d; ++e) {
            H0(e, j) = x;
            x = f.mul(x, alpha);
        }
    }
    const auto H = lengthened_parity(f, H0, n, r, identity_order(n));
    auto C = LinearCode::from_parity(H);
    if (C.k() != n - d + 1) throw Error("lengthened Vandermonde rows are dependent");
    C = detail::with_lower(std::move(C), d + 1, "vandermonde lengthening");
    return {std::move(C), indicator_certificate(H, L)};
}

}  // namespace lrc
