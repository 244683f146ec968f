#pragma once

// Locality: certificates of low-weight dual words, discovery, single-erasure
// repair and the finite-length optimality verdicts.

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lrc/code.hpp"

namespace lrc {

struct LocalityCertificate {
    std::size_t r = 0;
    bool disjoint = false;
    std::vector<std::vector<Elem>> words;
};

struct CertificateCheck {
    bool ok = true;
    std::string violation;
    explicit operator bool() const { return ok; }
};

inline std::vector<std::size_t> support(std::span<const Elem> w) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i]) s.push_back(i);
    return s;
}

/// True iff the word supports pairwise disjoint and together cover [n].
inline bool supports_partition(std::size_t n, const std::vector<std::vector<Elem>>& words) {
    std::vector<int> hits(n, 0);
    for (const auto& w : words)
        for (std::size_t i = 0; i < n && i < w.size(); ++i)
            if (w[i]) ++hits[i];
    return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

inline CertificateCheck verify_certificate(const LinearCode& C, const LocalityCertificate& cert) {
    const std::size_t n = C.n();
    auto fail = [](std::string why) { return CertificateCheck{false, std::move(why)}; };
    if (cert.r < 1) return fail("locality r must be >= 1");
    std::vector<bool> covered(n, false);
    for (std::size_t j = 0; j < cert.words.size(); ++j) {
        const auto& w = cert.words[j];
        const std::string tag = "word " + std::to_string(j) + ": ";
        if (w.size() != n) return fail(tag + "length " + std::to_string(w.size()) + " != n = " + std::to_string(n));
        for (auto v : w)
            if (!C.field().contains(v)) return fail(tag + "symbol outside the field");
        const auto wt = hamming_weight(w);
        if (wt == 0) return fail(tag + "zero word");
        if (wt > cert.r + 1)
            return fail(tag + "weight " + std::to_string(wt) + " exceeds r+1 = " + std::to_string(cert.r + 1));
        const auto syn = C.G().apply(w);
        if (std::any_of(syn.begin(), syn.end(), [](Elem e) { return e != 0; })) return fail(tag + "not a dual codeword");
        for (std::size_t i = 0; i < n; ++i)
            if (w[i]) covered[i] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!covered[i]) return fail("coordinate " + std::to_string(i) + " is not covered");
    if (cert.disjoint && !supports_partition(n, cert.words)) return fail("supports are not pairwise disjoint");
    return {};
}

/// Singleton-type bound n - k - ceil(k/r) + 2.
inline long long singleton_type_bound(long long n, long long k, long long r) {
    if (r < 1 || k < 1 || n < k) throw PreconditionError("singleton-type bound needs 1 <= r and 1 <= k <= n");
    return n - k - (k + r - 1) / r + 2;
}

inline long long singleton_defect(long long n, long long k, long long d, long long r) {
    return singleton_type_bound(n, k, r) - d;
}

/// An LRC whose certificate has been checked against its code.
class LocallyRepairableCode {
public:
    LocallyRepairableCode(LinearCode code, LocalityCertificate cert) : code_(std::move(code)), cert_(std::move(cert)) {
        if (const auto chk = verify_certificate(code_, cert_); !chk) throw InvalidCertificate(chk.violation);
        if (code_.distance().upper <= 1 && cert_.r < code_.n())
            throw PreconditionError("a locally repairable code with minimum distance 1 cannot exist");
        // every covered coordinate rules out weight-1 codewords
        const auto bound = static_cast<std::size_t>(
            std::max<long long>(1, singleton_type_bound(static_cast<long long>(code_.n()), static_cast<long long>(code_.k()),
                                                        static_cast<long long>(cert_.r))));
        code_ = code_.with_distance(code_.distance().with_lower(2, "locality").with_upper(bound, "singleton-type"));
    }

    const LinearCode& code() const { return code_; }
    const LocalityCertificate& certificate() const { return cert_; }
    std::size_t r() const { return cert_.r; }
    std::size_t n() const { return code_.n(); }
    std::size_t k() const { return code_.k(); }
    const Field& field() const { return code_.field(); }
    const DistanceKnowledge& distance() const { return code_.distance(); }

    LocallyRepairableCode with_distance(const DistanceKnowledge& d) const {
        LocallyRepairableCode out = *this;
        out.code_ = code_.with_distance(d);
        return out;
    }

    std::string params() const {
        return "[" + std::to_string(n()) + "," + std::to_string(k()) + "," + distance().to_string() + ";" +
               std::to_string(r()) + "]_" + std::to_string(field().q());
    }

private:
    LinearCode code_;
    LocalityCertificate cert_;
};

enum class Verdict { yes, no, not_applicable, unknown };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        case Verdict::not_applicable: return "not applicable";
        case Verdict::unknown: return "unknown";
    }
    return "?";
}

inline Verdict is_singleton_optimal(const LocallyRepairableCode& L) {
    const auto bound = singleton_type_bound(static_cast<long long>(L.n()), static_cast<long long>(L.k()),
                                            static_cast<long long>(L.r()));
    const auto& d = L.distance();
    if (static_cast<long long>(d.lower) == bound) return Verdict::yes;
    if (static_cast<long long>(d.upper) < bound) return Verdict::no;
    return Verdict::unknown;
}

/// Locality not binding: r >= k reduces the bound to the classical one.
inline bool locality_binding(const LocallyRepairableCode& L) { return L.r() < L.k(); }

/// floor( rn/(r+1) - min{ log2(1 + rn/2), rn/((r+1)(r+2)) } ), computed exactly.
inline long long azd_bound(long long n, long long r) {
    if (r < 2 || 2 * r + 4 > n) throw PreconditionError("AZD bound needs 2 <= r <= n/2 - 2");
    using boost::multiprecision::cpp_int;
    const long long rn = r * n;
    // second term: rn/(r+1) - rn/((r+1)(r+2)) = rn/(r+2)
    const long long via_ratio = rn / (r + 2);
    // first term: largest K with K <= rn/(r+1) + 1 - log2(2 + rn),
    // i.e. (2 + rn)^(r+1) <= 2^(rn + (r+1)(1-K))
    const cpp_int lhs = boost::multiprecision::pow(cpp_int(2 + rn), static_cast<unsigned>(r + 1));
    auto holds = [&](long long K) {
        const long long e = rn + (r + 1) * (1 - K);
        if (e < 0) return false;
        return lhs <= (cpp_int(1) << static_cast<unsigned>(e));
    };
    long long K = rn / (r + 1) + 1;
    while (!holds(K)) --K;
    return std::max(K, via_ratio);
}

inline Verdict is_dimension_optimal(const LocallyRepairableCode& L) {
    const auto n = static_cast<long long>(L.n()), r = static_cast<long long>(L.r());
    if (L.field().q() != 2 || L.distance().lower < 5 || r < 2 || 2 * r + 4 > n) return Verdict::not_applicable;
    return static_cast<long long>(L.k()) == azd_bound(n, r) ? Verdict::yes : Verdict::no;
}

using KoptOracle = std::function<long long(long long n, long long d)>;

inline long long singleton_kopt(long long n, long long d) { return std::max<long long>(0, n - d + 1); }

/// min over t >= 1 with n - (r+1)t >= d of tr + kopt(n - (r+1)t, d); t = 0 when no t >= 1 qualifies.
inline long long cm_bound(long long n, long long d, long long r, const KoptOracle& kopt = singleton_kopt) {
    if (d < 2) throw PreconditionError("C-M bound needs d >= 2");
    if (r < 1 || n < 1) throw PreconditionError("C-M bound needs n, r >= 1");
    long long best = std::numeric_limits<long long>::max();
    for (long long t = 1; n - (r + 1) * t >= d; ++t) best = std::min(best, t * r + kopt(n - (r + 1) * t, d));
    if (best == std::numeric_limits<long long>::max()) best = kopt(n, d);
    return best;
}

enum class SearchStatus { found, none, inconclusive };

struct LocalitySearch {
    SearchStatus status = SearchStatus::inconclusive;
    std::optional<LocalityCertificate> certificate;
    std::string detail;
};

struct LocalityBudget {
    std::uint64_t dual_codewords = std::uint64_t{1} << 24;
    std::uint64_t subsets = kDefaultSubsetBudget;
    unsigned workers = 1;
};

namespace detail {

// Lightest word of ker(G_T) that is nonzero at position `at`, if any.
inline std::optional<std::vector<Elem>> dual_word_in(const LinearCode& C, std::span<const std::size_t> T, std::size_t at) {
    const auto K = nullspace(C.G().select_columns(T));
    std::optional<std::vector<Elem>> best;
    std::size_t best_w = 0;
    const auto pos = static_cast<std::size_t>(std::find(T.begin(), T.end(), at) - T.begin());
    for (std::size_t b = 0; b < K.rows(); ++b) {
        if (!K(b, pos)) continue;
        const auto w = hamming_weight(K.row(b));
        if (!best || w < best_w) {
            std::vector<Elem> full(C.n(), 0);
            for (std::size_t j = 0; j < T.size(); ++j) full[T[j]] = K(b, j);
            best = std::move(full);
            best_w = w;
        }
    }
    return best;
}

struct CoordinateScan {
    std::optional<std::vector<Elem>> word;
    bool exhausted = false;  // every (r+1)-set through the coordinate was examined
};

// Scan size-min(r+1,n) supersets of {i} in lexicographic order.
inline CoordinateScan scan_coordinate(const LinearCode& C, std::size_t r, std::size_t i, std::uint64_t& left) {
    const std::size_t n = C.n(), size = std::min(r + 1, n);
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < n; ++j)
        if (j != i) others.push_back(j);
    const std::size_t pick = size - 1;
    std::vector<std::size_t> idx(pick);
    for (std::size_t j = 0; j < pick; ++j) idx[j] = j;
    std::vector<std::size_t> T(size);
    while (true) {
        if (left == 0) return {std::nullopt, false};
        --left;
        T[0] = i;
        for (std::size_t j = 0; j < pick; ++j) T[j + 1] = others[idx[j]];
        std::sort(T.begin(), T.end());
        if (auto w = dual_word_in(C, T, i)) return {std::move(w), true};
        std::size_t j = pick;
        while (j-- > 0 && idx[j] == others.size() - pick + j) {}
        if (j == static_cast<std::size_t>(-1)) return {std::nullopt, true};
        ++idx[j];
        for (std::size_t l = j + 1; l < pick; ++l) idx[l] = idx[l - 1] + 1;
    }
}

// Greedy cover: for each uncovered coordinate in order take its candidate word.
inline LocalityCertificate greedy_cover(std::size_t n, std::size_t r, const std::vector<std::vector<Elem>>& per_coord) {
    LocalityCertificate cert;
    cert.r = r;
    std::vector<bool> covered(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (covered[i]) continue;
        cert.words.push_back(per_coord[i]);
        for (std::size_t j = 0; j < n; ++j)
            if (per_coord[i][j]) covered[j] = true;
    }
    cert.disjoint = supports_partition(n, cert.words);
    return cert;
}

}  // namespace detail

/// Search for dual words of weight <= r+1 covering every coordinate.
inline LocalitySearch find_locality(const LinearCode& C, std::size_t r, const LocalityBudget& budget = {}) {
    if (r < 1) throw PreconditionError("locality r must be >= 1");
    const std::size_t n = C.n();
    const LinearCode D = dual(C);
    if (codeword_count(D) <= budget.dual_codewords) {
        // full dual enumeration, lightest covering word per coordinate
        const Field& f = C.field();
        const std::size_t kd = D.k();
        std::vector<std::vector<Elem>> best(n);
        std::vector<std::size_t> best_w(n, n + 1);
        std::vector<Elem> msg(kd, 0);
        while (true) {
            std::size_t i = 0;
            while (i < kd && ++msg[i] == f.q()) msg[i++] = 0;
            if (i == kd) break;
            // only words whose leading nonzero message symbol is 1 (one per scalar class)
            std::size_t lead = kd;
            while (lead-- > 0 && msg[lead] == 0) {}
            if (msg[lead] != 1) continue;
            const auto w = D.G().left_multiply(msg);
            const auto wt = hamming_weight(w);
            if (wt > r + 1) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (w[j] && wt < best_w[j]) {
                    best_w[j] = wt;
                    best[j] = w;
                }
        }
        for (std::size_t j = 0; j < n; ++j)
            if (best[j].empty())
                return {SearchStatus::none, std::nullopt,
                        "no dual word of weight <= " + std::to_string(r + 1) + " covers coordinate " + std::to_string(j)};
        return {SearchStatus::found, detail::greedy_cover(n, r, best), "dual enumeration"};
    }

    std::vector<detail::CoordinateScan> scans(n);
    const unsigned workers = std::max(1u, budget.workers);
    if (workers == 1) {
        // lazy: only coordinates left uncovered by earlier picks are scanned
        std::uint64_t left = budget.subsets;
        std::vector<bool> covered(n, false);
        LocalityCertificate cert;
        cert.r = r;
        for (std::size_t i = 0; i < n; ++i) {
            if (covered[i]) continue;
            auto sc = detail::scan_coordinate(C, r, i, left);
            if (!sc.word) {
                if (sc.exhausted)
                    return {SearchStatus::none, std::nullopt,
                            "no dual word of weight <= " + std::to_string(r + 1) + " covers coordinate " + std::to_string(i)};
                return {SearchStatus::inconclusive, std::nullopt, "subset budget exhausted at coordinate " + std::to_string(i)};
            }
            for (std::size_t j = 0; j < n; ++j)
                if ((*sc.word)[j]) covered[j] = true;
            cert.words.push_back(std::move(*sc.word));
        }
        cert.disjoint = supports_partition(n, cert.words);
        return {SearchStatus::found, std::move(cert), "support scan"};
    }
    // parallel: every coordinate scanned independently, merged in coordinate order
    std::vector<std::thread> pool;
    const std::uint64_t share = std::max<std::uint64_t>(1, budget.subsets / n);
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += workers) {
                std::uint64_t left = share;
                scans[i] = detail::scan_coordinate(C, r, i, left);
            }
        });
    for (auto& th : pool) th.join();
    std::vector<bool> covered(n, false);
    LocalityCertificate cert;
    cert.r = r;
    for (std::size_t i = 0; i < n; ++i) {
        if (covered[i]) continue;
        if (!scans[i].word) {
            if (scans[i].exhausted)
                return {SearchStatus::none, std::nullopt,
                        "no dual word of weight <= " + std::to_string(r + 1) + " covers coordinate " + std::to_string(i)};
            return {SearchStatus::inconclusive, std::nullopt, "subset budget exhausted at coordinate " + std::to_string(i)};
        }
        for (std::size_t j = 0; j < n; ++j)
            if ((*scans[i].word)[j]) covered[j] = true;
        cert.words.push_back(*scans[i].word);
    }
    cert.disjoint = supports_partition(n, cert.words);
    return {SearchStatus::found, std::move(cert), "support scan"};
}

struct RepairResult {
    Elem value = 0;
    std::size_t word_index = 0;
    std::vector<std::size_t> recovery_set;
    std::string relation;
};

/// Recover position i of `word` from the certificate word covering i with the
/// smallest first support index.
inline RepairResult repair_erasure(const LocallyRepairableCode& L, std::span<const Elem> word, std::size_t i) {
    const Field& f = L.field();
    if (word.size() != L.n()) throw PreconditionError("word length must equal n");
    if (i >= L.n()) throw PreconditionError("erased position out of range");
    const auto& words = L.certificate().words;
    std::optional<std::size_t> pick;
    std::size_t pick_first = L.n();
    for (std::size_t j = 0; j < words.size(); ++j) {
        if (!words[j][i]) continue;
        const auto first = support(words[j]).front();
        if (first < pick_first) {
            pick = j;
            pick_first = first;
        }
    }
    if (!pick) throw InvalidCertificate("no certificate word covers position " + std::to_string(i));
    const auto& u = words[*pick];
    Elem acc = 0;
    RepairResult res;
    res.word_index = *pick;
    std::string sum;
    for (std::size_t j = 0; j < L.n(); ++j) {
        if (!u[j]) continue;
        res.recovery_set.push_back(j);
        if (j == i) continue;
        if (!f.contains(word[j])) throw PreconditionError("symbol outside the field");
        acc = f.add(acc, f.mul(u[j], word[j]));
        if (!sum.empty()) sum += " + ";
        sum += (u[j] == 1 ? "" : std::to_string(u[j]) + "*") + "c" + std::to_string(j);
    }
    const Elem coeff = f.neg(f.inv(u[i]));
    res.value = f.mul(coeff, acc);
    res.relation = "c" + std::to_string(i) + " = " + (coeff == 1 ? "" : std::to_string(coeff) + "*") + "(" +
                   (sum.empty() ? "0" : sum) + ") = " + std::to_string(res.value);
    std::vector<Elem> full(word.begin(), word.end());
    full[i] = res.value;
    if (!contains(L.code(), full)) throw InconsistentWord("word does not extend to a codeword");
    return res;
}

}  // namespace lrc
