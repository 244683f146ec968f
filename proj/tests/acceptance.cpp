// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "lrc/bounds.hpp"
#include "lrc/tables.hpp"
#include "oracles.hpp"

using namespace lrc;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        pass = false;
        detail += (detail.empty() ? "" : "; ") + why;
    }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

CertifyBudget budget() {
    CertifyBudget b;
    b.workers = workers();
    return b;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// add/mul tables built from the schoolbook field, independent of lrc::Field
struct Tables {
    std::uint32_t q;
    std::vector<std::uint32_t> add, mul;
    explicit Tables(const Field& f) : q(f.q()), add(q * q), mul(q * q) {
        const oracle::NaiveField nf(f.p(), f.m(), f.modulus());
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b) {
                add[a * q + b] = nf.add(a, b);
                mul[a * q + b] = nf.mul(a, b);
            }
    }
};

// calls fn on every nonzero vector of the row space of M
void for_each_word(const Tables& T, const std::vector<std::vector<Elem>>& M,
                   const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
    const std::size_t k = M.size(), n = M.empty() ? 0 : M[0].size();
    std::vector<std::uint32_t> msg(k, 0), w(n);
    while (true) {
        std::size_t i = 0;
        while (i < k && ++msg[i] == T.q) msg[i++] = 0;
        if (i == k) return;
        std::fill(w.begin(), w.end(), 0);
        for (std::size_t r = 0; r < k; ++r)
            if (msg[r])
                for (std::size_t c = 0; c < n; ++c) w[c] = T.add[w[c] * T.q + T.mul[msg[r] * T.q + M[r][c]]];
        fn(w);
    }
}

std::size_t brute_min_weight(const Tables& T, const std::vector<std::vector<Elem>>& G) {
    std::size_t best = G[0].size() + 1;
    for_each_word(T, G, [&](const std::vector<std::uint32_t>& w) {
        best = std::min<std::size_t>(best, std::count_if(w.begin(), w.end(), [](auto x) { return x != 0; }));
    });
    return best;
}

// for each position, the lightest nonzero dual word covering it (n+1 if none)
std::vector<std::size_t> lightest_cover(const Tables& T, const LinearCode& C) {
    std::vector<std::size_t> best(C.n(), C.n() + 1);
    if (C.H().rows() == 0) return best;
    for_each_word(T, C.H().to_rows(), [&](const std::vector<std::uint32_t>& w) {
        const auto wt = static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](auto x) { return x != 0; }));
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i]) best[i] = std::min(best[i], wt);
    });
    return best;
}

// rank by the schoolbook tables
std::size_t brute_rank(const Tables& T, std::vector<std::vector<std::uint32_t>> M) {
    auto inv = [&](std::uint32_t a) {
        for (std::uint32_t b = 1; b < T.q; ++b)
            if (T.mul[a * T.q + b] == 1) return b;
        return 0u;
    };
    auto neg = [&](std::uint32_t a) {
        for (std::uint32_t b = 0; b < T.q; ++b)
            if (T.add[a * T.q + b] == 0) return b;
        return 0u;
    };
    std::size_t r = 0;
    const std::size_t cols = M.empty() ? 0 : M[0].size();
    for (std::size_t c = 0; c < cols && r < M.size(); ++c) {
        std::size_t piv = r;
        while (piv < M.size() && M[piv][c] == 0) ++piv;
        if (piv == M.size()) continue;
        std::swap(M[r], M[piv]);
        const auto iv = inv(M[r][c]);
        for (auto& v : M[r]) v = T.mul[v * T.q + iv];
        for (std::size_t i = 0; i < M.size(); ++i) {
            if (i == r || M[i][c] == 0) continue;
            const auto s = neg(M[i][c]);
            for (std::size_t j = 0; j < cols; ++j) M[i][j] = T.add[M[i][j] * T.q + T.mul[s * T.q + M[r][j]]];
        }
        ++r;
    }
    return r;
}

bool next_subset(std::vector<std::size_t>& s, std::size_t n) {
    const std::size_t k = s.size();
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
    return true;
}

// every d columns of H independent, by enumerating all d-subsets
bool brute_d_independent(const Tables& T, const MatrixGF& H, std::size_t d) {
    std::vector<std::size_t> s(d);
    for (std::size_t i = 0; i < d; ++i) s[i] = i;
    do {
        std::vector<std::vector<std::uint32_t>> cols;
        for (auto c : s) {
            std::vector<std::uint32_t> col(H.rows());
            for (std::size_t r = 0; r < H.rows(); ++r) col[r] = H(r, c);
            cols.push_back(col);
        }
        if (brute_rank(T, cols) < d) return false;
    } while (next_subset(s, H.cols()));
    return true;
}

std::string row_summary(const RowResult& r) { return r.entry.claim() + "->" + r.measured; }

Outcome table_one() {
    Outcome o;
    const auto rows = manifest_rows("I");
    std::size_t good = 0;
    for (const auto& e : rows) {
        const Artifact a = build(e.recipe, budget());
        bool ok = a.code.n() == e.n && a.code.k() == e.k && a.certificate && verify_certificate(a.code, *a.certificate) &&
                  a.certificate->r <= e.r;
        // d1*d2 = 6: no 5 columns of H are dependent
        const auto dep = min_dependent_columns(a.code.H(), e.d - 1, workers(), std::uint64_t{1} << 40);
        ok = ok && !dep.budget_limited && dep.weight >= e.d;
        if (!a.concatenation) {
            ok = false;
        } else {
            const auto w = concat_weight_probe(*a.concatenation);
            ok = ok && w.weight == e.d && contains(a.code, w.word) && hamming_weight(w.word) == e.d;
        }
        if (ok)
            ++good;
        else
            o.fail(e.label + " not reproduced");
    }
    o.note(std::to_string(good) + "/6 codes: n, k, certificate, no dependency among <= 5 columns of H, weight-6 word found");
    return o;
}

Outcome dimension_optimality() {
    Outcome o;
    std::size_t checked = 0;
    for (const auto& e : manifest()) {
        if (!e.dimension_optimal) continue;
        const auto b = azd_bound(static_cast<long long>(e.n), static_cast<long long>(e.r));
        if (b != static_cast<long long>(e.k)) o.fail(e.label + ": azd_bound " + std::to_string(b) + " != k " + std::to_string(e.k));
        ++checked;
    }
    if (azd_bound(85, 4) != 60) o.fail("azd_bound(85,4) != 60");
    if (azd_bound(84, 4) != 59) o.fail("azd_bound(84,4) != 59");
    o.note(std::to_string(checked) + " claimed rows meet azd_bound with equality; azd_bound(85,4)=" + std::to_string(azd_bound(85, 4)) +
           ", azd_bound(84,4)=" + std::to_string(azd_bound(84, 4)));
    return o;
}

Outcome table_two() {
    Outcome o;
    std::size_t good = 0;
    std::string got;
    for (const auto& e : manifest_rows("II")) {
        const auto r = verify_row(e, budget());
        const Artifact a = build(e.recipe, budget());
        const auto dep = min_dependent_columns(a.code.H(), e.d - 1, workers(), std::uint64_t{1} << 40);
        const bool lower = !dep.budget_limited && dep.weight >= e.d;
        if (r.pass && lower)
            ++good;
        else
            o.fail(row_summary(r) + (lower ? "" : " (column search)"));
        got += (got.empty() ? "" : " ") + r.measured;
    }
    o.note(std::to_string(good) + "/7 rows; measured " + got);
    return o;
}

Outcome table_three() {
    Outcome o;
    std::size_t good = 0, total = 0;
    for (const auto& e : manifest_rows("III")) {
        ++total;
        const auto r = verify_row(e, budget());
        // exact rows need the distance pinned at >= 5; structural rows need the lower bound
        if (r.pass)
            ++good;
        else
            o.fail(row_summary(r) + " [" + (r.failures.empty() ? std::string("?") : r.failures.front()) + "]");
    }
    o.note(std::to_string(good) + "/" + std::to_string(total) + " rows");
    return o;
}

Outcome singleton_example() {
    Outcome o;
    const auto L = lengthen_rs(Field::of_order(64), 63, 11, 8);
    if (L.params() != "[69,56,9;11]_64") o.fail("built " + L.params());
    if (singleton_type_bound(69, 56, 11) != 9) o.fail("Singleton-type bound is not 9");
    if (is_singleton_optimal(L) != Verdict::yes) o.fail("not Singleton-optimal");

    const Field f7 = Field::of_order(7);
    const Tables T7(f7);
    const auto small = lengthen_rs(f7, 6, 2, 2);
    std::size_t words = 0;
    for_each_word(T7, small.code().G().to_rows(), [&](const std::vector<std::uint32_t>&) { ++words; });
    const auto d = brute_min_weight(T7, small.code().G().to_rows());
    if (small.n() != 9 || small.k() != 5 || small.r() != 2 || d != 3)
        o.fail("(GF(7),6,2,2) gave n=" + std::to_string(small.n()) + " k=" + std::to_string(small.k()) + " d=" + std::to_string(d));

    std::mt19937_64 rng(2024);
    int instances = 0;
    const std::uint32_t qs[] = {5, 7, 8, 9, 11, 13, 16};
    for (int trial = 0; instances < 30 && trial < 10000; ++trial) {
        const Field f = Field::of_order(qs[rng() % 7]);
        const std::size_t n = 2 + rng() % (f.q() - 2);
        const std::size_t r = 1 + rng() % n;
        const BlockLayout B(n, r);
        if (B.s < 2) continue;
        const std::size_t dd = 2 + rng() % (B.s - 1);
        if (binomial(B.lengthened(), dd) > 20000) continue;
        const auto Lr = lengthen_rs(f, n, r, dd);
        if (!brute_d_independent(Tables(f), Lr.code().H(), dd))
            o.fail("d-subset dependency for q=" + std::to_string(f.q()) + " n=" + std::to_string(n) + " r=" + std::to_string(r) +
                   " d=" + std::to_string(dd));
        ++instances;
    }
    if (instances < 20) o.fail("only " + std::to_string(instances) + " Vandermonde instances");
    o.note(L.params() + " Singleton-optimal; [9,5,3;2]_7 brute-forced over " + std::to_string(words + 1) + " codewords, d=" +
           std::to_string(d) + "; " + std::to_string(instances) + " Vandermonde instances with every d columns independent");
    return o;
}

// grid points where a beats b, and the first/last such delta
struct Crossing {
    int count = 0;
    double lo = -1, hi = -1;
};

Crossing crossing(const CurveSpec& a, const CurveSpec& b) {
    const auto pa = curve_emit(a, workers()), pb = curve_emit(b, workers());
    Crossing c;
    for (std::size_t i = 0; i < pa.size() && i < pb.size(); ++i)
        if (pa[i].rate > 0 && pa[i].rate > pb[i].rate) {
            if (c.count++ == 0) c.lo = pa[i].delta;
            c.hi = pa[i].delta;
        }
    return c;
}

Outcome curves() {
    Outcome o;
    auto P = [](std::uint64_t q, std::uint64_t r) {
        CurveParams p;
        p.q = q;
        p.r = r;
        return p;
    };
    const auto a = crossing({CurveKind::prop38, P(2, 3), 0, 1, 1e-3}, {CurveKind::zyablov, P(2, 3), 0, 1, 1e-3});
    const auto b = crossing({CurveKind::prop39, P(2, 7), 0, 1, 1e-3}, {CurveKind::zyablov, P(2, 7), 0, 1, 1e-3});
    const double top = 1 - 1.0 / 4096;
    const auto c = crossing({CurveKind::thm411, P(4096, 61), 0, top, 1e-3}, {CurveKind::gv_lrc, P(4096, 61), 0, top, 1e-3});
    auto say = [](const char* what, const Crossing& x) {
        return std::string(what) + " on " + std::to_string(x.count) + " grid points in [" + fmt(x.lo) + "," + fmt(x.hi) + "]";
    };
    if (!a.count) o.fail("prop38 never exceeds zyablov (r=3)");
    if (!b.count) o.fail("prop39 never exceeds zyablov (r=7)");
    if (!c.count) o.fail("thm411 never exceeds gv_lrc (q=4096, r=61)");
    o.note(say("prop38 > zyablov(r=3)", a) + "; " + say("prop39 > zyablov(r=7)", b) + "; " + say("thm411 > gv(q=2^12,r=61)", c));
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    std::mt19937_64 rng(77);
    const std::uint32_t qs[] = {2, 2, 2, 3, 4, 5, 7, 8, 9, 11, 13, 16};
    int codes = 0, distance_ok = 0, locality_checks = 0, locality_ok = 0;
    std::size_t repairs = 0;
    auto round_trips = [&](const LocallyRepairableCode& L) {
        const auto q = L.field().q();
        for (int s = 0; s < 1000; ++s) {
            std::vector<Elem> msg(L.k());
            for (auto& x : msg) x = static_cast<Elem>(rng() % q);
            const auto c = encode(L.code(), msg);
            const std::size_t i = rng() % L.n();
            auto w = c;
            w[i] = static_cast<Elem>(rng() % q);
            if (repair_erasure(L, w, i).value != c[i]) {
                o.fail("repair mismatch on " + L.params());
                return;
            }
            ++repairs;
        }
    };
    while (codes < 220) {
        const Field f = Field::of_order(qs[rng() % 12]);
        const std::size_t n = 3 + rng() % 12;
        const std::size_t k = 1 + rng() % (n - 1);
        const double lq = std::log2(static_cast<double>(f.q()));
        if (lq * static_cast<double>(k) > 16 || lq * static_cast<double>(n - k) > 16) continue;
        MatrixGF G(f, k, n);
        do {
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < n; ++c) G(r, c) = static_cast<Elem>(rng() % f.q());
        } while (rank(G) < k);
        const auto C = LinearCode::from_generator(G);
        const Tables T(f);
        ++codes;

        const auto dep = min_dependent_columns(C.H(), n);
        const auto brute = brute_min_weight(T, G.to_rows());
        if (dep.exact && dep.weight == brute)
            ++distance_ok;
        else
            o.fail("distance mismatch on a random [" + std::to_string(n) + "," + std::to_string(k) + "]_" + std::to_string(f.q()));

        const auto cover = lightest_cover(T, C);
        const std::size_t need = *std::max_element(cover.begin(), cover.end());
        std::optional<LocalityCertificate> best;
        for (std::size_t r = 1; r < n; ++r) {
            const auto s = find_locality(C, r);
            ++locality_checks;
            const bool found = s.status == SearchStatus::found && s.certificate && verify_certificate(C, *s.certificate);
            if (found == (need <= r + 1) && s.status != SearchStatus::inconclusive)
                ++locality_ok;
            else
                o.fail("locality mismatch at r=" + std::to_string(r));
            if (found && !best) best = s.certificate;
        }
        if (best && brute >= 2) round_trips(LocallyRepairableCode(C.with_distance({brute, brute, "oracle", "oracle"}), *best));
    }
    const std::vector<LocallyRepairableCode> built = {
        spc(6, Field::of_order(5)),
        rs_with_locality(Field::of_order(8), 7, 3),
        golay_ext(),
        build(manifest_rows("I")[0].recipe).lrc(),
        build(manifest_rows("II")[3].recipe).lrc(),
        lengthen_hamming(6, 3),
        lengthen_rs(Field::of_order(64), 63, 11, 8),
    };
    for (const auto& L : built) round_trips(L);
    o.note(std::to_string(codes) + " random codes: distance " + std::to_string(distance_ok) + "/" + std::to_string(codes) +
           ", locality " + std::to_string(locality_ok) + "/" + std::to_string(locality_checks) + "; " + std::to_string(repairs) +
           " repair round-trips");
    return o;
}

Outcome counterexamples() {
    Outcome o;
    for (const auto& e : manifest_rows("remark")) {
        const auto r = verify_row(e);
        if (!r.pass) o.fail(e.label);
        o.note(r.measured);
    }
    if (!(azd_bound(84, 4) < 60)) o.fail("azd_bound(84,4) admits k=60");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"Table I reproduction", table_one},
        {"dimension-optimality against azd_bound", dimension_optimality},
        {"Table II", table_two},
        {"Table III", table_three},
        {"Singleton-optimal [69,56,9;11]_64 and Vandermonde lengthening", singleton_example},
        {"bound-curve crossings", curves},
        {"oracle equivalence", oracle_equivalence},
        {"counter-examples", counterexamples},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !out.pass;
        std::printf("%s %zu %s (%.1f s): %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                    out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
    return failed ? 1 : 0;
}
