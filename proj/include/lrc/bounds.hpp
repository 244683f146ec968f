#pragma once

// Asymptotic rate bounds: entropy, GV for LRCs, Zyablov-type, and the affine
// rate lines, plus curve emission as CSV.

#include <cmath>
#include <cstdint>
#include <exception>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <boost/rational.hpp>

#include "lrc/error.hpp"

namespace lrc {

using Rational = boost::rational<long long>;

/// q-ary entropy x log_q(q-1) - x log_q x - (1-x) log_q(1-x), continuous at 0 and 1.
inline double entropy_q(double q, double x) {
    if (!(q >= 2)) throw PreconditionError("entropy needs q >= 2");
    if (!(x >= 0 && x <= 1)) throw PreconditionError("entropy argument must lie in [0, 1]");
    const double lq = std::log(q);
    double h = 0;
    if (x > 0) h += x * std::log(q - 1) - x * std::log(x);
    if (x < 1) h -= (1 - x) * std::log1p(-x);
    return h / lq;
}

namespace detail {

// Objective of the GV minimization at s = e^u.
inline double gv_objective(double r, double x, double q, double u) {
    const double s = std::exp(u);
    const double a = (r + 1) * std::log1p((q - 1) * s);
    const double b = std::log(q - 1) + (r + 1) * std::log1p(-s);
    const double hi = std::max(a, b);
    const double lse = hi + std::log(std::exp(a - hi) + (std::isinf(b) ? 0.0 : std::exp(b - hi)));
    return (lse / (r + 1) - x * u) / std::log(q);
}

template <class F>
double golden_min(F&& f, double lo, double hi, double stop) {
    const double g = (std::sqrt(5.0) - 1) / 2;
    double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 300 && stop < hi - lo; ++it) {
        if (fc <= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = f(d);
        }
    }
    return fc <= fd ? c : d;
}

inline constexpr double kLogSMin = -34.5;  // s = 1e-15
inline constexpr int kGrid = 1000;

}  // namespace detail

/// h(r, x) = min over s in (0, 1] of
///   (1/(r+1)) log_q([1+(q-1)s]^(r+1) + (q-1)(1-s)^(r+1)) - x log_q s.
inline double gv_h(double r, double x, double q = 2) {
    if (!(r >= 1)) throw PreconditionError("gv_h needs r >= 1");
    if (!(q >= 2)) throw PreconditionError("gv_h needs q >= 2");
    if (!(x >= 0) || !std::isfinite(x)) throw PreconditionError("gv_h needs x >= 0");
    if (x == 0) return 1.0 / (r + 1);  // infimum approached as s -> 0
    auto f = [&](double u) { return detail::gv_objective(r, x, q, u); };
    std::vector<double> val(detail::kGrid + 1);
    std::size_t best = 0;
    for (int i = 0; i <= detail::kGrid; ++i) {
        val[i] = f(detail::kLogSMin * (1.0 - static_cast<double>(i) / detail::kGrid));
        if (val[i] < val[best]) best = static_cast<std::size_t>(i);
    }
    // the objective is convex in log s: the scan must fall then rise
    const double slack = 1e-12;
    for (std::size_t i = 1; i <= best; ++i)
        if (val[i] > val[i - 1] + slack) throw Error("gv_h: objective not unimodal in log s");
    for (std::size_t i = best + 1; i < val.size(); ++i)
        if (val[i] < val[i - 1] - slack) throw Error("gv_h: objective not unimodal in log s");
    const double step = -detail::kLogSMin / detail::kGrid;
    const double lo = std::max(detail::kLogSMin, detail::kLogSMin + step * (static_cast<double>(best) - 1));
    const double hi = std::min(0.0, detail::kLogSMin + step * (static_cast<double>(best) + 1));
    // stop once the bracket is narrower than 1e-9 in s
    const double u = detail::golden_min(f, lo, hi, 1e-9 / std::max(std::exp(hi), 1e-300));
    const double refined = std::min(f(u), val[best]);
    if (refined > val[best] + slack) throw Error("gv_h: refinement worse than grid");
    return refined;
}

/// 1 - h(r, delta), for 0 <= delta <= 1 - 1/q (unclamped).
inline double gv_lrc_rate_raw(double r, double delta, double q) {
    if (!(delta >= 0 && delta <= 1 - 1 / q + 1e-15)) throw PreconditionError("gv_lrc_rate needs 0 <= delta <= 1 - 1/q");
    return 1 - gv_h(r, delta, q);
}

inline double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

inline double gv_lrc_rate(double r, double delta, double q) { return clamp01(gv_lrc_rate_raw(r, delta, q)); }

/// max over tau in [delta, 1] of (1 - delta/tau)(1 - h(r, tau)) (unclamped).
inline double zyablov_lrc_raw(double r, double delta, double q = 2) {
    if (!(delta >= 0 && delta <= 1)) throw PreconditionError("zyablov_lrc needs delta in (0, 1)");
    if (delta == 1) return 0;
    auto g = [&](double tau) { return (1 - delta / tau) * (1 - gv_h(r, tau, q)); };
    if (delta == 0) return 1 - gv_h(r, 0, q);  // limit: tau -> 0
    const double step = 1e-3;
    const auto count = static_cast<int>(std::floor((1 - delta) / step));
    double best_tau = 1, best = g(1.0);
    for (int j = 0; j <= count; ++j) {
        const double tau = delta + j * step;
        const double v = g(tau);
        if (v > best) {
            best = v;
            best_tau = tau;
        }
    }
    const double lo = std::max(delta, best_tau - step), hi = std::min(1.0, best_tau + step);
    const double tau = detail::golden_min([&](double t) { return -g(t); }, lo, hi, 1e-9);
    return std::max(best, g(tau));
}

inline double zyablov_lrc(double r, double delta, double q = 2) { return clamp01(zyablov_lrc_raw(r, delta, q)); }

enum class CurveKind { gv_lrc, zyablov, tvz, prop38, prop39, prop319, cor311, prop417, thm411, line_eq5, line_eq6, line_eq7 };

inline const std::vector<std::pair<CurveKind, std::string>>& curve_kind_names() {
    static const std::vector<std::pair<CurveKind, std::string>> names = {
        {CurveKind::gv_lrc, "gv_lrc"},   {CurveKind::zyablov, "zyablov"},     {CurveKind::tvz, "tvz"},
        {CurveKind::prop38, "prop38"},   {CurveKind::prop39, "prop39"},       {CurveKind::prop319, "prop319"},
        {CurveKind::cor311, "cor311"},   {CurveKind::prop417, "prop417"},     {CurveKind::thm411, "thm411"},
        {CurveKind::line_eq5, "line_eq5"}, {CurveKind::line_eq6, "line_eq6"}, {CurveKind::line_eq7, "line_eq7"}};
    return names;
}

inline std::string to_string(CurveKind k) {
    for (const auto& [kind, name] : curve_kind_names())
        if (kind == k) return name;
    return "?";
}

inline CurveKind parse_curve_kind(const std::string& s) {
    for (const auto& [kind, name] : curve_kind_names())
        if (name == s) return kind;
    throw PreconditionError("unknown curve kind: " + s);
}

struct CurveParams {
    std::uint64_t q = 2;
    std::uint64_t r = 1;
    std::uint64_t m = 0;
    std::uint64_t t = 0;
    /// Explicit lower bound on Ihara's constant for non-square arguments.
    std::optional<double> ihara;
};

namespace detail {

// q = p^e
inline std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t q) {
    if (q < 2) throw PreconditionError("q must be a prime power >= 2");
    for (std::uint64_t p = 2; p * p <= q; ++p) {
        if (q % p) continue;
        unsigned e = 0;
        while (q % p == 0) {
            q /= p;
            ++e;
        }
        if (q != 1) throw PreconditionError("q must be a prime power");
        return {p, e};
    }
    return {q, 1};
}

// sqrt(q) when q is a square (of a prime power)
inline std::optional<std::uint64_t> exact_sqrt(std::uint64_t q) {
    const auto [p, e] = prime_power(q);
    if (e % 2) return std::nullopt;
    std::uint64_t s = 1;
    for (unsigned i = 0; i < e / 2; ++i) s *= p;
    return s;
}

// A(q^j) = sqrt(q^j) - 1 for square arguments, else the override
inline double ihara(const CurveParams& P, std::uint64_t j) {
    const auto [p, e] = prime_power(P.q);
    if ((static_cast<std::uint64_t>(e) * j) % 2 == 0)
        return std::pow(static_cast<double>(p), static_cast<double>(e) * static_cast<double>(j) / 2) - 1;
    if (!P.ihara) throw PreconditionError("A(q^" + std::to_string(j) + ") needs an explicit override: argument is not a square");
    if (!(*P.ihara > 0)) throw PreconditionError("Ihara override must be positive");
    return *P.ihara;
}

inline std::uint64_t require_square(std::uint64_t q) {
    const auto s = exact_sqrt(q);
    if (!s) throw PreconditionError("q must be a square");
    return *s;
}

}  // namespace detail

inline bool is_affine(CurveKind k) {
    return k != CurveKind::gv_lrc && k != CurveKind::zyablov && k != CurveKind::prop417;
}

/// Exact slope of an affine rate line.
inline Rational line_slope(CurveKind k, const CurveParams& P) {
    const auto r = static_cast<long long>(P.r);
    switch (k) {
        case CurveKind::tvz:
        case CurveKind::prop38:
        case CurveKind::thm411: return Rational(-1);
        case CurveKind::prop39: return Rational(-3, 2);
        case CurveKind::prop319: return Rational(-static_cast<long long>(P.m - P.t), static_cast<long long>(P.t + 1));
        case CurveKind::cor311: return Rational(-r, 2);
        case CurveKind::line_eq5:
        case CurveKind::line_eq6:
        case CurveKind::line_eq7: return Rational(-r, r + 1);
        default: throw PreconditionError(to_string(k) + " is not affine");
    }
}

/// Checks the parameters of a kind; throws on inadmissible ones.
inline void validate(CurveKind k, const CurveParams& P) {
    detail::prime_power(P.q);
    switch (k) {
        case CurveKind::gv_lrc:
        case CurveKind::zyablov:
        case CurveKind::prop417:
        case CurveKind::cor311:
        case CurveKind::thm411:
            if (P.r < 1) throw PreconditionError("r must be >= 1");
            break;
        case CurveKind::prop319:
            if (P.m > P.q || P.t < 1 || P.t + 1 > P.m) throw PreconditionError("prop319 needs m <= q and 1 <= t <= m-1");
            break;
        case CurveKind::line_eq5:
            if (P.r + 1 != detail::require_square(P.q)) throw PreconditionError("line_eq5 needs r = sqrt(q) - 1");
            break;
        case CurveKind::line_eq6: {
            const auto s = detail::require_square(P.q);
            if (P.r < 1 || (s + 1) % (P.r + 1)) throw PreconditionError("line_eq6 needs (r+1) | (sqrt(q)+1)");
            break;
        }
        case CurveKind::line_eq7: {
            const auto s = detail::require_square(P.q);
            const auto p = detail::prime_power(P.q).first;
            bool ok = false;
            for (std::uint64_t pv = p; pv <= P.r + 1 && !ok; pv *= p) {
                if ((P.r + 1) % pv) break;
                const auto u = (P.r + 1) / pv;
                ok = std::gcd(pv - 1, s - 1) % u == 0;
            }
            if (P.r < 1 || !ok) throw PreconditionError("line_eq7 needs r+1 = u p^v with u | gcd(p^v - 1, sqrt(q) - 1)");
            break;
        }
        default: break;
    }
    if (k == CurveKind::tvz || k == CurveKind::thm411) detail::ihara(P, 1);
    if (k == CurveKind::cor311) detail::ihara(P, P.r);
    if (k == CurveKind::prop319) detail::ihara(P, P.m - P.t);
}

/// Value of a rate line at delta, unclamped.
inline double rate_line_raw(CurveKind k, const CurveParams& P, double delta) {
    validate(k, P);
    const double r = static_cast<double>(P.r), q = static_cast<double>(P.q);
    auto slope = [&] {
        const auto s = line_slope(k, P);
        return static_cast<double>(s.numerator()) / static_cast<double>(s.denominator());
    };
    switch (k) {
        case CurveKind::gv_lrc: return gv_lrc_rate_raw(r, delta, q);
        case CurveKind::zyablov: return zyablov_lrc_raw(r, delta, q);
        case CurveKind::prop417: {
            const double x = (r + 1) * delta / r;
            if (x > 1 - 1 / q) return 0;
            return r / (r + 1) * (1 - entropy_q(q, x));
        }
        case CurveKind::tvz: return 1 - 1 / detail::ihara(P, 1) + slope() * delta;
        case CurveKind::prop38: return 1.0 / 3 + slope() * delta;
        case CurveKind::prop39: return 31.0 / 63 + slope() * delta;
        case CurveKind::prop319: {
            const double m = static_cast<double>(P.m), t = static_cast<double>(P.t);
            return (1 - t / m) * (1 - 1 / detail::ihara(P, P.m - P.t)) + slope() * delta;
        }
        case CurveKind::cor311: return r / (r + 1) * (1 - 1 / detail::ihara(P, P.r)) + slope() * delta;
        case CurveKind::thm411: return r / (r + 1) * (1 - 1 / detail::ihara(P, 1)) + slope() * delta;
        case CurveKind::line_eq5: return r / (r + 1) * (1 - 3 / (std::sqrt(q) + 1)) + slope() * delta;
        case CurveKind::line_eq6: return r / (r + 1) * (1 - (std::sqrt(q) + r) / (q - 1)) + slope() * delta;
        case CurveKind::line_eq7: return r / (r + 1) * (1 - (std::sqrt(q) + r - 1) / (q - std::sqrt(q))) + slope() * delta;
    }
    return 0;
}

inline double rate_line(CurveKind k, const CurveParams& P, double delta) { return clamp01(rate_line_raw(k, P, delta)); }

struct RatePoint {
    double delta = 0;
    double raw = 0;
    double rate = 0;
};

struct CurveSpec {
    CurveKind kind = CurveKind::gv_lrc;
    CurveParams params;
    double from = 0, to = 0, step = 0.001;
};

inline std::string params_string(CurveKind k, const CurveParams& P) {
    std::string s = "q=" + std::to_string(P.q) + ";r=" + std::to_string(P.r);
    if (k == CurveKind::prop319) s += ";m=" + std::to_string(P.m) + ";t=" + std::to_string(P.t);
    if (P.ihara) {
        char buf[64];
        std::snprintf(buf, sizeof buf, ";A=%.12g", *P.ihara);
        s += buf;
    }
    return s;
}

inline std::vector<double> delta_grid(double from, double to, double step) {
    if (!(from >= 0 && from <= to && to <= 1)) throw PreconditionError("grid needs 0 <= from <= to <= 1");
    if (!(step > 0)) throw PreconditionError("grid step must be positive");
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
    std::vector<double> g(count + 1);
    for (std::size_t i = 0; i <= count; ++i) g[i] = from + static_cast<double>(i) * step;
    return g;
}

/// One point per grid delta, in grid order; parallel evaluation does not change the output.
inline std::vector<RatePoint> curve_emit(const CurveSpec& spec, unsigned workers = 1) {
    validate(spec.kind, spec.params);
    const auto grid = delta_grid(spec.from, spec.to, spec.step);
    std::vector<RatePoint> out(grid.size());
    std::vector<std::exception_ptr> errs(std::max(1u, workers));
    auto run = [&](unsigned w, unsigned stride) {
        try {
            for (std::size_t i = w; i < grid.size(); i += stride) {
                const double raw = rate_line_raw(spec.kind, spec.params, grid[i]);
                out[i] = {grid[i], raw, clamp01(raw)};
            }
        } catch (...) {
            errs[w] = std::current_exception();
        }
    };
    if (workers <= 1) {
        run(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

inline std::string format12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string curve_csv(const CurveSpec& spec, const std::vector<RatePoint>& pts) {
    std::string out = "delta,rate_raw,rate,kind,params\n";
    const std::string tail = "," + to_string(spec.kind) + "," + params_string(spec.kind, spec.params) + "\n";
    for (const auto& p : pts) out += format12(p.delta) + "," + format12(p.raw) + "," + format12(p.rate) + tail;
    return out;
}

}  // namespace lrc
