#pragma once

// Exact arithmetic in GF(p^m) with an explicit modulus polynomial.
//
// Elements are exchanged as integers: the element sum_i c_i x^i (c_i in
// [0, p)) is encoded as sum_i c_i p^i. Multiplication goes through
// log/antilog tables built once per field; addition is XOR in
// characteristic two, modular for prime fields, and digit-wise (or a
// precomputed table for small q) otherwise.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "lrc/error.hpp"

namespace lrc {

using Elem = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldSize = 1u << 16;

inline bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

namespace detail {

using Poly = std::vector<std::uint32_t>;  // coefficients, constant first

inline Poly digits_of(std::uint64_t value, std::uint32_t p, std::uint32_t len) {
    Poly out(len, 0);
    for (std::uint32_t i = 0; i < len; ++i) {
        out[i] = static_cast<std::uint32_t>(value % p);
        value /= p;
    }
    return out;
}

inline std::uint64_t encode_digits(std::span<const std::uint32_t> d, std::uint32_t p) {
    std::uint64_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
    // p is small (< 2^16), Fermat is fine
    std::uint64_t result = 1, base = a % p;
    std::uint32_t e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo b over GF(p); b must be nonzero.
inline Poly poly_mod(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    const std::size_t db = b.size() - 1;
    const std::uint32_t lead_inv = inv_mod_prime(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint32_t f = static_cast<std::uint32_t>(std::uint64_t{a.back()} * lead_inv % p);
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            const std::uint64_t sub = std::uint64_t{f} * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

inline Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& modulus, std::uint32_t p) {
    Poly prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
    return poly_mod(std::move(prod), modulus, p);
}

// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    Poly g = f;
    trim(g);
    const std::size_t deg = g.size() - 1;
    if (deg == 0) return false;
    if (deg == 1) return true;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t low = 0; low < count; ++low) {
            Poly div = digits_of(low, p, static_cast<std::uint32_t>(d));
            div.push_back(1);
            if (poly_mod(g, div, p).empty()) return false;
        }
    }
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

}  // namespace detail

/// GF(p^m) described by (p, m, modulus). Cheap to copy; immutable.
class Field {
public:
    /// Field with the lowest-encoding monic irreducible modulus of degree m.
    static Field make(std::uint32_t p, std::uint32_t m) {
        if (!is_prime(p)) throw PreconditionError("field characteristic " + std::to_string(p) + " is not prime");
        if (m < 1) throw PreconditionError("field extension degree must be >= 1");
        check_size(p, m);
        if (m == 1) return with_modulus(p, 1, {0, 1});
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < m; ++i) count *= p;
        for (std::uint64_t low = 0; low < count; ++low) {
            detail::Poly f = detail::digits_of(low, p, m);
            f.push_back(1);
            if (detail::is_irreducible(f, p)) return with_modulus(p, m, f);
        }
        throw Error("no irreducible polynomial found");  // unreachable
    }

    /// Field of order q = p^m (q must be a prime power).
    static Field of_order(std::uint64_t q) {
        if (q < 2) throw PreconditionError("field order must be >= 2");
        for (std::uint32_t p = 2; p <= q; ++p) {
            if (q % p) continue;
            std::uint64_t v = q;
            std::uint32_t m = 0;
            while (v % p == 0) {
                v /= p;
                ++m;
            }
            if (v != 1) throw PreconditionError(std::to_string(q) + " is not a prime power");
            return make(p, m);
        }
        throw PreconditionError(std::to_string(q) + " is not a prime power");
    }

    /// Field with an explicit modulus (constant term first, monic, irreducible).
    static Field with_modulus(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus) {
        if (!is_prime(p)) throw PreconditionError("field characteristic " + std::to_string(p) + " is not prime");
        if (m < 1) throw PreconditionError("field extension degree must be >= 1");
        check_size(p, m);
        if (modulus.size() != m + 1 || modulus.back() != 1)
            throw PreconditionError("modulus must be monic of degree m");
        for (auto c : modulus)
            if (c >= p) throw PreconditionError("modulus coefficient out of range");
        if (!detail::is_irreducible(modulus, p)) throw PreconditionError("modulus is not irreducible");
        return Field(std::make_shared<const Impl>(p, m, std::move(modulus)));
    }

    std::uint32_t p() const { return impl_->p; }
    std::uint32_t m() const { return impl_->m; }
    std::uint32_t q() const { return impl_->q; }
    const std::vector<std::uint32_t>& modulus() const { return impl_->modulus; }
    /// Lowest-encoding primitive element.
    Elem primitive() const { return impl_->primitive; }

    static constexpr Elem zero() { return 0; }
    static constexpr Elem one() { return 1; }

    bool contains(std::uint64_t v) const { return v < impl_->q; }

    Elem add(Elem a, Elem b) const {
        const Impl& f = *impl_;
        if (f.p == 2) return a ^ b;
        if (f.m == 1) return (a + b) % f.p;
        if (!f.add_table.empty()) return f.add_table[std::size_t{a} * f.q + b];
        return f.digitwise(a, b, false);
    }
    Elem neg(Elem a) const {
        const Impl& f = *impl_;
        if (f.p == 2 || a == 0) return a;
        if (f.m == 1) return f.p - a;
        return f.digitwise(0, a, true);
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        const Impl& f = *impl_;
        return f.exp[f.log[a] + f.log[b]];
    }
    Elem inv(Elem a) const {
        if (a == 0) throw DivisionByZero("inverse of zero");
        const Impl& f = *impl_;
        return f.exp[(f.q - 1) - f.log[a]];
    }
    Elem div(Elem a, Elem b) const {
        if (b == 0) throw DivisionByZero("division by zero");
        if (a == 0) return 0;
        const Impl& f = *impl_;
        return f.exp[f.log[a] + (f.q - 1) - f.log[b]];
    }
    Elem pow(Elem a, long long e) const {
        if (a == 0) {
            if (e == 0) return 1;
            if (e < 0) throw DivisionByZero("negative power of zero");
            return 0;
        }
        const Impl& f = *impl_;
        const long long order = f.q - 1;
        long long idx = (static_cast<long long>(f.log[a]) * (e % order)) % order;
        if (idx < 0) idx += order;
        return f.exp[static_cast<std::size_t>(idx)];
    }
    /// Discrete log base primitive(); a must be nonzero.
    std::uint32_t log(Elem a) const {
        if (a == 0) throw DivisionByZero("log of zero");
        return impl_->log[a];
    }
    Elem exp(std::uint64_t i) const { return impl_->exp[i % (impl_->q - 1)]; }

    /// Polynomial-basis coordinates (length m, constant first).
    std::vector<std::uint32_t> coords(Elem a) const { return detail::digits_of(a, p(), m()); }
    Elem from_coords(std::span<const std::uint32_t> c) const {
        if (c.size() != m()) throw PreconditionError("coordinate vector length must equal m");
        for (auto v : c)
            if (v >= p()) throw PreconditionError("coordinate out of range");
        return static_cast<Elem>(detail::encode_digits(c, p()));
    }

    /// One-line descriptor `p m c0 c1 ... cm`.
    std::string descriptor() const {
        std::ostringstream os;
        os << p() << ' ' << m();
        for (auto c : modulus()) os << ' ' << c;
        return os.str();
    }
    static Field parse_descriptor(const std::string& line) {
        std::istringstream is(line);
        long long p = 0, m = 0;
        if (!(is >> p >> m) || p < 2 || m < 1 || m > 16) throw ParseError("bad field descriptor: " + line);
        std::vector<std::uint32_t> mod;
        long long c;
        while (is >> c) {
            if (c < 0) throw ParseError("bad field descriptor: " + line);
            mod.push_back(static_cast<std::uint32_t>(c));
        }
        if (mod.size() != static_cast<std::size_t>(m) + 1) throw ParseError("bad field descriptor: " + line);
        try {
            return with_modulus(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m), std::move(mod));
        } catch (const PreconditionError& e) {
            throw ParseError(std::string("bad field descriptor: ") + e.what());
        }
    }

    friend bool operator==(const Field& a, const Field& b) {
        return a.impl_ == b.impl_ || (a.p() == b.p() && a.m() == b.m() && a.modulus() == b.modulus());
    }

    std::string name() const {
        return "GF(" + std::to_string(q()) + ")";
    }

private:
    struct Impl {
        std::uint32_t p, m, q;
        std::vector<std::uint32_t> modulus;
        std::vector<Elem> exp;           // 2(q-1) entries
        std::vector<std::uint32_t> log;  // q entries, log[0] unused
        std::vector<Elem> add_table;     // q*q, only for odd p, m > 1, q <= 256
        Elem primitive = 1;

        Impl(std::uint32_t p_, std::uint32_t m_, std::vector<std::uint32_t> mod)
            : p(p_), m(m_), q(1), modulus(std::move(mod)) {
            for (std::uint32_t i = 0; i < m; ++i) q *= p;
            primitive = find_primitive();
            exp.resize(2 * std::size_t{q - 1});
            log.assign(q, 0);
            detail::Poly g = detail::digits_of(primitive, p, m);
            detail::Poly cur{1};
            for (std::uint32_t i = 0; i < q - 1; ++i) {
                const auto v = static_cast<Elem>(detail::encode_digits(padded(cur), p));
                exp[i] = v;
                exp[i + (q - 1)] = v;
                log[v] = i;
                cur = detail::poly_mul_mod(cur, g, modulus, p);
            }
            if (p != 2 && m > 1 && q <= 256) {
                add_table.resize(std::size_t{q} * q);
                for (Elem a = 0; a < q; ++a)
                    for (Elem b = 0; b < q; ++b) add_table[std::size_t{a} * q + b] = digitwise(a, b, false);
            }
        }

        detail::Poly padded(detail::Poly v) const {
            v.resize(m, 0);
            return v;
        }

        Elem digitwise(Elem a, Elem b, bool negate_b) const {
            Elem out = 0, scale = 1;
            for (std::uint32_t i = 0; i < m; ++i) {
                std::uint32_t da = a % p, db = b % p;
                a /= p;
                b /= p;
                if (negate_b) db = (p - db) % p;
                out += ((da + db) % p) * scale;
                scale *= p;
            }
            return out;
        }

        detail::Poly pow_slow(const detail::Poly& base, std::uint64_t e) const {
            detail::Poly result{1}, b = base;
            while (e) {
                if (e & 1) result = detail::poly_mul_mod(result, b, modulus, p);
                b = detail::poly_mul_mod(b, b, modulus, p);
                e >>= 1;
            }
            detail::trim(result);
            return result;
        }

        Elem find_primitive() const {
            if (q == 2) return 1;
            const auto factors = detail::prime_factors(q - 1);
            for (Elem cand = 2; cand < q; ++cand) {
                const detail::Poly g = detail::digits_of(cand, p, m);
                bool ok = true;
                for (auto f : factors) {
                    const detail::Poly r = pow_slow(g, (q - 1) / f);
                    if (r.size() == 1 && r[0] == 1) {
                        ok = false;
                        break;
                    }
                }
                if (ok) return cand;
            }
            throw Error("no primitive element");  // unreachable for a field
        }
    };

    explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    static void check_size(std::uint32_t p, std::uint32_t m) {
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            q *= p;
            if (q > kMaxFieldSize) throw PreconditionError("fields with q > 2^16 are not supported");
        }
    }

    std::shared_ptr<const Impl> impl_;
};

/// A field element bound to its field; arithmetic checks that operands agree.
class FieldElement {
public:
    FieldElement(Field f, Elem v) : field_(std::move(f)), value_(v) {
        if (!field_.contains(v)) throw PreconditionError("element encoding out of range");
    }

    const Field& field() const { return field_; }
    Elem value() const { return value_; }
    std::vector<std::uint32_t> coords() const { return field_.coords(value_); }
    bool is_zero() const { return value_ == 0; }

    FieldElement inv() const { return {field_, field_.inv(value_)}; }
    FieldElement pow(long long e) const { return {field_, field_.pow(value_, e)}; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return {a.field_, a.field_.add(a.value_, b.value_)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return {a.field_, a.field_.sub(a.value_, b.value_)};
    }
    friend FieldElement operator-(const FieldElement& a) { return {a.field_, a.field_.neg(a.value_)}; }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return {a.field_, a.field_.mul(a.value_, b.value_)};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return {a.field_, a.field_.div(a.value_, b.value_)};
    }
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.value_ == b.value_ && a.field_ == b.field_;
    }
    friend std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << a.value_; }

private:
    static void check(const FieldElement& a, const FieldElement& b) {
        if (!(a.field_ == b.field_))
            throw FieldMismatch("operands belong to " + a.field_.name() + " and " + b.field_.name() +
                                " with different moduli");
    }

    Field field_;
    Elem value_;
};

}  // namespace lrc
