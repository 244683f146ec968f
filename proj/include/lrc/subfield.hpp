#pragma once

// Coordinates of GF(q^s) over a subfield GF(q).
//
// The subfield is embedded by sending its generator x to the
// lowest-encoding root of its modulus in the big field. Coordinates are
// taken in the power basis {1, g, ..., g^(s-1)} of a generator g of the
// extension (by default the lowest-encoding element of degree s over
// the subfield).

#include <optional>
#include <vector>

#include "lrc/error.hpp"
#include "lrc/field.hpp"
#include "lrc/matrix.hpp"

namespace lrc {

class RelativeBasis {
public:
    RelativeBasis(Field big, Field base, std::optional<Elem> generator = std::nullopt)
        : big_(std::move(big)), base_(std::move(base)), prime_(Field::make(big_.p(), 1)) {
        if (big_.p() != base_.p())
            throw PreconditionError("extension and subfield have different characteristic");
        if (big_.m() % base_.m() != 0)
            throw PreconditionError("subfield degree does not divide extension degree");
        degree_ = big_.m() / base_.m();
        find_embedding();
        if (generator) {
            if (!big_.contains(*generator)) throw PreconditionError("generator outside the extension field");
            if (!try_generator(*generator)) throw PreconditionError("generator does not span the extension");
        } else {
            bool found = false;
            for (Elem g = 0; g < big_.q() && !found; ++g) found = try_generator(g);
            if (!found) throw Error("no generator for relative basis");  // unreachable
        }
    }

    const Field& big() const { return big_; }
    const Field& base() const { return base_; }
    /// Relative degree s = [GF(q^s) : GF(q)].
    std::uint32_t degree() const { return degree_; }
    Elem generator() const { return generator_; }

    /// Image of a subfield element in the extension.
    Elem embed(Elem a) const {
        if (!base_.contains(a)) throw PreconditionError("element outside the subfield");
        Elem out = 0;
        const auto digits = base_.coords(a);
        for (std::size_t i = 0; i < digits.size(); ++i)
            if (digits[i]) out = big_.add(out, big_.mul(static_cast<Elem>(digits[i]), root_powers_[i]));
        return out;
    }

    /// Coordinates of x in the basis {1, g, ..., g^(s-1)}, as subfield elements.
    std::vector<Elem> coords(Elem x) const {
        if (!big_.contains(x)) throw PreconditionError("element outside the extension field");
        const auto digits = big_.coords(x);
        std::vector<Elem> v(digits.begin(), digits.end());
        const auto a = inverse_transition_.apply(v);
        const std::uint32_t mb = base_.m();
        std::vector<Elem> out(degree_);
        for (std::uint32_t j = 0; j < degree_; ++j) {
            std::vector<std::uint32_t> d(mb);
            for (std::uint32_t i = 0; i < mb; ++i) d[i] = a[j * mb + i];
            out[j] = base_.from_coords(d);
        }
        return out;
    }

    Elem uncoords(std::span<const Elem> c) const {
        if (c.size() != degree_) throw PreconditionError("coordinate vector length must equal the relative degree");
        Elem out = 0;
        for (std::uint32_t j = 0; j < degree_; ++j) out = big_.add(out, big_.mul(embed(c[j]), basis_[j]));
        return out;
    }

    /// The basis elements g^j.
    const std::vector<Elem>& basis() const { return basis_; }

private:
    void find_embedding() {
        const std::uint32_t mb = base_.m();
        root_powers_.assign(mb, 1);
        if (mb == 1) return;
        const auto& mod = base_.modulus();
        for (Elem beta = 0; beta < big_.q(); ++beta) {
            // evaluate the subfield modulus (coefficients in GF(p)) at beta
            Elem acc = 0;
            for (std::size_t i = mod.size(); i-- > 0;) acc = big_.add(big_.mul(acc, beta), static_cast<Elem>(mod[i]));
            if (acc == 0) {
                for (std::uint32_t i = 0; i < mb; ++i) root_powers_[i] = big_.pow(beta, i);
                return;
            }
        }
        throw Error("subfield modulus has no root in the extension");  // unreachable
    }

    bool try_generator(Elem g) {
        const std::uint32_t M = big_.m(), mb = base_.m();
        std::vector<Elem> gpow(degree_);
        for (std::uint32_t j = 0; j < degree_; ++j) gpow[j] = big_.pow(g, j);
        // column j*mb+i holds the prime-field digits of x^i * g^j
        MatrixGF T(prime_, M, M);
        for (std::uint32_t j = 0; j < degree_; ++j)
            for (std::uint32_t i = 0; i < mb; ++i) {
                const auto d = big_.coords(big_.mul(root_powers_[i], gpow[j]));
                for (std::uint32_t r = 0; r < M; ++r) T(r, j * mb + i) = d[r];
            }
        auto inv = inverse(T);
        if (!inv) return false;
        generator_ = g;
        basis_ = std::move(gpow);
        inverse_transition_ = std::move(*inv);
        return true;
    }

    Field big_, base_, prime_;
    std::uint32_t degree_ = 1;
    Elem generator_ = 1;
    std::vector<Elem> root_powers_;
    std::vector<Elem> basis_;
    MatrixGF inverse_transition_{prime_, 0, 0};
};

}  // namespace lrc
