#pragma once

// Dense matrices over a Field, with the exact elimination routines used
// throughout: RREF, rank, right kernel, inverse and column selection.

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "lrc/error.hpp"
#include "lrc/field.hpp"

namespace lrc {

class MatrixGF {
public:
    MatrixGF(Field f, std::size_t rows, std::size_t cols)
        : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    MatrixGF(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
        : field_(std::move(f)), rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) throw PreconditionError("matrix entry count does not match shape");
        for (auto v : data_)
            if (!field_.contains(v)) throw PreconditionError("matrix entry outside the field");
    }

    static MatrixGF from_rows(Field f, const std::vector<std::vector<Elem>>& rows, std::size_t cols = 0) {
        if (!rows.empty()) cols = rows.front().size();
        std::vector<Elem> data;
        data.reserve(rows.size() * cols);
        for (const auto& r : rows) {
            if (r.size() != cols) throw PreconditionError("ragged matrix rows");
            data.insert(data.end(), r.begin(), r.end());
        }
        return MatrixGF(std::move(f), rows.size(), cols, std::move(data));
    }

    static MatrixGF identity(Field f, std::size_t n) {
        MatrixGF I(std::move(f), n, n);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
        return I;
    }

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::vector<Elem> column(std::size_t c) const {
        std::vector<Elem> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }
    const std::vector<Elem>& data() const { return data_; }

    std::vector<std::vector<Elem>> to_rows() const {
        std::vector<std::vector<Elem>> out;
        for (std::size_t r = 0; r < rows_; ++r) out.emplace_back(row(r).begin(), row(r).end());
        return out;
    }

    bool is_zero() const {
        for (auto v : data_)
            if (v) return false;
        return true;
    }

    MatrixGF transpose() const {
        MatrixGF t(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    MatrixGF select_columns(std::span<const std::size_t> idx) const {
        MatrixGF out(field_, rows_, idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (idx[j] >= cols_) throw PreconditionError("column index out of range");
            for (std::size_t r = 0; r < rows_; ++r) out(r, j) = (*this)(r, idx[j]);
        }
        return out;
    }

    MatrixGF drop_columns(std::span<const std::size_t> idx) const {
        std::vector<bool> drop(cols_, false);
        for (auto c : idx) {
            if (c >= cols_) throw PreconditionError("column index out of range");
            drop[c] = true;
        }
        std::vector<std::size_t> keep;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!drop[c]) keep.push_back(c);
        return select_columns(keep);
    }

    MatrixGF select_rows(std::span<const std::size_t> idx) const {
        MatrixGF out(field_, idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] >= rows_) throw PreconditionError("row index out of range");
            auto src = row(idx[i]);
            std::copy(src.begin(), src.end(), out.row(i).begin());
        }
        return out;
    }

    /// Rows of *this followed by rows of other.
    MatrixGF stacked(const MatrixGF& other) const {
        require_same_field(other);
        if (other.cols_ != cols_ && !(rows_ == 0) && !(other.rows_ == 0))
            throw PreconditionError("column count mismatch in vertical stack");
        const std::size_t cols = rows_ ? cols_ : other.cols_;
        std::vector<Elem> d = data_;
        d.insert(d.end(), other.data_.begin(), other.data_.end());
        return MatrixGF(field_, rows_ + other.rows_, cols, std::move(d));
    }

    friend MatrixGF operator*(const MatrixGF& a, const MatrixGF& b) {
        a.require_same_field(b);
        if (a.cols_ != b.rows_) throw PreconditionError("matrix product shape mismatch");
        const Field& f = a.field_;
        MatrixGF out(f, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Elem s = a(i, k);
                if (!s) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = f.add(out(i, j), f.mul(s, b(k, j)));
            }
        return out;
    }

    /// v * M for a row vector v.
    std::vector<Elem> left_multiply(std::span<const Elem> v) const {
        if (v.size() != rows_) throw PreconditionError("vector length does not match matrix rows");
        std::vector<Elem> out(cols_, 0);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (!v[r]) continue;
            for (std::size_t c = 0; c < cols_; ++c) out[c] = field_.add(out[c], field_.mul(v[r], (*this)(r, c)));
        }
        return out;
    }

    /// M * v^T for a vector v of length cols().
    std::vector<Elem> apply(std::span<const Elem> v) const {
        if (v.size() != cols_) throw PreconditionError("vector length does not match matrix columns");
        std::vector<Elem> out(rows_, 0);
        for (std::size_t r = 0; r < rows_; ++r) {
            Elem acc = 0;
            for (std::size_t c = 0; c < cols_; ++c)
                if (v[c]) acc = field_.add(acc, field_.mul(v[c], (*this)(r, c)));
            out[r] = acc;
        }
        return out;
    }

    friend bool operator==(const MatrixGF& a, const MatrixGF& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ && a.field_ == b.field_;
    }

    void require_same_field(const MatrixGF& other) const {
        if (!(field_ == other.field_)) throw FieldMismatch("matrices over different fields");
    }

private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<Elem> data_;
};

namespace detail {

// dst -= factor * src over the given field.
inline void row_axpy(const Field& f, std::span<Elem> dst, std::span<const Elem> src, Elem factor,
                     std::size_t from = 0) {
    if (!factor) return;
    if (f.p() == 2 && factor == 1 && f.m() == 1) {
        for (std::size_t c = from; c < dst.size(); ++c) dst[c] ^= src[c];
        return;
    }
    for (std::size_t c = from; c < dst.size(); ++c)
        if (src[c]) dst[c] = f.sub(dst[c], f.mul(factor, src[c]));
}

inline void row_scale(const Field& f, std::span<Elem> row, Elem factor) {
    if (factor == 1) return;
    for (auto& v : row)
        if (v) v = f.mul(v, factor);
}

}  // namespace detail

struct RrefResult {
    MatrixGF reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form by Gauss-Jordan elimination.
inline RrefResult rref(const MatrixGF& M) {
    MatrixGF R = M;
    const Field& f = R.field();
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < R.cols() && pr < R.rows(); ++c) {
        std::size_t sel = pr;
        while (sel < R.rows() && R(sel, c) == 0) ++sel;
        if (sel == R.rows()) continue;
        if (sel != pr) {
            auto a = R.row(sel), b = R.row(pr);
            std::swap_ranges(a.begin(), a.end(), b.begin());
        }
        detail::row_scale(f, R.row(pr), f.inv(R(pr, c)));
        for (std::size_t r = 0; r < R.rows(); ++r)
            if (r != pr && R(r, c)) detail::row_axpy(f, R.row(r), R.row(pr), R(r, c), c);
        pivots.push_back(c);
        ++pr;
    }
    return {std::move(R), pr, std::move(pivots)};
}

inline std::size_t rank(const MatrixGF& M) { return rref(M).rank; }

/// The nonzero rows of rref(M): a basis of the row space.
inline MatrixGF row_basis(const MatrixGF& M) {
    auto res = rref(M);
    std::vector<std::size_t> idx(res.rank);
    for (std::size_t i = 0; i < res.rank; ++i) idx[i] = i;
    return res.reduced.select_rows(idx);
}

/// Basis of the right kernel {v : M v^T = 0}, one basis vector per row.
inline MatrixGF nullspace(const MatrixGF& M) {
    const Field& f = M.field();
    auto res = rref(M);
    std::vector<bool> is_pivot(M.cols(), false);
    for (auto p : res.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < M.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    MatrixGF K(f, free_cols.size(), M.cols());
    for (std::size_t i = 0; i < free_cols.size(); ++i) {
        const std::size_t fc = free_cols[i];
        K(i, fc) = 1;
        for (std::size_t r = 0; r < res.rank; ++r) K(i, res.pivots[r]) = f.neg(res.reduced(r, fc));
    }
    return K;
}

/// True iff the selected columns of M are linearly independent.
inline bool columns_independent(const MatrixGF& M, std::span<const std::size_t> S) {
    for (auto c : S)
        if (c >= M.cols()) throw PreconditionError("column index out of range");
    if (S.size() > M.rows()) return false;
    return rank(M.select_columns(S)) == S.size();
}

/// Whether A and B span the same row space.
inline bool same_row_space(const MatrixGF& A, const MatrixGF& B) {
    A.require_same_field(B);
    if (A.cols() != B.cols()) return false;
    return row_basis(A) == row_basis(B);
}

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<MatrixGF> inverse(const MatrixGF& M) {
    if (M.rows() != M.cols()) throw PreconditionError("inverse of a non-square matrix");
    const std::size_t n = M.rows();
    MatrixGF aug(M.field(), n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = M(r, c);
        aug(r, n + r) = 1;
    }
    auto res = rref(aug);
    if (res.rank < n || (n > 0 && res.pivots[n - 1] != n - 1)) return std::nullopt;
    MatrixGF inv(M.field(), n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = res.reduced(r, n + c);
    return inv;
}

/// Matrix text format: optional field descriptor line (m > 1), then
/// `p m nrows ncols`, then one line of integer-encoded entries per row.
inline std::string to_text(const MatrixGF& M) {
    std::ostringstream os;
    const Field& f = M.field();
    if (f.m() > 1) os << f.descriptor() << '\n';
    os << f.p() << ' ' << f.m() << ' ' << M.rows() << ' ' << M.cols() << '\n';
    for (std::size_t r = 0; r < M.rows(); ++r) {
        for (std::size_t c = 0; c < M.cols(); ++c) os << (c ? " " : "") << M(r, c);
        os << '\n';
    }
    return os.str();
}

inline MatrixGF parse_matrix_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    auto next_line = [&]() -> std::string {
        while (std::getline(is, line))
            if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
        throw ParseError("unexpected end of matrix text");
    };
    std::string first = next_line();
    std::vector<long long> nums;
    {
        std::istringstream ls(first);
        long long v;
        while (ls >> v) nums.push_back(v);
    }
    std::optional<Field> field;
    std::string header = first;
    if (nums.size() >= 2 && nums[1] > 1 && nums.size() == static_cast<std::size_t>(nums[1]) + 3) {
        field = Field::parse_descriptor(first);
        header = next_line();
    }
    std::istringstream hs(header);
    long long p, m, rows, cols;
    if (!(hs >> p >> m >> rows >> cols) || p < 2 || m < 1 || rows < 0 || cols < 0)
        throw ParseError("bad matrix header: " + header);
    if (!field) {
        if (m != 1) throw ParseError("extension-field matrix requires a field descriptor line");
        if (!is_prime(static_cast<std::uint64_t>(p))) throw ParseError("non-prime field in matrix header");
        field = Field::make(static_cast<std::uint32_t>(p), 1);
    } else if (field->p() != p || field->m() != m) {
        throw ParseError("matrix header disagrees with field descriptor");
    }
    std::vector<Elem> data;
    data.reserve(static_cast<std::size_t>(rows * cols));
    for (long long r = 0; r < rows; ++r) {
        std::istringstream ls(next_line());
        long long v;
        long long count = 0;
        while (ls >> v) {
            if (v < 0 || !field->contains(static_cast<std::uint64_t>(v))) throw ParseError("matrix entry outside field");
            data.push_back(static_cast<Elem>(v));
            ++count;
        }
        if (count != cols) throw ParseError("matrix row has wrong number of entries");
    }
    return MatrixGF(*field, static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(data));
}

}  // namespace lrc
