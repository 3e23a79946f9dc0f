#ifndef BCHLAB_GF2_MATRIX_HPP
#define BCHLAB_GF2_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bchlab/error.hpp"
#include "bchlab/gf2/bits.hpp"

namespace bchlab {

/// Dense GF(2) matrix with bit-packed rows.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), stride_(bits::words_for(static_cast<std::size_t>(cols))),
          data_(static_cast<std::size_t>(rows) * stride_, 0) {}

    static BitMatrix identity(int k) {
        BitMatrix m(k, k);
        for (int i = 0; i < k; ++i) m.set(i, i, true);
        return m;
    }

    static BitMatrix from_rows(const std::vector<std::vector<int>>& rows) {
        const int r = static_cast<int>(rows.size());
        const int c = r ? static_cast<int>(rows[0].size()) : 0;
        BitMatrix m(r, c);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c)
                throw Error(ErrorCode::LengthMismatch, "ragged matrix rows");
            for (int j = 0; j < c; ++j) m.set(i, j, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0);
        }
        return m;
    }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    std::span<bits::Word> row(int i) noexcept {
        return {data_.data() + static_cast<std::size_t>(i) * stride_, stride_};
    }
    std::span<const bits::Word> row(int i) const noexcept {
        return {data_.data() + static_cast<std::size_t>(i) * stride_, stride_};
    }

    bool get(int i, int j) const noexcept { return bits::test(row(i), static_cast<std::size_t>(j)); }
    void set(int i, int j, bool v) noexcept {
        if (v)
            bits::set(row(i), static_cast<std::size_t>(j));
        else
            bits::reset(row(i), static_cast<std::size_t>(j));
    }

    void swap_rows(int a, int b) noexcept {
        if (a == b) return;
        auto ra = row(a), rb = row(b);
        for (std::size_t w = 0; w < stride_; ++w) std::swap(ra[w], rb[w]);
    }
    /// row(dst) ^= row(src)
    void add_row(int dst, int src) noexcept {
        auto rd = row(dst);
        auto rs = row(src);
        for (std::size_t w = 0; w < stride_; ++w) rd[w] ^= rs[w];
    }

    std::vector<std::vector<int>> to_rows() const {
        std::vector<std::vector<int>> out(static_cast<std::size_t>(rows_), std::vector<int>(static_cast<std::size_t>(cols_)));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = get(i, j);
        return out;
    }

    /// Submatrix with the given rows and columns, in the given order.
    BitMatrix select(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
        BitMatrix m(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
        for (std::size_t i = 0; i < row_idx.size(); ++i)
            for (std::size_t j = 0; j < col_idx.size(); ++j)
                m.set(static_cast<int>(i), static_cast<int>(j), get(row_idx[i], col_idx[j]));
        return m;
    }

    /// Reduced row echelon form in place, scanning columns in the given order
    /// (natural order when empty). Returns the pivot columns in scan order.
    std::vector<int> rref(const std::vector<int>& col_order = {}) {
        std::vector<int> pivots;
        int r = 0;
        const int ncols = col_order.empty() ? cols_ : static_cast<int>(col_order.size());
        for (int t = 0; t < ncols && r < rows_; ++t) {
            const int c = col_order.empty() ? t : col_order[static_cast<std::size_t>(t)];
            int p = -1;
            for (int i = r; i < rows_; ++i)
                if (get(i, c)) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            swap_rows(r, p);
            for (int i = 0; i < rows_; ++i)
                if (i != r && get(i, c)) add_row(i, r);
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    int rank() const {
        BitMatrix tmp = *this;
        return static_cast<int>(tmp.rref().size());
    }

    /// Inverse of a square matrix, or nullopt if singular.
    std::optional<BitMatrix> inverse() const {
        if (rows_ != cols_) throw Error(ErrorCode::InvalidArgument, "inverse of non-square matrix");
        const int k = rows_;
        BitMatrix aug(k, 2 * k);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) aug.set(i, j, get(i, j));
            aug.set(i, k + i, true);
        }
        std::vector<int> order(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) order[static_cast<std::size_t>(j)] = j;
        if (static_cast<int>(aug.rref(order).size()) < k) return std::nullopt;
        BitMatrix inv(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) inv.set(i, j, aug.get(i, k + j));
        return inv;
    }

    friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
        if (a.cols_ != b.rows_) throw Error(ErrorCode::LengthMismatch, "matrix product shape mismatch");
        BitMatrix out(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int t = 0; t < a.cols_; ++t)
                if (a.get(i, t)) {
                    auto ro = out.row(i);
                    auto rb = b.row(t);
                    for (std::size_t w = 0; w < out.stride_; ++w) ro[w] ^= rb[w];
                }
        return out;
    }

    /// Row vector times matrix.
    std::vector<int> left_multiply(const std::vector<int>& v) const {
        if (static_cast<int>(v.size()) != rows_) throw Error(ErrorCode::LengthMismatch, "vector length");
        std::vector<int> out(static_cast<std::size_t>(cols_), 0);
        for (int i = 0; i < rows_; ++i)
            if (v[static_cast<std::size_t>(i)])
                for (int j = 0; j < cols_; ++j) out[static_cast<std::size_t>(j)] ^= get(i, j) ? 1 : 0;
        return out;
    }

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) noexcept {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string to_string() const {
        std::string s;
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) s += get(i, j) ? '1' : '0';
            s += '\n';
        }
        return s;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<bits::Word> data_;
};

/// True iff the two matrices (same column count) span the same row space.
inline bool same_row_space(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.cols()) return false;
    BitMatrix ra = a, rb = b;
    const int ka = static_cast<int>(ra.rref().size());
    const int kb = static_cast<int>(rb.rref().size());
    if (ka != kb) return false;
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (ra.get(i, j) != rb.get(i, j)) return false;
    return true;
}

} // namespace bchlab

#endif // BCHLAB_GF2_MATRIX_HPP
