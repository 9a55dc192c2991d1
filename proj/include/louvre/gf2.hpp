#pragma once
// Dense GF(2) linear algebra on bit-packed rows.
#include <cassert>
#include <cstdint>
#include <vector>

namespace louvre {

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(size_t(rows) * words_, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const { return (word(r, c / 64) >> (c % 64)) & 1u; }
    void set(int r, int c, bool v = true) {
        uint64_t& w = word(r, c / 64);
        if (v) w |= uint64_t(1) << (c % 64);
        else w &= ~(uint64_t(1) << (c % 64));
    }
    void flip(int r, int c) { word(r, c / 64) ^= uint64_t(1) << (c % 64); }

    // row[dst] ^= row[src]
    void row_xor(int dst, int src) {
        uint64_t* d = &bits_[size_t(dst) * words_];
        const uint64_t* s = &bits_[size_t(src) * words_];
        for (int w = 0; w < words_; ++w) d[w] ^= s[w];
    }

    int row_weight(int r) const {
        int n = 0;
        for (int w = 0; w < words_; ++w) n += __builtin_popcountll(word(r, w));
        return n;
    }

    bool row_is_zero(int r) const {
        for (int w = 0; w < words_; ++w)
            if (word(r, w)) return false;
        return true;
    }

    // Parity of <row r of *this, row s of other>; requires same column count.
    bool row_dot(int r, const BitMatrix& other, int s) const {
        assert(cols_ == other.cols_);
        uint64_t acc = 0;
        for (int w = 0; w < words_; ++w) acc ^= word(r, w) & other.word(s, w);
        return __builtin_popcountll(acc) & 1;
    }

    int rank() const {
        BitMatrix m = *this;
        return m.eliminate();
    }

    // In-place Gaussian elimination (row echelon, deterministic column-pivot order).
    // Returns rank; pivot columns appended to *pivots if given.
    int eliminate(std::vector<int>* pivots = nullptr) {
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int p = -1;
            for (int i = r; i < rows_; ++i)
                if (get(i, c)) { p = i; break; }
            if (p < 0) continue;
            swap_rows(p, r);
            for (int i = 0; i < rows_; ++i)
                if (i != r && get(i, c)) row_xor(i, r);
            if (pivots) pivots->push_back(c);
            ++r;
        }
        return r;
    }

    // True iff this * other^T == 0 over GF(2).
    bool product_with_transpose_is_zero(const BitMatrix& other) const {
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < other.rows_; ++j)
                if (row_dot(i, other, j)) return false;
        return true;
    }

    // True iff v (as column set bitmask rows of length cols) lies in the row span.
    bool in_row_span(const std::vector<uint64_t>& v) const {
        assert(int(v.size()) == words_);
        BitMatrix m(rows_ + 1, cols_);
        for (int r = 0; r < rows_; ++r)
            for (int w = 0; w < words_; ++w) m.word(r, w) = word(r, w);
        for (int w = 0; w < words_; ++w) m.word(rows_, w) = v[w];
        return m.eliminate() == rank();
    }

    // Basis of the null space {x : M x = 0}, each vector packed as words over cols_ bits.
    std::vector<std::vector<uint64_t>> null_space_basis() const {
        BitMatrix m = *this;
        std::vector<int> pivots;
        m.eliminate(&pivots);
        std::vector<bool> is_pivot(cols_, false);
        for (int c : pivots) is_pivot[c] = true;
        std::vector<std::vector<uint64_t>> basis;
        for (int c = 0; c < cols_; ++c) {
            if (is_pivot[c]) continue;
            std::vector<uint64_t> v(words_, 0);
            v[c / 64] |= uint64_t(1) << (c % 64);
            // Back-substitute: pivot row i has pivot column pivots[i].
            for (size_t i = 0; i < pivots.size(); ++i)
                if (m.get(int(i), c)) v[pivots[i] / 64] ^= uint64_t(1) << (pivots[i] % 64);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
    }

private:
    uint64_t& word(int r, int w) { return bits_[size_t(r) * words_ + w]; }
    const uint64_t& word(int r, int w) const { return bits_[size_t(r) * words_ + w]; }
    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int w = 0; w < words_; ++w) std::swap(word(a, w), word(b, w));
    }

    int rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<uint64_t> bits_;
};

}  // namespace louvre
