#pragma once

// Bit-packed linear algebra over GF(2).
//
// Conventions used throughout the library:
//  * BitVector / BitMatrix are immutable value types: every operation
//    returns a new object, inputs are never modified.
//  * Bit i of a BitVector is stored in word i/64, bit i%64.
//  * Symplectic vectors of length 2n keep the X part in bits [0, n) and
//    the Z part in bits [n, 2n) ("X half | Z half", not interleaved).
//    The symplectic product of u and v is u_X.v_Z + u_Z.v_X (mod 2); over
//    GF(2) it is symmetric, and two Pauli operators commute exactly when
//    the product of their symplectic vectors is 0.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cssbell::gf2 {

class BitVector {
public:
    BitVector() = default;

    explicit BitVector(std::size_t size)
        : size_(size), words_((size + 63) / 64, 0) {}

    // Parses "0101..."; anything but '0'/'1' is rejected.
    static BitVector from_string(std::string_view bits) {
        BitVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1') {
                v.set_bit(i);
            } else if (bits[i] != '0') {
                throw std::invalid_argument("BitVector::from_string: expected only '0'/'1', got '" +
                                            std::string(1, bits[i]) + "'");
            }
        }
        return v;
    }

    static BitVector from_indices(std::size_t size, std::initializer_list<std::size_t> ones) {
        return from_indices(size, std::vector<std::size_t>(ones));
    }

    static BitVector from_indices(std::size_t size, const std::vector<std::size_t>& ones) {
        BitVector v(size);
        for (std::size_t i : ones) {
            v.check_index(i);
            v.set_bit(i);
        }
        return v;
    }

    static BitVector unit(std::size_t size, std::size_t index) {
        return from_indices(size, {index});
    }

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const {
        check_index(i);
        return (words_[i / 64] >> (i % 64)) & 1u;
    }

    // Returns a copy with bit i set to the given value.
    BitVector with_bit(std::size_t i, bool value) const {
        check_index(i);
        BitVector v(*this);
        if (value) {
            v.set_bit(i);
        } else {
            v.words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
        }
        return v;
    }

    std::size_t weight() const {
        std::size_t w = 0;
        for (std::uint64_t word : words_) {
            w += static_cast<std::size_t>(std::popcount(word));
        }
        return w;
    }

    bool is_zero() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < size_; ++i) {
            if (get(i)) {
                idx.push_back(i);
            }
        }
        return idx;
    }

    BitVector operator^(const BitVector& other) const {
        check_same_size(other);
        BitVector v(*this);
        for (std::size_t w = 0; w < words_.size(); ++w) {
            v.words_[w] ^= other.words_[w];
        }
        return v;
    }

    // Inner product over GF(2).
    bool dot(const BitVector& other) const {
        check_same_size(other);
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            acc ^= words_[w] & other.words_[w];
        }
        return std::popcount(acc) & 1;
    }

    bool operator==(const BitVector& other) const {
        return size_ == other.size_ && words_ == other.words_;
    }

    // Lexicographic by bit string, for deterministic ordering of results.
    bool operator<(const BitVector& other) const {
        check_same_size(other);
        for (std::size_t i = 0; i < size_; ++i) {
            bool a = get(i);
            bool b = other.get(i);
            if (a != b) {
                return b;
            }
        }
        return false;
    }

    std::string to_string() const {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i) {
            if (get(i)) {
                s[i] = '1';
            }
        }
        return s;
    }

    // Low 64 bits as a machine word; requires size() <= 64. Used by the
    // enumeration engine, which packs whole symplectic vectors into words.
    std::uint64_t to_u64() const {
        if (size_ > 64) {
            throw std::invalid_argument("BitVector::to_u64: vector longer than 64 bits");
        }
        return words_.empty() ? 0 : words_[0];
    }

    static BitVector from_u64(std::size_t size, std::uint64_t bits) {
        if (size > 64) {
            throw std::invalid_argument("BitVector::from_u64: vector longer than 64 bits");
        }
        BitVector v(size);
        if (size > 0) {
            std::uint64_t mask = size == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size) - 1);
            v.words_[0] = bits & mask;
        }
        return v;
    }

private:
    void set_bit(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

    void check_index(std::size_t i) const {
        if (i >= size_) {
            throw std::out_of_range("BitVector: index " + std::to_string(i) + " out of range for size " +
                                    std::to_string(size_));
        }
    }

    void check_same_size(const BitVector& other) const {
        if (size_ != other.size_) {
            throw std::invalid_argument("BitVector: size mismatch (" + std::to_string(size_) + " vs " +
                                        std::to_string(other.size_) + ")");
        }
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;

    friend class BitMatrix;
};

class BitMatrix {
public:
    BitMatrix() = default;

    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows, BitVector(cols)) {}

    static BitMatrix from_rows(std::vector<BitVector> rows) {
        BitMatrix m;
        m.rows_ = rows.size();
        m.cols_ = rows.empty() ? 0 : rows.front().size();
        for (const BitVector& r : rows) {
            if (r.size() != m.cols_) {
                throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
            }
        }
        m.data_ = std::move(rows);
        return m;
    }

    static BitMatrix from_strings(std::initializer_list<std::string_view> rows) {
        std::vector<BitVector> parsed;
        parsed.reserve(rows.size());
        for (std::string_view r : rows) {
            parsed.push_back(BitVector::from_string(r));
        }
        return from_rows(std::move(parsed));
    }

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m.data_[i] = BitVector::unit(n, i);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const BitVector& row(std::size_t i) const {
        if (i >= rows_) {
            throw std::out_of_range("BitMatrix: row " + std::to_string(i) + " out of range");
        }
        return data_[i];
    }

    const std::vector<BitVector>& row_vectors() const { return data_; }

    bool get(std::size_t r, std::size_t c) const { return row(r).get(c); }

    bool operator==(const BitMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

    BitMatrix transpose() const {
        BitMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                if (data_[r].get(c)) {
                    t.data_[c].set_bit(r);
                }
            }
        }
        return t;
    }

    // Rows of `top` followed by rows of `bottom`.
    static BitMatrix vstack(const BitMatrix& top, const BitMatrix& bottom) {
        if (top.cols() != bottom.cols() && top.rows() != 0 && bottom.rows() != 0) {
            throw std::invalid_argument("BitMatrix::vstack: column count mismatch");
        }
        std::vector<BitVector> rows = top.data_;
        rows.insert(rows.end(), bottom.data_.begin(), bottom.data_.end());
        BitMatrix m;
        m.rows_ = rows.size();
        m.cols_ = top.rows() != 0 ? top.cols() : bottom.cols();
        m.data_ = std::move(rows);
        return m;
    }

    std::vector<std::string> to_strings() const {
        std::vector<std::string> out;
        out.reserve(rows_);
        for (const BitVector& r : data_) {
            out.push_back(r.to_string());
        }
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BitVector> data_;
};

struct RrefResult {
    BitMatrix reduced;                       // reduced row echelon form, zero rows at the bottom
    std::size_t rank = 0;                    // number of nonzero rows of `reduced`
    std::vector<std::size_t> pivot_columns;  // strictly increasing, one per nonzero row
};

// Reduced row echelon form by Gauss-Jordan elimination.
inline RrefResult rref(const BitMatrix& m) {
    RrefResult res;
    std::vector<BitVector> rows = m.row_vectors();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && !rows[pivot].get(c)) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[pivot]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != r && rows[i].get(c)) {
                rows[i] = rows[i] ^ rows[r];
            }
        }
        res.pivot_columns.push_back(c);
        ++r;
    }
    res.rank = r;
    res.reduced = BitMatrix::from_rows(std::move(rows));
    return res;
}

inline std::size_t rank(const BitMatrix& m) { return rref(m).rank; }

// Basis of { v : M v = 0 }, one vector per free column (cols() - rank many),
// ordered by free column index. Each basis vector has a 1 in "its" free
// column and 0 in every other free column.
inline std::vector<BitVector> kernel_basis(const BitMatrix& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : rr.pivot_columns) {
        is_pivot[c] = true;
    }
    std::vector<BitVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<std::size_t> ones{f};
        for (std::size_t i = 0; i < rr.pivot_columns.size(); ++i) {
            if (rr.reduced.get(i, f)) {
                ones.push_back(rr.pivot_columns[i]);
            }
        }
        basis.push_back(BitVector::from_indices(m.cols(), ones));
    }
    return basis;
}

// True iff v lies in the row space of m.
inline bool in_row_space(const BitMatrix& m, const BitVector& v) {
    if (v.is_zero()) {
        return true;
    }
    return rank(m) == rank(BitMatrix::vstack(m, BitMatrix::from_rows({v})));
}

// Inverse of a square matrix; throws std::invalid_argument if singular.
inline BitMatrix inverse(const BitMatrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("gf2::inverse: matrix is not square");
    }
    std::size_t n = m.rows();
    std::vector<BitVector> aug;
    aug.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // [ M | I ] packed as one 2n-bit row.
        std::vector<std::size_t> ones = m.row(i).support();
        ones.push_back(n + i);
        aug.push_back(BitVector::from_indices(2 * n, ones));
    }
    RrefResult rr = rref(BitMatrix::from_rows(std::move(aug)));
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= rr.pivot_columns.size() || rr.pivot_columns[i] != i) {
            throw std::invalid_argument("gf2::inverse: matrix is singular");
        }
    }
    std::vector<BitVector> inv_rows;
    inv_rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> ones;
        for (std::size_t c = 0; c < n; ++c) {
            if (rr.reduced.get(i, n + c)) {
                ones.push_back(c);
            }
        }
        inv_rows.push_back(BitVector::from_indices(n, ones));
    }
    return BitMatrix::from_rows(std::move(inv_rows));
}

// Incrementally maintained row-echelon basis supporting fast membership
// tests: reduce(v) peels v at each stored pivot in increasing column order,
// so the remainder is zero exactly when v lies in the span. insert() keeps
// the rows in echelon form (each row's leading 1 at a distinct pivot
// column, rows ordered by pivot), which is all reduce() needs.
class ReducedRowBasis {
public:
    ReducedRowBasis() = default;

    explicit ReducedRowBasis(const BitMatrix& m) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            insert(m.row(i));
        }
    }

    explicit ReducedRowBasis(const std::vector<BitVector>& rows) {
        for (const BitVector& r : rows) {
            insert(r);
        }
    }

    // Adds v to the basis; returns false (and changes nothing) if v is
    // already in the span.
    bool insert(const BitVector& v) {
        BitVector w = reduce(v);
        if (w.is_zero()) {
            return false;
        }
        std::size_t pivot = leading_index(w);
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
        rows_.insert(rows_.begin() + (pos - pivots_.begin()), w);
        pivots_.insert(pos, pivot);
        return true;
    }

    BitVector reduce(BitVector v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (v.get(pivots_[i])) {
                v = v ^ rows_[i];
            }
        }
        return v;
    }

    bool contains(const BitVector& v) const { return reduce(v).is_zero(); }

    std::size_t rank() const { return rows_.size(); }

private:
    static std::size_t leading_index(const BitVector& v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v.get(i)) {
                return i;
            }
        }
        throw std::logic_error("ReducedRowBasis: zero vector has no leading index");
    }

    std::vector<BitVector> rows_;     // echelon rows, ordered by pivot column
    std::vector<std::size_t> pivots_;  // pivots_[i] = leading column of rows_[i]
};

// Symplectic product of two vectors of even length 2n laid out as
// [X half | Z half]: u_X.v_Z + u_Z.v_X (mod 2). Symmetric over GF(2).
inline bool symplectic_product(const BitVector& u, const BitVector& v) {
    if (u.size() != v.size() || u.size() % 2 != 0) {
        throw std::invalid_argument("symplectic_product: vectors must share an even length");
    }
    std::size_t n = u.size() / 2;
    bool acc = false;
    for (std::size_t i = 0; i < n; ++i) {
        acc ^= (u.get(i) && v.get(n + i));
        acc ^= (u.get(n + i) && v.get(i));
    }
    return acc;
}

// Enumerates all 2^r vectors spanned by r independent basis vectors in
// Gray-code order: consecutive vectors differ by exactly one basis element
// (element i of the sequence is the XOR of basis vectors selected by
// i ^ (i >> 1)). Rejects dependent bases, which would enumerate duplicates.
class SpanEnumeration {
public:
    explicit SpanEnumeration(std::vector<BitVector> basis) : basis_(std::move(basis)) {
        if (basis_.empty()) {
            throw std::invalid_argument("enumerate_span: empty basis");
        }
        if (basis_.size() >= 64) {
            throw std::invalid_argument("enumerate_span: basis too large to enumerate");
        }
        if (rank(BitMatrix::from_rows(basis_)) != basis_.size()) {
            throw std::invalid_argument("enumerate_span: basis vectors are linearly dependent");
        }
    }

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = BitVector;
        using difference_type = std::ptrdiff_t;
        using pointer = const BitVector*;
        using reference = const BitVector&;

        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }

        iterator& operator++() {
            ++index_;
            if (index_ < (std::uint64_t{1} << owner_->basis_.size())) {
                // Gray code: step i flips the basis element indexed by the
                // lowest set bit of i.
                std::size_t flip = static_cast<std::size_t>(std::countr_zero(index_));
                current_ = current_ ^ owner_->basis_[flip];
            }
            return *this;
        }

        bool operator==(const iterator& other) const { return index_ == other.index_; }

    private:
        friend class SpanEnumeration;
        iterator(const SpanEnumeration* owner, std::uint64_t index)
            : owner_(owner), index_(index),
              current_(owner->basis_.front().size()) {}

        const SpanEnumeration* owner_;
        std::uint64_t index_;
        BitVector current_;
    };

    iterator begin() const { return iterator(this, 0); }
    iterator end() const { return iterator(this, std::uint64_t{1} << basis_.size()); }

    std::uint64_t size() const { return std::uint64_t{1} << basis_.size(); }

private:
    std::vector<BitVector> basis_;
};

inline SpanEnumeration enumerate_span(std::vector<BitVector> basis) {
    return SpanEnumeration(std::move(basis));
}

}  // namespace cssbell::gf2
