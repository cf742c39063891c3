#ifndef SDRED_GF2_HPP
#define SDRED_GF2_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sdred/errors.hpp"

namespace sdred {

using Support = std::vector<std::size_t>; // strictly increasing row indices

// Packed GF(2) vector. Bits beyond size() are kept zero so that
// whole-word operations (xor, popcount, compare) need no special casing.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), words_(word_count(len), 0) {}

    static BitVector ones(std::size_t len);
    static BitVector from_string(std::string_view bits); // characters '0'/'1'

    std::size_t size() const { return len_; }

    bool get(std::size_t i) const {
        check_index(i);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool value = true) {
        check_index(i);
        if (value)
            words_[i >> 6] |= std::uint64_t(1) << (i & 63);
        else
            words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }
    void flip(std::size_t i) {
        check_index(i);
        words_[i >> 6] ^= std::uint64_t(1) << (i & 63);
    }

    std::size_t weight() const;
    bool is_zero() const;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    bool operator==(const BitVector&) const = default;

    Support support() const; // indices of set bits, ascending
    std::string to_string() const;

private:
    static std::size_t word_count(std::size_t len) { return (len + 63) / 64; }
    void check_index(std::size_t i) const {
        if (i >= len_)
            throw DimensionError("bit index " + std::to_string(i) + " out of range (len " +
                                 std::to_string(len_) + ")");
    }

    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

// Dense GF(2) matrix in the row-selection convention used throughout:
// n rows are word positions, r columns are syndrome coordinates, and a
// word y picks a subset of rows whose xor is its syndrome.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t n, std::size_t r) : rows_(n, BitVector(r)), cols_(r) {}

    static BitMatrix identity(std::size_t k);
    static BitMatrix zeros(std::size_t n, std::size_t r) { return BitMatrix(n, r); }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t i, std::size_t j) const { return row(i).get(j); }
    void set(std::size_t i, std::size_t j, bool value = true) { row_mut(i).set(j, value); }

    const BitVector& row(std::size_t i) const {
        check_row(i);
        return rows_[i];
    }
    // Assigned vector must have length cols().
    void set_row(std::size_t i, BitVector v);

    bool operator==(const BitMatrix&) const = default;

private:
    BitVector& row_mut(std::size_t i) {
        check_row(i);
        return rows_[i];
    }
    void check_row(std::size_t i) const {
        if (i >= rows_.size())
            throw DimensionError("row index " + std::to_string(i) + " out of range (n " +
                                 std::to_string(rows_.size()) + ")");
    }

    std::vector<BitVector> rows_;
    std::size_t cols_ = 0;
};

// All-ones row vector of length r (the coset-reduction syndrome).
BitVector ones_row(std::size_t r);

// Syndrome of the word whose support is the given strictly increasing set
// of row indices: the xor of the selected rows of H.
BitVector syndrome(const Support& support, const BitMatrix& H);

// GF(2) row rank.
std::size_t rank(const BitMatrix& H);

// Basis of the left nullspace { y : yH = 0 }, one support per basis word.
// Pivots are claimed greedily at the lowest row index, so the basis (and any
// enumeration built on it) is reproducible. Basis words are ordered by their
// highest (dependent) row index, ascending.
std::vector<BitVector> nullspace_basis(const BitMatrix& H);

// All 2^(n - rank) left-nullspace words as supports, including the empty
// word, in lexicographic order over the fixed basis: word k is the xor of
// basis words selected by the binary digits of k.
// Throws DimensionTooLarge when n - rank(H) > max_dim.
std::vector<Support> nullspace_enumerate(const BitMatrix& H, std::size_t max_dim);

// Block assembly; dimensions must agree.
BitMatrix hstack(const BitMatrix& left, const BitMatrix& right);
BitMatrix vstack(const BitMatrix& top, const BitMatrix& bottom);

// Text formats. Matrix: first line "n r", then n lines of exactly r
// characters from {0,1}. Vector: a single line of 0/1 characters.
std::string serialize(const BitMatrix& m);
std::string serialize(const BitVector& v);
BitMatrix parse_matrix(std::istream& in);
BitMatrix parse_matrix(const std::string& text);
BitVector parse_vector(const std::string& line);

} // namespace sdred

#endif
