#include "sdred/gf2.hpp"

#include <bit>
#include <istream>
#include <sstream>

namespace sdred {

BitVector BitVector::ones(std::size_t len) {
    BitVector v(len);
    for (auto& w : v.words_)
        w = ~std::uint64_t(0);
    if (len & 63)
        v.words_.back() &= (std::uint64_t(1) << (len & 63)) - 1; // tail mask
    return v;
}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(i);
        else if (bits[i] != '0')
            throw ParseError("bit string contains '" + std::string(1, bits[i]) +
                             "' at position " + std::to_string(i));
    }
    return v;
}

std::size_t BitVector::weight() const {
    std::size_t w = 0;
    for (auto word : words_)
        w += std::popcount(word);
    return w;
}

bool BitVector::is_zero() const {
    for (auto word : words_)
        if (word != 0)
            return false;
    return true;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (len_ != other.len_)
        throw DimensionError("xor of vectors of length " + std::to_string(len_) + " and " +
                             std::to_string(other.len_));
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] ^= other.words_[i];
    return *this;
}

Support BitVector::support() const {
    Support s;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t word = words_[w];
        while (word) {
            s.push_back(w * 64 + std::size_t(std::countr_zero(word)));
            word &= word - 1;
        }
    }
    return s;
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i))
            s[i] = '1';
    return s;
}

BitMatrix BitMatrix::identity(std::size_t k) {
    BitMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
        m.set(i, i);
    return m;
}

void BitMatrix::set_row(std::size_t i, BitVector v) {
    check_row(i);
    if (v.size() != cols_)
        throw DimensionError("row of length " + std::to_string(v.size()) +
                             " assigned to matrix with r=" + std::to_string(cols_));
    rows_[i] = std::move(v);
}

BitVector ones_row(std::size_t r) { return BitVector::ones(r); }

BitVector syndrome(const Support& support, const BitMatrix& H) {
    BitVector s(H.cols());
    std::size_t prev = 0;
    bool first = true;
    for (std::size_t idx : support) {
        if (idx >= H.rows())
            throw DimensionError("support index " + std::to_string(idx) +
                                 " out of range (n " + std::to_string(H.rows()) + ")");
        if (!first && idx <= prev)
            throw DimensionError("support indices must be strictly increasing");
        prev = idx;
        first = false;
        s ^= H.row(idx);
    }
    return s;
}

namespace {

// Shared elimination: reduces rows in index order, returning the pivot
// combinations and, for each dependent row, the combination (over original
// row indices) that witnesses the dependency. Those witnesses are exactly a
// left-nullspace basis.
struct Elimination {
    std::vector<BitVector> pivot_rows;  // reduced, nonzero
    std::vector<BitVector> pivot_masks; // combination over original rows
    std::vector<std::size_t> pivot_cols;
    std::vector<BitVector> null_basis; // masks of dependent rows
};

Elimination eliminate(const BitMatrix& H) {
    Elimination e;
    const std::size_t n = H.rows();
    for (std::size_t i = 0; i < n; ++i) {
        BitVector row = H.row(i);
        BitVector mask(n);
        mask.set(i);
        for (std::size_t p = 0; p < e.pivot_rows.size(); ++p) {
            if (row.get(e.pivot_cols[p])) {
                row ^= e.pivot_rows[p];
                mask ^= e.pivot_masks[p];
            }
        }
        Support nz = row.support();
        if (nz.empty()) {
            e.null_basis.push_back(std::move(mask));
        } else {
            e.pivot_cols.push_back(nz.front());
            e.pivot_rows.push_back(std::move(row));
            e.pivot_masks.push_back(std::move(mask));
        }
    }
    return e;
}

} // namespace

std::size_t rank(const BitMatrix& H) { return eliminate(H).pivot_rows.size(); }

std::vector<BitVector> nullspace_basis(const BitMatrix& H) {
    return std::move(eliminate(H).null_basis);
}

std::vector<Support> nullspace_enumerate(const BitMatrix& H, std::size_t max_dim) {
    auto basis = nullspace_basis(H);
    const std::size_t dim = basis.size();
    if (dim > max_dim)
        throw DimensionTooLarge("nullspace dimension " + std::to_string(dim) +
                                " exceeds cap " + std::to_string(max_dim));
    std::vector<Support> words;
    words.reserve(std::size_t(1) << dim);
    for (std::uint64_t k = 0; k < (std::uint64_t(1) << dim); ++k) {
        BitVector word(H.rows());
        for (std::size_t j = 0; j < dim; ++j)
            if ((k >> j) & 1)
                word ^= basis[j];
        words.push_back(word.support());
    }
    return words;
}

BitMatrix hstack(const BitMatrix& left, const BitMatrix& right) {
    if (left.rows() != right.rows())
        throw DimensionError("hstack row mismatch: " + std::to_string(left.rows()) + " vs " +
                             std::to_string(right.rows()));
    BitMatrix out(left.rows(), left.cols() + right.cols());
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < left.cols(); ++j)
            if (left.get(i, j))
                out.set(i, j);
        for (std::size_t j = 0; j < right.cols(); ++j)
            if (right.get(i, j))
                out.set(i, left.cols() + j);
    }
    return out;
}

BitMatrix vstack(const BitMatrix& top, const BitMatrix& bottom) {
    if (top.cols() != bottom.cols())
        throw DimensionError("vstack column mismatch: " + std::to_string(top.cols()) + " vs " +
                             std::to_string(bottom.cols()));
    BitMatrix out(top.rows() + bottom.rows(), top.cols());
    for (std::size_t i = 0; i < top.rows(); ++i)
        out.set_row(i, top.row(i));
    for (std::size_t i = 0; i < bottom.rows(); ++i)
        out.set_row(top.rows() + i, bottom.row(i));
    return out;
}

std::string serialize(const BitMatrix& m) {
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i)
        out << m.row(i).to_string() << '\n';
    return out.str();
}

std::string serialize(const BitVector& v) { return v.to_string() + "\n"; }

BitMatrix parse_matrix(std::istream& in) {
    std::size_t n = 0, r = 0;
    if (!(in >> n >> r))
        throw ParseError("matrix header: expected \"n r\"");
    std::string line;
    std::getline(in, line); // rest of header line
    BitMatrix m(n, r);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw ParseError("matrix row " + std::to_string(i) + ": unexpected end of input");
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.size() != r)
            throw ParseError("matrix row " + std::to_string(i) + ": expected " +
                             std::to_string(r) + " characters, got " +
                             std::to_string(line.size()));
        m.set_row(i, BitVector::from_string(line));
    }
    return m;
}

BitMatrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix(in);
}

BitVector parse_vector(const std::string& line) {
    std::string s = line;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r'))
        s.pop_back();
    return BitVector::from_string(s);
}

} // namespace sdred
