#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <bit>
#include <random>
#include <set>

#include "sdred/gf2.hpp"

using namespace sdred;

namespace {

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t r) {
    BitMatrix m(n, r);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (rng() & 1)
                m.set(i, j);
    return m;
}

// Column-by-column parity count, deliberately nothing like the packed xor.
BitVector syndrome_oracle(const Support& sup, const BitMatrix& H) {
    BitVector s(H.cols());
    for (std::size_t j = 0; j < H.cols(); ++j) {
        int parity = 0;
        for (std::size_t i : sup)
            parity ^= H.get(i, j) ? 1 : 0;
        if (parity)
            s.set(j);
    }
    return s;
}

// Highest-bit xor basis over rows packed into uint64 (needs r <= 64).
std::size_t rank_oracle(const BitMatrix& H) {
    REQUIRE(H.cols() <= 64);
    std::array<std::uint64_t, 64> slot{};
    std::size_t rk = 0;
    for (std::size_t i = 0; i < H.rows(); ++i) {
        std::uint64_t v = 0;
        for (std::size_t j = 0; j < H.cols(); ++j)
            if (H.get(i, j))
                v |= std::uint64_t(1) << j;
        while (v) {
            const int hb = 63 - std::countl_zero(v);
            if (!slot[std::size_t(hb)]) {
                slot[std::size_t(hb)] = v;
                ++rk;
                break;
            }
            v ^= slot[std::size_t(hb)];
        }
    }
    return rk;
}

// Every subset of rows, kept when its xor vanishes (needs n <= 16).
std::set<Support> nullspace_oracle(const BitMatrix& H) {
    REQUIRE(H.rows() <= 16);
    std::set<Support> words;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << H.rows()); ++mask) {
        Support sup;
        for (std::size_t i = 0; i < H.rows(); ++i)
            if ((mask >> i) & 1)
                sup.push_back(i);
        if (syndrome_oracle(sup, H).is_zero())
            words.insert(sup);
    }
    return words;
}

} // namespace

TEST_CASE("bit vector get set flip weight") {
    BitVector v(130);
    CHECK(v.size() == 130);
    CHECK(v.is_zero());
    v.set(0);
    v.set(64);
    v.set(129);
    CHECK(v.weight() == 3);
    CHECK(v.get(0));
    CHECK(v.get(64));
    CHECK(v.get(129));
    CHECK_FALSE(v.get(1));
    v.flip(64);
    CHECK_FALSE(v.get(64));
    v.set(0, false);
    CHECK(v.weight() == 1);
    std::size_t counted = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        counted += v.get(i) ? 1 : 0;
    CHECK(counted == v.weight());
}

TEST_CASE("bit vector bounds checking") {
    BitVector v(10);
    CHECK_THROWS_AS(v.get(10), DimensionError);
    CHECK_THROWS_AS(v.set(10), DimensionError);
    CHECK_THROWS_AS(v.flip(10), DimensionError);
    BitVector empty;
    CHECK_THROWS_AS(empty.get(0), DimensionError);
}

TEST_CASE("ones keeps the tail clear") {
    for (std::size_t len : {0u, 1u, 63u, 64u, 65u, 127u, 128u, 200u}) {
        const BitVector v = BitVector::ones(len);
        CHECK(v.weight() == len);
        const BitVector z = v ^ v;
        CHECK(z.is_zero());
    }
    CHECK(ones_row(9).to_string() == "111111111");
}

TEST_CASE("string round trip and parse errors") {
    const BitVector v = BitVector::from_string("0110001");
    CHECK(v.size() == 7);
    CHECK(v.weight() == 3);
    CHECK(v.to_string() == "0110001");
    CHECK(v.support() == Support{1, 2, 6});
    CHECK_THROWS_AS(BitVector::from_string("01x"), ParseError);
    CHECK(BitVector::from_string("").size() == 0);
}

TEST_CASE("xor matches per bit oracle") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 20; ++round) {
        const std::size_t len = 1 + rng() % 150;
        BitVector a(len), b(len);
        for (std::size_t i = 0; i < len; ++i) {
            if (rng() & 1)
                a.set(i);
            if (rng() & 1)
                b.set(i);
        }
        const BitVector c = a ^ b;
        for (std::size_t i = 0; i < len; ++i)
            CHECK(c.get(i) == (a.get(i) != b.get(i)));
    }
    BitVector a(5), b(6);
    CHECK_THROWS_AS(a ^= b, DimensionError);
}

TEST_CASE("support is strictly increasing and matches get") {
    std::mt19937_64 rng(12);
    for (int round = 0; round < 20; ++round) {
        const std::size_t len = 1 + rng() % 200;
        BitVector v(len);
        for (std::size_t i = 0; i < len; ++i)
            if (rng() % 3 == 0)
                v.set(i);
        const Support sup = v.support();
        CHECK(sup.size() == v.weight());
        CHECK(std::is_sorted(sup.begin(), sup.end()));
        for (std::size_t i = 1; i < sup.size(); ++i)
            CHECK(sup[i] > sup[i - 1]);
        for (std::size_t idx : sup)
            CHECK(v.get(idx));
    }
}

TEST_CASE("syndrome equals per column parity") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 50; ++round) {
        const std::size_t n = 1 + rng() % 12;
        const std::size_t r = 1 + rng() % 12;
        const BitMatrix H = random_matrix(rng, n, r);
        Support sup;
        for (std::size_t i = 0; i < n; ++i)
            if (rng() & 1)
                sup.push_back(i);
        CHECK(syndrome(sup, H) == syndrome_oracle(sup, H));
    }
}

TEST_CASE("syndrome validates its support") {
    const BitMatrix H = BitMatrix::identity(4);
    CHECK_THROWS_AS(syndrome(Support{0, 4}, H), DimensionError);
    CHECK_THROWS_AS(syndrome(Support{2, 1}, H), DimensionError);
    CHECK_THROWS_AS(syndrome(Support{1, 1}, H), DimensionError);
    CHECK(syndrome(Support{}, H).is_zero());
}

TEST_CASE("rank matches the xor basis oracle") {
    CHECK(rank(BitMatrix::identity(7)) == 7);
    CHECK(rank(BitMatrix::zeros(5, 8)) == 0);
    std::mt19937_64 rng(31);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = 1 + rng() % 14;
        const std::size_t r = 1 + rng() % 14;
        const BitMatrix H = random_matrix(rng, n, r);
        CHECK(rank(H) == rank_oracle(H));
    }
}

TEST_CASE("duplicated rows do not raise the rank") {
    std::mt19937_64 rng(32);
    const BitMatrix H = random_matrix(rng, 6, 9);
    BitMatrix doubled(12, 9);
    for (std::size_t i = 0; i < 6; ++i) {
        doubled.set_row(i, H.row(i));
        doubled.set_row(6 + i, H.row(i));
    }
    CHECK(rank(doubled) == rank(H));
}

TEST_CASE("nullspace basis words are independent codewords") {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 40; ++round) {
        const std::size_t n = 1 + rng() % 12;
        const std::size_t r = 1 + rng() % 12;
        const BitMatrix H = random_matrix(rng, n, r);
        const auto basis = nullspace_basis(H);
        CHECK(basis.size() == n - rank(H));
        BitMatrix as_rows(basis.size(), n);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            CHECK(syndrome(basis[i].support(), H).is_zero());
            CHECK_FALSE(basis[i].is_zero());
            as_rows.set_row(i, basis[i]);
        }
        // independence: stacking the basis words loses no rank
        CHECK(rank(as_rows) == basis.size());
    }
}

TEST_CASE("nullspace enumeration equals the subset oracle") {
    std::mt19937_64 rng(42);
    for (int round = 0; round < 30; ++round) {
        const std::size_t n = 1 + rng() % 10;
        const std::size_t r = 1 + rng() % 10;
        const BitMatrix H = random_matrix(rng, n, r);
        const auto words = nullspace_enumerate(H, 16);
        const std::set<Support> expected = nullspace_oracle(H);
        CHECK(words.size() == expected.size());
        const std::set<Support> got(words.begin(), words.end());
        CHECK(got.size() == words.size()); // no duplicates
        CHECK(got == expected);
    }
}

TEST_CASE("nullspace enumeration starts with the zero word") {
    const BitMatrix H = BitMatrix::zeros(5, 3);
    const auto words = nullspace_enumerate(H, 5);
    CHECK(words.size() == 32);
    CHECK(words.front().empty());
}

TEST_CASE("nullspace dimension cap") {
    const BitMatrix H = BitMatrix::zeros(8, 2);
    CHECK_THROWS_AS(nullspace_enumerate(H, 7), DimensionTooLarge);
    CHECK(nullspace_enumerate(H, 8).size() == 256);
}

TEST_CASE("hstack and vstack place blocks") {
    std::mt19937_64 rng(51);
    const BitMatrix A = random_matrix(rng, 4, 3);
    const BitMatrix B = random_matrix(rng, 4, 5);
    const BitMatrix AB = hstack(A, B);
    CHECK(AB.rows() == 4);
    CHECK(AB.cols() == 8);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(AB.get(i, j) == A.get(i, j));
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(AB.get(i, 3 + j) == B.get(i, j));
    }
    const BitMatrix C = random_matrix(rng, 2, 8);
    const BitMatrix ABC = vstack(AB, C);
    CHECK(ABC.rows() == 6);
    for (std::size_t j = 0; j < 8; ++j) {
        CHECK(ABC.get(0, j) == AB.get(0, j));
        CHECK(ABC.get(4, j) == C.get(0, j));
    }
    CHECK_THROWS_AS(hstack(A, C), DimensionError);
    CHECK_THROWS_AS(vstack(A, B), DimensionError);
}

TEST_CASE("matrix serialization round trips") {
    std::mt19937_64 rng(61);
    for (int round = 0; round < 20; ++round) {
        const BitMatrix m = random_matrix(rng, 1 + rng() % 9, 1 + rng() % 9);
        CHECK(parse_matrix(serialize(m)) == m);
    }
    const BitMatrix empty(0, 4);
    CHECK(parse_matrix(serialize(empty)) == empty);
}

TEST_CASE("matrix parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_matrix("junk"), ParseError);
    CHECK_THROWS_AS(parse_matrix("2 3\n010\n"), ParseError);       // missing row
    CHECK_THROWS_AS(parse_matrix("1 3\n0120\n"), ParseError);      // wrong length
    CHECK_THROWS_AS(parse_matrix("1 3\n012\n"), ParseError);       // bad character
    const BitMatrix m = parse_matrix("2 3\r\n010\r\n111\r\n");     // CRLF tolerated
    CHECK(m.get(1, 0));
    CHECK_FALSE(m.get(0, 0));
}

TEST_CASE("set_row enforces the width") {
    BitMatrix m(2, 3);
    CHECK_THROWS_AS(m.set_row(0, BitVector(4)), DimensionError);
    CHECK_THROWS_AS(m.set_row(2, BitVector(3)), DimensionError);
    m.set_row(1, BitVector::from_string("101"));
    CHECK(m.get(1, 2));
}

TEST_CASE("vector parse trims line endings") {
    CHECK(parse_vector("0101\n") == BitVector::from_string("0101"));
    CHECK(parse_vector("0101\r\n") == BitVector::from_string("0101"));
    CHECK(parse_vector(serialize(BitVector::from_string("110"))) ==
          BitVector::from_string("110"));
}
