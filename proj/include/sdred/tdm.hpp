#ifndef SDRED_TDM_HPP
#define SDRED_TDM_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdred/errors.hpp"

namespace sdred {

// One triple over {1..t}^3.
struct Triple {
    int a = 0, b = 0, c = 0;
    bool operator==(const Triple&) const = default;
};

// A THREE DIMENSIONAL MATCHING instance: elements of T are 1..t, U is an
// ordered list of triples. Duplicate triples are legal (the reductions
// tolerate duplicate rows); has_duplicate_triples flags them.
struct TdmInstance {
    int t = 0;
    std::vector<Triple> triples;

    std::size_t u() const { return triples.size(); }
    bool operator==(const TdmInstance&) const = default;
};

// A valid selection of t triple indices, pairwise disjoint per coordinate.
struct Matching {
    std::vector<std::size_t> indices; // sorted
    bool operator==(const Matching&) const = default;
};

// True iff |sel| = t and no value repeats within any coordinate position.
// Indices must be valid for the instance (throws DimensionError otherwise);
// duplicates within sel make it not a matching.
bool is_matching(const TdmInstance& inst, const std::vector<std::size_t>& sel);

bool has_duplicate_triples(const TdmInstance& inst);

// Exact backtracking solver; the ground-truth oracle on the 3DM side.
// Branches on the most-constrained uncovered slot (a coordinate-position /
// value pair), ties broken by lowest slot index, candidates tried in
// instance order, so the returned matching is reproducible.
std::optional<Matching> solve_3dm(const TdmInstance& inst);

// Instance with a hidden perfect matching (t disjoint triples from random
// coordinate permutations) plus u - t uniform triples, in shuffled order.
// Throws std::invalid_argument when u < t.
TdmInstance gen_planted(int t, std::size_t u, std::uint64_t seed);

// u uniform random triples.
TdmInstance gen_random(int t, std::size_t u, std::uint64_t seed);

// ".3dm" format: line 1 "t u", then u lines "a b c".
TdmInstance parse_tdm(const std::string& text);
std::string serialize(const TdmInstance& inst);

} // namespace sdred

#endif
