#include "sdred/solvers.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <variant>

#include "sdred/rng.hpp"

namespace sdred {

std::string to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::Found: return "found";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Exhausted: return "exhausted";
    }
    throw std::logic_error("unreachable");
}

std::uint64_t binomial_capped(std::size_t n, std::size_t k) {
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    unsigned __int128 acc = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i; // stays integral: this is C(n-k+i, i)
        if (acc > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return std::uint64_t(acc);
}

namespace {

// Advances a k-combination over [0, n) in lexicographic order; false at the end.
bool next_combination(Support& idx, std::size_t n) {
    const std::size_t k = idx.size();
    if (k == 0)
        return false;
    std::size_t i = k;
    while (i-- > 0) {
        if (idx[i] + 1 <= n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

Support first_combination(std::size_t k) {
    Support idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t(0));
    return idx;
}

std::size_t first_set(const BitVector& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i))
            return i;
    throw std::logic_error("first_set on zero vector");
}

struct Pivot {
    std::size_t col = 0;
    BitVector row;  // reduced row value, width r
    BitVector mask; // which original rows combine into it, width n
};

std::vector<std::size_t> shuffled_order(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t(0));
    for (std::size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[rand_below(rng, i)]);
    return order;
}

} // namespace

SolveResult solve_coset_exhaustive(const CosetInstance& inst, std::uint64_t budget) {
    const std::size_t n = inst.H.rows();
    SolveResult res;
    for (std::size_t k = 0; k <= std::min(inst.w, n); ++k) {
        Support idx = first_combination(k);
        do {
            if (res.checked == budget) {
                res.status = SolveStatus::Exhausted;
                return res;
            }
            ++res.checked;
            if (syndrome(idx, inst.H) == inst.S) {
                res.status = SolveStatus::Found;
                res.support = idx;
                return res;
            }
        } while (next_combination(idx, n));
    }
    res.status = SolveStatus::Unsat;
    return res;
}

SolveResult solve_subspace_exhaustive(const SubspaceInstance& inst, std::uint64_t budget,
                                      std::size_t max_dim) {
    const std::size_t n = inst.H.rows();
    SolveResult res;
    if (inst.w < 1 || inst.w > n) {
        res.status = SolveStatus::Unsat;
        return res;
    }
    const std::size_t dim = n - rank(inst.H);
    const std::uint64_t words =
        dim < 63 ? (std::uint64_t(1) << dim) : std::numeric_limits<std::uint64_t>::max();
    if (dim <= max_dim && words <= binomial_capped(n, inst.w)) {
        for (const Support& sup : nullspace_enumerate(inst.H, max_dim)) {
            if (sup.empty())
                continue;
            if (res.checked == budget) {
                res.status = SolveStatus::Exhausted;
                return res;
            }
            ++res.checked;
            if (sup.size() == inst.w) {
                res.status = SolveStatus::Found;
                res.support = sup;
                return res;
            }
        }
    } else {
        Support idx = first_combination(inst.w);
        do {
            if (res.checked == budget) {
                res.status = SolveStatus::Exhausted;
                return res;
            }
            ++res.checked;
            if (syndrome(idx, inst.H).is_zero()) {
                res.status = SolveStatus::Found;
                res.support = idx;
                return res;
            }
        } while (next_combination(idx, n));
    }
    res.status = SolveStatus::Unsat;
    return res;
}

SolveResult solve_prange(const CosetInstance& inst, std::uint64_t iterations,
                         std::uint64_t seed) {
    const std::size_t n = inst.H.rows();
    const std::size_t r = inst.H.cols();
    SolveResult res;
    for (std::uint64_t iter = 0; iter < iterations; ++iter) {
        ++res.checked;
        std::mt19937_64 rng(mix_seed(seed, iter));
        std::vector<Pivot> pivots;
        pivots.reserve(std::min(n, r));
        for (std::size_t i : shuffled_order(n, rng)) {
            BitVector v = inst.H.row(i);
            BitVector mask(n);
            mask.set(i);
            for (const Pivot& p : pivots)
                if (v.get(p.col)) {
                    v ^= p.row;
                    mask ^= p.mask;
                }
            if (!v.is_zero()) {
                const std::size_t col = first_set(v);
                pivots.push_back({col, std::move(v), std::move(mask)});
                if (pivots.size() == r)
                    break;
            }
        }
        BitVector s = inst.S;
        BitVector smask(n);
        for (const Pivot& p : pivots)
            if (s.get(p.col)) {
                s ^= p.row;
                smask ^= p.mask;
            }
        if (s.is_zero() && smask.weight() <= inst.w) {
            const Support sup = smask.support();
            if (syndrome(sup, inst.H) == inst.S) {
                res.status = SolveStatus::Found;
                res.support = sup;
                return res;
            }
        }
    }
    res.status = SolveStatus::Exhausted;
    return res;
}

SolveResult solve_prange(const SubspaceInstance& inst, std::uint64_t iterations,
                         std::uint64_t seed) {
    const std::size_t n = inst.H.rows();
    const std::size_t r = inst.H.cols();
    SolveResult res;
    for (std::uint64_t iter = 0; iter < iterations; ++iter) {
        ++res.checked;
        std::mt19937_64 rng(mix_seed(seed, iter));
        std::vector<Pivot> pivots;
        pivots.reserve(std::min(n, r));
        for (std::size_t i : shuffled_order(n, rng)) {
            BitVector v = inst.H.row(i);
            BitVector mask(n);
            mask.set(i);
            for (const Pivot& p : pivots)
                if (v.get(p.col)) {
                    v ^= p.row;
                    mask ^= p.mask;
                }
            if (v.is_zero()) {
                if (mask.weight() == inst.w) {
                    const Support sup = mask.support();
                    if (syndrome(sup, inst.H).is_zero()) {
                        res.status = SolveStatus::Found;
                        res.support = sup;
                        return res;
                    }
                }
            } else {
                pivots.push_back({first_set(v), std::move(v), std::move(mask)});
            }
        }
    }
    res.status = SolveStatus::Exhausted;
    return res;
}

SolveResult solve_exhaustive(const SdInstance& inst, std::uint64_t budget, std::size_t max_dim) {
    if (const auto* coset = std::get_if<CosetInstance>(&inst))
        return solve_coset_exhaustive(*coset, budget);
    return solve_subspace_exhaustive(std::get<SubspaceInstance>(inst), budget, max_dim);
}

SolveResult solve_prange(const SdInstance& inst, std::uint64_t iterations, std::uint64_t seed) {
    if (const auto* coset = std::get_if<CosetInstance>(&inst))
        return solve_prange(*coset, iterations, seed);
    return solve_prange(std::get<SubspaceInstance>(inst), iterations, seed);
}

} // namespace sdred
