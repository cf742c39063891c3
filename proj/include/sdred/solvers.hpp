#ifndef SDRED_SOLVERS_HPP
#define SDRED_SOLVERS_HPP

#include <cstdint>
#include <string>

#include "sdred/sd_instance.hpp"

namespace sdred {

enum class SolveStatus { Found, Unsat, Exhausted };

std::string to_string(SolveStatus status);

struct SolveResult {
    SolveStatus status = SolveStatus::Unsat;
    Support support;           // meaningful only when status == Found
    std::uint64_t checked = 0; // candidates examined, or Prange iterations spent
};

// C(n, k), saturating at the uint64 maximum; 0 when k > n.
std::uint64_t binomial_capped(std::size_t n, std::size_t k);

// Complete scan over supports in increasing-weight then lexicographic order,
// weights 0..w. budget caps the candidates examined; hitting it yields
// Exhausted, otherwise the Found/Unsat verdict is exact.
SolveResult solve_coset_exhaustive(const CosetInstance& inst, std::uint64_t budget);

// Complete scan via whichever route is smaller: the 2^d left-nullspace words
// (when the nullspace dimension d is at most max_dim and 2^d does not exceed
// C(n, w)) or the weight-w supports. Nonzero words only; exact verdict unless
// the budget runs out.
SolveResult solve_subspace_exhaustive(const SubspaceInstance& inst, std::uint64_t budget,
                                      std::size_t max_dim = 20);

// Information set decoding. Each iteration shuffles the row order with its own
// stream derived from (seed, iteration), re-runs the elimination, and reads
// candidates off it: the pivot combination expressing S (coset), or the row
// combinations that vanish (subspace). Found solutions are re-verified before
// returning. One-sided: never Unsat, only Found or Exhausted.
SolveResult solve_prange(const CosetInstance& inst, std::uint64_t iterations, std::uint64_t seed);
SolveResult solve_prange(const SubspaceInstance& inst, std::uint64_t iterations,
                         std::uint64_t seed);

SolveResult solve_exhaustive(const SdInstance& inst, std::uint64_t budget,
                             std::size_t max_dim = 20);
SolveResult solve_prange(const SdInstance& inst, std::uint64_t iterations, std::uint64_t seed);

} // namespace sdred

#endif
