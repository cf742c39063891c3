#ifndef SDRED_LIFT_VERIFY_HPP
#define SDRED_LIFT_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "sdred/reductions.hpp"
#include "sdred/solvers.hpp"
#include "sdred/tdm.hpp"

namespace sdred {

// Maps a verified solution of the reduced instance back to the source
// problem: keep the triple rows, drop parity / nu / identity / padding rows,
// and accept only if the surviving triples form a matching of the ORIGINAL
// (pre-extension) instance. Absent result means the solution is spurious.
// Throws on malformed solutions (unsorted, duplicate, or out-of-range rows).
std::optional<Matching> lift_solution(const ReductionRecord& rec, const Support& sol);

enum class SolverChoice { Exhaustive, Prange };

struct VerifyOptions {
    SolverChoice solver = SolverChoice::Exhaustive;
    std::uint64_t budget = 10'000'000;  // exhaustive candidate cap
    std::uint64_t iterations = 10'000;  // prange restarts
    std::size_t max_dim = 20;           // nullspace enumeration cap
    std::uint64_t seed = 0;             // prange stream seed
    ReductionOptions reduction;
};

struct RoundtripReport {
    ReductionRecord record;
    SolveResult solve;
    std::optional<Matching> matching;  // present when solved and the lift succeeded
    std::optional<bool> tdm_solvable;  // solve_3dm verdict; set for completed exhaustive runs
};

// reduce, solve, lift. With a completed exhaustive solve the report also
// carries the independent 3DM verdict, so callers can compare the two sides.
RoundtripReport verify_roundtrip(const TdmInstance& inst, ReductionKind kind,
                                 const VerifyOptions& opt = {});

enum class Verdict { Sound, Unsound, Unknown };
enum class SoundnessMethod { Probe, FullNullspace, ExhaustiveWeight, Sampled };

std::string to_string(Verdict v);
std::string to_string(SoundnessMethod m);

struct SoundnessReport {
    Verdict verdict = Verdict::Unknown;
    SoundnessMethod method = SoundnessMethod::Sampled;
    std::uint64_t checked = 0; // nonzero candidates examined by the deciding phase
    std::optional<Support> witness; // a solution of the instance that does not lift
};

// Fixed field order (verdict, method, checked, witness) for diff-based tests.
std::string report_text(const SoundnessReport& rep);

struct SoundnessBudget {
    std::uint64_t max_candidates = 1'000'000; // full-enumeration ceiling
    std::size_t max_dim = 20;                 // nullspace dimension ceiling
    std::uint64_t samples = 100'000;          // sampled-search draws
    std::uint64_t seed = 0;                   // sampled-search stream
};

// Does every solution of the reduced instance lift to a matching? Tries, in
// order: kind-specific probes for known spurious patterns (padding-row
// subsets for the padded subspace kinds), complete enumeration when it fits
// the budget (nullspace scan or weight-w scan), and finally random sampling.
// Only complete enumeration can return Sound; sampling that finds nothing
// returns Unknown.
SoundnessReport check_soundness(const ReductionRecord& rec, const SoundnessBudget& budget = {});

struct CountingBoundReport {
    std::uint64_t words = 0; // nonzero nullspace words scanned
    bool all_within = true;
    std::optional<Support> violator; // first word outside the bound
};

// Block-gadget structure check: every nonzero codeword with a top rows must
// use between 3at and 3at + 3a identity rows. Only meaningful for bmvt
// records; DimensionTooLarge when the nullspace exceeds max_dim.
CountingBoundReport check_counting_bound(const ReductionRecord& rec, std::size_t max_dim = 20);

} // namespace sdred

#endif
