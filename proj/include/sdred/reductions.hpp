#ifndef SDRED_REDUCTIONS_HPP
#define SDRED_REDUCTIONS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdred/expr.hpp"
#include "sdred/sd_instance.hpp"
#include "sdred/tdm.hpp"

namespace sdred {

enum class ReductionKind { Coset, Bmvt, Compact, Gpsd, Gpsw, GenericPsd, GenericPsw };

std::string to_string(ReductionKind kind);
ReductionKind reduction_kind_from_string(const std::string& name);

enum class PaddingStrategy { ZeroRows, RandomFresh };

std::string to_string(PaddingStrategy s);
PaddingStrategy padding_strategy_from_string(const std::string& name);

// Half-open [begin, end).
struct IndexRange {
    std::size_t begin = 0, end = 0;
    std::size_t size() const { return end - begin; }
    bool contains(std::size_t i) const { return i >= begin && i < end; }
    bool operator==(const IndexRange&) const = default;
};

// Provenance of a reduced instance: which construction produced it, its
// parameter log, and the row bookkeeping that lets solutions be lifted back
// to triples of the original instance. triple_rows / identity_rows /
// padding_rows plus the optional parity row are disjoint and cover [0, n).
struct ReductionRecord {
    ReductionKind kind = ReductionKind::Coset;
    TdmInstance source;     // the instance as given, before any nu extension
    bool nu_extended = false;
    std::size_t m = 0;      // power-of-2 exponent; 0 when not applicable
    std::size_t pad_rows = 0; // n'
    std::size_t pad_cols = 0; // r'
    std::optional<std::size_t> parity_row;
    std::optional<std::size_t> nu_row; // row of the (nu,nu,nu) triple
    IndexRange triple_rows;
    IndexRange identity_rows;
    IndexRange padding_rows;
    std::optional<std::size_t> code_dim; // k = n - r when n >= r
    std::optional<PaddingStrategy> padding_strategy; // gpsw / generic-psw
    std::uint64_t padding_seed = 0;

    bool operator==(const ReductionRecord&) const = default;
};

std::size_t record_row_count(const ReductionRecord& rec);

// Structured text, key-value lines with explicit index ranges; round-trips.
std::string serialize(const ReductionRecord& rec);
ReductionRecord parse_record(const std::string& text);

template <typename Instance>
struct Reduced {
    Instance instance;
    ReductionRecord record;
};

// |U| x 3|T| incidence matrix: row i has ones at columns a-1, t+b-1, 2t+c-1.
BitMatrix incidence_matrix(const TdmInstance& inst);

// H = A, S = all-ones, w = t.
Reduced<CosetInstance> reduce_coset(const TdmInstance& inst);

// The block gadget over A: top rows [A_i | all-ones block i of width 3t],
// bottom identity of size 3t(u+1); w = 3t^2 + 4t. Requires t >= 1.
Reduced<SubspaceInstance> reduce_subspace_bmvt(const TdmInstance& inst);

// Compact gadget: for even t, append a ones column to A and a bottom
// ones row with a zero corner, w = t + 1. For odd t, first extend the
// instance with element nu = t+1 and triple (nu,nu,nu), then do the same,
// w = t + 2. Requires t >= 1.
Reduced<SubspaceInstance> reduce_subspace_compact(const TdmInstance& inst);

// Goppa-proportioned coset instance: A zero-padded to 2^m x tm with
// m = ceil(log2 u); S is 3t ones then r' zeros, w = t.
// Requires u >= 8 (Inapplicable below that).
Reduced<CosetInstance> reduce_gpsd(const TdmInstance& inst);

// Goppa-proportioned subspace instance: the compact gadget padded to
// 2^m x r where r = (w-1)m/2, for the smallest feasible m, so that
// w = 2r/m + 1 holds exactly. Padding rows are all-zero (deliberately
// hazardous) or carry random bits in the fresh columns, per strategy.
// Requires t >= 2; NoFeasibleM if no m <= m_ceiling works.
Reduced<SubspaceInstance> reduce_gpsw(const TdmInstance& inst,
                                      PaddingStrategy strategy = PaddingStrategy::ZeroRows,
                                      std::uint64_t seed = 0, std::size_t m_ceiling = 30);

// User-suppliable constraint shape for the parameterized problems:
// n = f(r, w) with r = g(t, u) (g' on the odd-t subspace path), valid for
// t, u > lambda; P and Q optionally bound g and f for the condition checker.
struct ConstraintSpec {
    Expression f;                  // over (r, w)
    Expression g;                  // over (t, u)
    std::optional<Expression> g_odd; // g' over (t, u)
    long lambda = 0;
    std::optional<Expression> P; // over (t, u)
    std::optional<Expression> Q; // over (t, u)

    // "goppa": f = 2^(r/w), g = t*ceil(log2(u)), lambda 8, P = t*u, Q = 2*u.
    // "half-length": same but f = 2*w, the known failing shape.
    static ConstraintSpec preset(const std::string& name);
};

struct GenericLimits {
    std::size_t max_n = std::size_t(1) << 22;
    std::size_t max_r = std::size_t(1) << 22;
};

// A padded to f(g(t,u), t) x g(t,u) with zero rows and columns; w = t.
Reduced<CosetInstance> reduce_generic_psd(const TdmInstance& inst, const ConstraintSpec& spec,
                                          const GenericLimits& limits = {});

// Compact gadget padded to f(r, w) x r with r = g(t,u) (even t) or
// g'(t,u) (odd t); w = t+1 / t+2; padding as in reduce_gpsw.
Reduced<SubspaceInstance> reduce_generic_psw(const TdmInstance& inst, const ConstraintSpec& spec,
                                             PaddingStrategy strategy = PaddingStrategy::ZeroRows,
                                             std::uint64_t seed = 0,
                                             const GenericLimits& limits = {});

// Everything a kind dispatch needs; fields irrelevant to the kind are ignored.
struct ReductionOptions {
    PaddingStrategy strategy = PaddingStrategy::ZeroRows;
    std::uint64_t seed = 0;
    std::size_t m_ceiling = 30;
    std::optional<ConstraintSpec> spec; // required for the generic kinds
    GenericLimits limits;
};

// Runs the reduction named by kind. Throws std::invalid_argument when a
// generic kind is requested without a constraint spec.
Reduced<SdInstance> apply_reduction(const TdmInstance& inst, ReductionKind kind,
                                    const ReductionOptions& opt = {});

enum class PropMode { Psd, Psw };

struct PropPointFailure {
    long t = 0, u = 0;
    std::string bound;  // the inequality that failed, rendered with values
};

struct PropReport {
    PropMode mode = PropMode::Psd;
    std::uint64_t points = 0; // grid points with t, u > lambda
    std::vector<PropPointFailure> failures;
    bool vacuous() const { return points == 0; }
    bool all_pass() const { return failures.empty() && !vacuous(); }
};

// Inclusive ranges. Evaluates the validity bounds at every grid point with
// t, u > lambda: for Psd, 3t <= g <= P and u <= f(g, t) <= Q; for Psw the
// parity-appropriate path (g with 3t+1 / u+1 for even t, g' with 3t+2 /
// u+2 for odd t). Upper bounds are skipped when P or Q is absent.
PropReport check_proposition_conditions(const ConstraintSpec& spec, PropMode mode, long t_lo,
                                        long t_hi, long u_lo, long u_hi);

// Rebuilds the reduced instance a record describes, exactly (padding seeds
// included). Used by the lifter, the soundness checker, and the CLI.
SdInstance rebuild_instance(const ReductionRecord& rec);

// Forward map: the support that embeds a matching of the source instance
// into the reduced instance (adding parity / nu / identity rows as the
// construction requires). The result always verifies against the instance.
Support embed_matching(const ReductionRecord& rec, const Matching& matching);

} // namespace sdred

#endif
