#include "sdred/reductions.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sdred/rng.hpp"

namespace sdred {

std::string to_string(ReductionKind kind) {
    switch (kind) {
    case ReductionKind::Coset: return "coset";
    case ReductionKind::Bmvt: return "bmvt";
    case ReductionKind::Compact: return "compact";
    case ReductionKind::Gpsd: return "gpsd";
    case ReductionKind::Gpsw: return "gpsw";
    case ReductionKind::GenericPsd: return "generic-psd";
    case ReductionKind::GenericPsw: return "generic-psw";
    }
    throw std::logic_error("unreachable");
}

ReductionKind reduction_kind_from_string(const std::string& name) {
    if (name == "coset") return ReductionKind::Coset;
    if (name == "bmvt") return ReductionKind::Bmvt;
    if (name == "compact") return ReductionKind::Compact;
    if (name == "gpsd") return ReductionKind::Gpsd;
    if (name == "gpsw") return ReductionKind::Gpsw;
    if (name == "generic-psd") return ReductionKind::GenericPsd;
    if (name == "generic-psw") return ReductionKind::GenericPsw;
    throw ParseError("unknown reduction kind: " + name);
}

std::string to_string(PaddingStrategy s) {
    return s == PaddingStrategy::ZeroRows ? "zero-rows" : "random-fresh";
}

PaddingStrategy padding_strategy_from_string(const std::string& name) {
    if (name == "zero-rows") return PaddingStrategy::ZeroRows;
    if (name == "random-fresh") return PaddingStrategy::RandomFresh;
    throw ParseError("unknown padding strategy: " + name);
}

std::size_t record_row_count(const ReductionRecord& rec) {
    return rec.triple_rows.size() + rec.identity_rows.size() + rec.padding_rows.size() +
           (rec.parity_row ? 1 : 0);
}

BitMatrix incidence_matrix(const TdmInstance& inst) {
    const std::size_t t = std::size_t(inst.t);
    BitMatrix A(inst.u(), 3 * t);
    for (std::size_t i = 0; i < inst.u(); ++i) {
        const Triple& tr = inst.triples[i];
        A.set(i, std::size_t(tr.a) - 1);
        A.set(i, t + std::size_t(tr.b) - 1);
        A.set(i, 2 * t + std::size_t(tr.c) - 1);
    }
    return A;
}

namespace {

// A extended with pad_cols zero columns and pad_rows zero rows; the syndrome
// keeps 3t ones over the incidence columns and zeros elsewhere. With zero
// padding this is reduce_coset itself; gpsd and generic-psd reuse it.
CosetInstance pad_coset(const BitMatrix& A, std::size_t t, std::size_t pad_rows,
                        std::size_t pad_cols) {
    const std::size_t r0 = A.cols();
    BitMatrix H(A.rows() + pad_rows, r0 + pad_cols);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        BitVector row(r0 + pad_cols);
        for (std::size_t j : A.row(i).support())
            row.set(j);
        H.set_row(i, row);
    }
    BitVector S(r0 + pad_cols);
    for (std::size_t j = 0; j < r0; ++j)
        S.set(j);
    return CosetInstance{std::move(H), std::move(S), t};
}

struct CompactBase {
    SubspaceInstance instance;
    bool nu_extended = false;
    std::size_t nu_row_index = 0; // meaningful only when nu_extended
    std::size_t parity_row_index = 0;
    std::size_t triple_count = 0;
};

// The parity-column gadget. Odd t is first forced even by adjoining the
// element nu = t+1 together with the triple (nu, nu, nu), which any perfect
// matching of the extended instance must use.
CompactBase compact_base(const TdmInstance& inst) {
    if (inst.t < 1)
        throw Inapplicable("compact construction needs t >= 1, got t = " + std::to_string(inst.t));
    TdmInstance work = inst;
    CompactBase out;
    if (inst.t % 2 != 0) {
        const int nu = inst.t + 1;
        work.t = nu;
        work.triples.push_back({nu, nu, nu});
        out.nu_extended = true;
        out.nu_row_index = inst.u();
    }
    const std::size_t ue = work.u();
    const std::size_t te = std::size_t(work.t);
    const BitMatrix A = incidence_matrix(work);
    BitMatrix H(ue + 1, 3 * te + 1);
    for (std::size_t i = 0; i < ue; ++i) {
        BitVector row(3 * te + 1);
        for (std::size_t j : A.row(i).support())
            row.set(j);
        row.set(3 * te);
        H.set_row(i, row);
    }
    BitVector parity = BitVector::ones(3 * te + 1);
    parity.set(3 * te, false);
    H.set_row(ue, parity);
    out.instance = SubspaceInstance{std::move(H), te + 1};
    out.parity_row_index = ue;
    out.triple_count = ue;
    return out;
}

// Appends pad_cols zero columns, then pad_rows new rows. Zero-rows padding
// leaves them empty; random-fresh draws uniform bits confined to the fresh
// columns, row-major, from a generator seeded as given.
SubspaceInstance widen_and_pad(const SubspaceInstance& base, std::size_t pad_rows,
                               std::size_t pad_cols, PaddingStrategy strategy,
                               std::uint64_t seed) {
    const std::size_t n0 = base.H.rows();
    const std::size_t r0 = base.H.cols();
    BitMatrix H(n0 + pad_rows, r0 + pad_cols);
    for (std::size_t i = 0; i < n0; ++i) {
        BitVector row(r0 + pad_cols);
        for (std::size_t j : base.H.row(i).support())
            row.set(j);
        H.set_row(i, row);
    }
    if (strategy == PaddingStrategy::RandomFresh && pad_cols > 0) {
        std::mt19937_64 rng(seed);
        for (std::size_t i = n0; i < n0 + pad_rows; ++i)
            for (std::size_t j = r0; j < r0 + pad_cols; ++j)
                if (rand_below(rng, 2))
                    H.set(i, j);
    }
    return SubspaceInstance{std::move(H), base.w};
}

// Smallest m with 2^m >= x (x >= 1).
std::size_t ceil_log2(std::size_t x) {
    std::size_t m = 0;
    while ((std::size_t(1) << m) < x)
        ++m;
    return m;
}

std::string str(const Rational& v) { return v.get_str(); }

} // namespace

Reduced<CosetInstance> reduce_coset(const TdmInstance& inst) {
    const std::size_t t = std::size_t(inst.t);
    const std::size_t u = inst.u();
    Reduced<CosetInstance> out;
    out.instance = pad_coset(incidence_matrix(inst), t, 0, 0);
    out.record.kind = ReductionKind::Coset;
    out.record.source = inst;
    out.record.triple_rows = {0, u};
    out.record.identity_rows = {u, u};
    out.record.padding_rows = {u, u};
    if (u >= 3 * t)
        out.record.code_dim = u - 3 * t;
    return out;
}

Reduced<SubspaceInstance> reduce_subspace_bmvt(const TdmInstance& inst) {
    if (inst.t < 1)
        throw Inapplicable("block gadget needs t >= 1, got t = " + std::to_string(inst.t));
    const std::size_t t = std::size_t(inst.t);
    const std::size_t u = inst.u();
    const std::size_t r = 3 * t * (u + 1);
    const BitMatrix A = incidence_matrix(inst);
    BitMatrix H(u + r, r);
    for (std::size_t i = 0; i < u; ++i) {
        BitVector row(r);
        for (std::size_t j : A.row(i).support())
            row.set(j);
        for (std::size_t l = 0; l < 3 * t; ++l)
            row.set(3 * t * (i + 1) + l);
        H.set_row(i, row);
    }
    for (std::size_t j = 0; j < r; ++j)
        H.set(u + j, j);
    Reduced<SubspaceInstance> out;
    out.instance = SubspaceInstance{std::move(H), 3 * t * t + 4 * t};
    out.record.kind = ReductionKind::Bmvt;
    out.record.source = inst;
    out.record.triple_rows = {0, u};
    out.record.identity_rows = {u, u + r};
    out.record.padding_rows = {u + r, u + r};
    out.record.code_dim = u; // n - r
    return out;
}

Reduced<SubspaceInstance> reduce_subspace_compact(const TdmInstance& inst) {
    CompactBase base = compact_base(inst);
    const std::size_t n = base.instance.H.rows();
    const std::size_t r = base.instance.H.cols();
    Reduced<SubspaceInstance> out;
    out.record.kind = ReductionKind::Compact;
    out.record.source = inst;
    out.record.nu_extended = base.nu_extended;
    out.record.parity_row = base.parity_row_index;
    if (base.nu_extended)
        out.record.nu_row = base.nu_row_index;
    out.record.triple_rows = {0, base.triple_count};
    out.record.identity_rows = {n, n};
    out.record.padding_rows = {n, n};
    if (n >= r)
        out.record.code_dim = n - r;
    out.instance = std::move(base.instance);
    return out;
}

Reduced<CosetInstance> reduce_gpsd(const TdmInstance& inst) {
    const std::size_t u = inst.u();
    if (u < 8)
        throw Inapplicable("goppa-proportioned coset construction needs u >= 8, got u = " +
                           std::to_string(u));
    const std::size_t t = std::size_t(inst.t);
    const std::size_t m = ceil_log2(u);
    const std::size_t n = std::size_t(1) << m;
    const std::size_t r = t * m;
    const std::size_t pad_cols = t * (m - 3); // m >= 3 since u >= 8
    Reduced<CosetInstance> out;
    out.instance = pad_coset(incidence_matrix(inst), t, n - u, pad_cols);
    out.record.kind = ReductionKind::Gpsd;
    out.record.source = inst;
    out.record.m = m;
    out.record.pad_rows = n - u;
    out.record.pad_cols = pad_cols;
    out.record.triple_rows = {0, u};
    out.record.identity_rows = {n, n};
    out.record.padding_rows = {u, n};
    if (n >= r)
        out.record.code_dim = n - r;
    return out;
}

Reduced<SubspaceInstance> reduce_gpsw(const TdmInstance& inst, PaddingStrategy strategy,
                                      std::uint64_t seed, std::size_t m_ceiling) {
    if (inst.t < 2)
        throw Inapplicable("goppa-proportioned subspace construction needs t >= 2, got t = " +
                           std::to_string(inst.t));
    CompactBase base = compact_base(inst);
    const std::size_t n_base = base.instance.H.rows();
    const std::size_t r_base = base.instance.H.cols();
    const std::size_t w = base.instance.w;
    std::size_t m = 0;
    for (std::size_t cand = 1; cand <= m_ceiling && m == 0; ++cand) {
        if ((std::size_t(1) << cand) < n_base)
            continue;
        if (((w - 1) * cand) % 2 != 0)
            continue;
        if ((w - 1) * cand / 2 < r_base)
            continue;
        m = cand;
    }
    if (m == 0)
        throw NoFeasibleM("no m <= " + std::to_string(m_ceiling) + " satisfies 2^m >= " +
                          std::to_string(n_base) + ", (w-1)m even, and (w-1)m/2 >= " +
                          std::to_string(r_base) + " (w = " + std::to_string(w) + ")");
    const std::size_t n = std::size_t(1) << m;
    const std::size_t r = (w - 1) * m / 2; // hence w = 2r/m + 1 exactly
    Reduced<SubspaceInstance> out;
    out.instance = widen_and_pad(base.instance, n - n_base, r - r_base, strategy, seed);
    out.record.kind = ReductionKind::Gpsw;
    out.record.source = inst;
    out.record.nu_extended = base.nu_extended;
    out.record.m = m;
    out.record.pad_rows = n - n_base;
    out.record.pad_cols = r - r_base;
    out.record.parity_row = base.parity_row_index;
    if (base.nu_extended)
        out.record.nu_row = base.nu_row_index;
    out.record.triple_rows = {0, base.triple_count};
    out.record.identity_rows = {n, n};
    out.record.padding_rows = {n_base, n};
    if (n >= r)
        out.record.code_dim = n - r;
    out.record.padding_strategy = strategy;
    out.record.padding_seed = seed;
    return out;
}

ConstraintSpec ConstraintSpec::preset(const std::string& name) {
    ConstraintSpec spec;
    if (name == "goppa") {
        spec.f = Expression::parse("2^(r/w)");
    } else if (name == "half-length") {
        spec.f = Expression::parse("2*w");
    } else {
        throw std::invalid_argument("unknown constraint preset: " + name +
                                    " (expected goppa or half-length)");
    }
    spec.g = Expression::parse("t*ceil(log2(u))");
    spec.lambda = 8;
    spec.P = Expression::parse("t*u");
    spec.Q = Expression::parse("2*u");
    return spec;
}

namespace {

void require_above_lambda(const TdmInstance& inst, long lambda) {
    if (inst.t <= lambda || long(inst.u()) <= lambda)
        throw ConditionViolated("framework applies only for t, u > lambda = " +
                                std::to_string(lambda) + ", got t = " + std::to_string(inst.t) +
                                ", u = " + std::to_string(inst.u()));
}

Env env_of(long t, long u) {
    return Env{{"t", Rational(t)}, {"u", Rational(u)}};
}

std::size_t narrow_size(const mpz_class& v, std::size_t limit, const std::string& what) {
    if (v > limit)
        throw BudgetExceeded(what + " = " + v.get_str() + " exceeds the limit " +
                             std::to_string(limit));
    return std::size_t(v.get_ui());
}

} // namespace

Reduced<CosetInstance> reduce_generic_psd(const TdmInstance& inst, const ConstraintSpec& spec,
                                          const GenericLimits& limits) {
    require_above_lambda(inst, spec.lambda);
    const long t = inst.t;
    const long u = long(inst.u());
    const Env env_tu = env_of(t, u);
    const mpz_class r_int = require_integer(spec.g.evaluate(env_tu), "g(t, u)");
    if (r_int < 3 * t)
        throw ConditionViolated("g(t, u) = " + r_int.get_str() + " < 3t = " +
                                std::to_string(3 * t));
    Env env_f = env_tu;
    env_f["r"] = Rational(r_int);
    env_f["w"] = Rational(t);
    const mpz_class n_int = require_integer(spec.f.evaluate(env_f), "f(r, w)");
    if (n_int < u)
        throw ConditionViolated("f(r, w) = " + n_int.get_str() + " < u = " + std::to_string(u));
    const std::size_t r = narrow_size(r_int, limits.max_r, "r = g(t, u)");
    const std::size_t n = narrow_size(n_int, limits.max_n, "n = f(r, w)");
    Reduced<CosetInstance> out;
    out.instance = pad_coset(incidence_matrix(inst), std::size_t(t), n - std::size_t(u),
                             r - std::size_t(3 * t));
    out.record.kind = ReductionKind::GenericPsd;
    out.record.source = inst;
    out.record.pad_rows = n - std::size_t(u);
    out.record.pad_cols = r - std::size_t(3 * t);
    out.record.triple_rows = {0, std::size_t(u)};
    out.record.identity_rows = {n, n};
    out.record.padding_rows = {std::size_t(u), n};
    if (n >= r)
        out.record.code_dim = n - r;
    return out;
}

Reduced<SubspaceInstance> reduce_generic_psw(const TdmInstance& inst, const ConstraintSpec& spec,
                                             PaddingStrategy strategy, std::uint64_t seed,
                                             const GenericLimits& limits) {
    require_above_lambda(inst, spec.lambda);
    const long t = inst.t;
    const long u = long(inst.u());
    const bool odd = (t % 2 != 0);
    CompactBase base = compact_base(inst);
    const std::size_t n_base = base.instance.H.rows();
    const std::size_t r_base = base.instance.H.cols();
    const Env env_tu = env_of(t, u);
    const Expression& gexpr = (odd && spec.g_odd) ? *spec.g_odd : spec.g;
    const std::string gname = odd ? "g'(t, u)" : "g(t, u)";
    const mpz_class r_int = require_integer(gexpr.evaluate(env_tu), gname);
    const long stated_lower = odd ? 3 * t + 2 : 3 * t + 1;
    if (r_int < stated_lower)
        throw ConditionViolated(gname + " = " + r_int.get_str() + " < " +
                                (odd ? "3t+2 = " : "3t+1 = ") + std::to_string(stated_lower));
    if (r_int < long(r_base))
        // only reachable on the odd path, where the nu-extended gadget is
        // two elements wider than the proposition's stated bound
        throw ConditionViolated(gname + " = " + r_int.get_str() +
                                " is below the extended gadget width 3t+4 = " +
                                std::to_string(r_base));
    Env env_f = env_tu;
    env_f["r"] = Rational(r_int);
    env_f["w"] = Rational(long(base.instance.w));
    const mpz_class n_int = require_integer(spec.f.evaluate(env_f), "f(r, w)");
    if (n_int < long(n_base))
        throw ConditionViolated("f(r, w) = " + n_int.get_str() + " < " +
                                (odd ? "u+2 = " : "u+1 = ") + std::to_string(n_base));
    const std::size_t r = narrow_size(r_int, limits.max_r, "r = " + gname);
    const std::size_t n = narrow_size(n_int, limits.max_n, "n = f(r, w)");
    Reduced<SubspaceInstance> out;
    out.instance = widen_and_pad(base.instance, n - n_base, r - r_base, strategy, seed);
    out.record.kind = ReductionKind::GenericPsw;
    out.record.source = inst;
    out.record.nu_extended = base.nu_extended;
    out.record.pad_rows = n - n_base;
    out.record.pad_cols = r - r_base;
    out.record.parity_row = base.parity_row_index;
    if (base.nu_extended)
        out.record.nu_row = base.nu_row_index;
    out.record.triple_rows = {0, base.triple_count};
    out.record.identity_rows = {n, n};
    out.record.padding_rows = {n_base, n};
    if (n >= r)
        out.record.code_dim = n - r;
    out.record.padding_strategy = strategy;
    out.record.padding_seed = seed;
    return out;
}

Reduced<SdInstance> apply_reduction(const TdmInstance& inst, ReductionKind kind,
                                    const ReductionOptions& opt) {
    auto pack = [](auto reduced) {
        return Reduced<SdInstance>{SdInstance(std::move(reduced.instance)),
                                   std::move(reduced.record)};
    };
    switch (kind) {
    case ReductionKind::Coset:
        return pack(reduce_coset(inst));
    case ReductionKind::Bmvt:
        return pack(reduce_subspace_bmvt(inst));
    case ReductionKind::Compact:
        return pack(reduce_subspace_compact(inst));
    case ReductionKind::Gpsd:
        return pack(reduce_gpsd(inst));
    case ReductionKind::Gpsw:
        return pack(reduce_gpsw(inst, opt.strategy, opt.seed, opt.m_ceiling));
    case ReductionKind::GenericPsd:
        if (!opt.spec)
            throw std::invalid_argument("generic-psd needs a constraint spec");
        return pack(reduce_generic_psd(inst, *opt.spec, opt.limits));
    case ReductionKind::GenericPsw:
        if (!opt.spec)
            throw std::invalid_argument("generic-psw needs a constraint spec");
        return pack(reduce_generic_psw(inst, *opt.spec, opt.strategy, opt.seed, opt.limits));
    }
    throw std::logic_error("unreachable");
}

namespace {

// One grid point of the condition check. The proposition states the upper
// weight argument of f as t on both parities, so that is what gets bound
// here; the constructions themselves use the actual target weight.
std::optional<std::string> point_failure(const ConstraintSpec& spec, PropMode mode, long t,
                                         long u) {
    const bool odd = (t % 2 != 0);
    const bool use_g_odd = (mode == PropMode::Psw) && odd;
    const Expression& gexpr = (use_g_odd && spec.g_odd) ? *spec.g_odd : spec.g;
    const std::string gname = use_g_odd ? "g'" : "g";
    const Env env_tu = env_of(t, u);
    const Rational g_val = gexpr.evaluate(env_tu);
    long g_lower = 3 * t;
    std::string g_lower_name = "3t";
    if (mode == PropMode::Psw) {
        g_lower = odd ? 3 * t + 2 : 3 * t + 1;
        g_lower_name = odd ? "3t+2" : "3t+1";
    }
    if (g_val < g_lower)
        return g_lower_name + " <= " + gname + " violated: " + gname + " = " + str(g_val) +
               ", " + g_lower_name + " = " + std::to_string(g_lower);
    if (spec.P) {
        const Rational p_val = spec.P->evaluate(env_tu);
        if (g_val > p_val)
            return gname + " <= P violated: " + gname + " = " + str(g_val) +
                   ", P = " + str(p_val);
    }
    Env env_f = env_tu;
    env_f["r"] = g_val;
    env_f["w"] = Rational(t);
    const Rational f_val = spec.f.evaluate(env_f);
    long f_lower = u;
    std::string f_lower_name = "u";
    if (mode == PropMode::Psw) {
        f_lower = odd ? u + 2 : u + 1;
        f_lower_name = odd ? "u+2" : "u+1";
    }
    if (f_val < f_lower)
        return f_lower_name + " <= f(" + gname + ", t) violated: f = " + str(f_val) + ", " +
               f_lower_name + " = " + std::to_string(f_lower);
    if (spec.Q) {
        const Rational q_val = spec.Q->evaluate(env_tu);
        if (f_val > q_val)
            return "f(" + gname + ", t) <= Q violated: f = " + str(f_val) +
                   ", Q = " + str(q_val);
    }
    return std::nullopt;
}

} // namespace

PropReport check_proposition_conditions(const ConstraintSpec& spec, PropMode mode, long t_lo,
                                        long t_hi, long u_lo, long u_hi) {
    PropReport report;
    report.mode = mode;
    for (long t = t_lo; t <= t_hi; ++t) {
        if (t <= spec.lambda)
            continue;
        for (long u = u_lo; u <= u_hi; ++u) {
            if (u <= spec.lambda)
                continue;
            ++report.points;
            try {
                if (auto failure = point_failure(spec, mode, t, u))
                    report.failures.push_back({t, u, *failure});
            } catch (const Error& e) {
                report.failures.push_back({t, u, std::string("evaluation failed: ") + e.what()});
            }
        }
    }
    return report;
}

SdInstance rebuild_instance(const ReductionRecord& rec) {
    switch (rec.kind) {
    case ReductionKind::Coset:
        return reduce_coset(rec.source).instance;
    case ReductionKind::Bmvt:
        return reduce_subspace_bmvt(rec.source).instance;
    case ReductionKind::Compact:
        return reduce_subspace_compact(rec.source).instance;
    case ReductionKind::Gpsd:
    case ReductionKind::GenericPsd:
        return pad_coset(incidence_matrix(rec.source), std::size_t(rec.source.t), rec.pad_rows,
                         rec.pad_cols);
    case ReductionKind::Gpsw:
    case ReductionKind::GenericPsw: {
        CompactBase base = compact_base(rec.source);
        return widen_and_pad(base.instance, rec.pad_rows, rec.pad_cols,
                             rec.padding_strategy.value_or(PaddingStrategy::ZeroRows),
                             rec.padding_seed);
    }
    }
    throw std::logic_error("unreachable");
}

Support embed_matching(const ReductionRecord& rec, const Matching& matching) {
    if (!is_matching(rec.source, matching.indices))
        throw std::invalid_argument("embed_matching: selection is not a matching of the source");
    Support out = matching.indices;
    std::sort(out.begin(), out.end());
    switch (rec.kind) {
    case ReductionKind::Coset:
    case ReductionKind::Gpsd:
    case ReductionKind::GenericPsd:
        return out;
    case ReductionKind::Bmvt: {
        const std::size_t t = std::size_t(rec.source.t);
        const std::size_t u = rec.source.u();
        Support full = out;
        for (std::size_t j = 0; j < 3 * t; ++j)
            full.push_back(u + j);
        for (std::size_t i : out)
            for (std::size_t l = 0; l < 3 * t; ++l)
                full.push_back(u + 3 * t * (i + 1) + l);
        std::sort(full.begin(), full.end());
        return full;
    }
    case ReductionKind::Compact:
    case ReductionKind::Gpsw:
    case ReductionKind::GenericPsw: {
        if (!rec.parity_row)
            throw std::invalid_argument("embed_matching: record lacks a parity row");
        if (rec.nu_row)
            out.push_back(*rec.nu_row);
        out.push_back(*rec.parity_row);
        std::sort(out.begin(), out.end());
        return out;
    }
    }
    throw std::logic_error("unreachable");
}

namespace {

void put_range(std::ostringstream& os, const char* key, IndexRange range) {
    os << key << ' ' << range.begin << ' ' << range.end << '\n';
}

} // namespace

std::string serialize(const ReductionRecord& rec) {
    std::ostringstream os;
    os << "kind " << to_string(rec.kind) << '\n';
    os << "source " << rec.source.t << ' ' << rec.source.u() << '\n';
    for (const Triple& tr : rec.source.triples)
        os << "triple " << tr.a << ' ' << tr.b << ' ' << tr.c << '\n';
    os << "nu_extended " << (rec.nu_extended ? 1 : 0) << '\n';
    os << "m " << rec.m << '\n';
    os << "n_pad " << rec.pad_rows << '\n';
    os << "r_pad " << rec.pad_cols << '\n';
    if (rec.parity_row)
        os << "parity_row " << *rec.parity_row << '\n';
    if (rec.nu_row)
        os << "nu_row " << *rec.nu_row << '\n';
    put_range(os, "triple_rows", rec.triple_rows);
    put_range(os, "identity_rows", rec.identity_rows);
    put_range(os, "padding_rows", rec.padding_rows);
    if (rec.code_dim)
        os << "k " << *rec.code_dim << '\n';
    if (rec.padding_strategy) {
        os << "padding_strategy " << to_string(*rec.padding_strategy) << '\n';
        os << "padding_seed " << rec.padding_seed << '\n';
    }
    return os.str();
}

namespace {

std::uint64_t parse_u64(const std::string& token, const std::string& key) {
    try {
        std::size_t pos = 0;
        if (token.empty() || token[0] == '-')
            throw std::invalid_argument("negative");
        const std::uint64_t value = std::stoull(token, &pos);
        if (pos != token.size())
            throw std::invalid_argument("trailing");
        return value;
    } catch (const std::exception&) {
        throw ParseError("record field " + key + ": bad integer '" + token + "'");
    }
}

IndexRange parse_range(const std::vector<std::string>& fields, const std::string& key) {
    if (fields.size() != 2)
        throw ParseError("record field " + key + ": expected two indices");
    IndexRange range{std::size_t(parse_u64(fields[0], key)), std::size_t(parse_u64(fields[1], key))};
    if (range.begin > range.end)
        throw ParseError("record field " + key + ": begin exceeds end");
    return range;
}

} // namespace

ReductionRecord parse_record(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<std::string, std::vector<std::string>> fields;
    std::vector<std::vector<std::string>> triples;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key))
            continue;
        std::vector<std::string> rest;
        std::string token;
        while (ls >> token)
            rest.push_back(token);
        if (key == "triple") {
            triples.push_back(std::move(rest));
        } else {
            if (!fields.emplace(key, std::move(rest)).second)
                throw ParseError("record: duplicate field " + key);
        }
    }
    auto get = [&](const std::string& key) -> const std::vector<std::string>& {
        auto it = fields.find(key);
        if (it == fields.end())
            throw ParseError("record: missing field " + key);
        return it->second;
    };
    auto get_scalar = [&](const std::string& key) -> std::uint64_t {
        const auto& v = get(key);
        if (v.size() != 1)
            throw ParseError("record field " + key + ": expected one value");
        return parse_u64(v[0], key);
    };

    ReductionRecord rec;
    {
        const auto& kind = get("kind");
        if (kind.size() != 1)
            throw ParseError("record field kind: expected one value");
        rec.kind = reduction_kind_from_string(kind[0]);
    }
    {
        const auto& src = get("source");
        if (src.size() != 2)
            throw ParseError("record field source: expected t and u");
        rec.source.t = int(parse_u64(src[0], "source"));
        const std::size_t u = std::size_t(parse_u64(src[1], "source"));
        if (triples.size() != u)
            throw ParseError("record: source declares " + std::to_string(u) + " triples, found " +
                             std::to_string(triples.size()));
        for (const auto& tr : triples) {
            if (tr.size() != 3)
                throw ParseError("record: triple line needs three coordinates");
            Triple triple{int(parse_u64(tr[0], "triple")), int(parse_u64(tr[1], "triple")),
                          int(parse_u64(tr[2], "triple"))};
            for (int coord : {triple.a, triple.b, triple.c})
                if (coord < 1 || coord > rec.source.t)
                    throw ParseError("record: triple coordinate " + std::to_string(coord) +
                                     " outside [1, " + std::to_string(rec.source.t) + "]");
            rec.source.triples.push_back(triple);
        }
    }
    rec.nu_extended = get_scalar("nu_extended") != 0;
    rec.m = std::size_t(get_scalar("m"));
    rec.pad_rows = std::size_t(get_scalar("n_pad"));
    rec.pad_cols = std::size_t(get_scalar("r_pad"));
    if (fields.count("parity_row"))
        rec.parity_row = std::size_t(get_scalar("parity_row"));
    if (fields.count("nu_row"))
        rec.nu_row = std::size_t(get_scalar("nu_row"));
    rec.triple_rows = parse_range(get("triple_rows"), "triple_rows");
    rec.identity_rows = parse_range(get("identity_rows"), "identity_rows");
    rec.padding_rows = parse_range(get("padding_rows"), "padding_rows");
    if (fields.count("k"))
        rec.code_dim = std::size_t(get_scalar("k"));
    if (fields.count("padding_strategy")) {
        const auto& strat = get("padding_strategy");
        if (strat.size() != 1)
            throw ParseError("record field padding_strategy: expected one value");
        rec.padding_strategy = padding_strategy_from_string(strat[0]);
    }
    if (fields.count("padding_seed"))
        rec.padding_seed = get_scalar("padding_seed");

    const std::size_t expected_triples = rec.source.u() + (rec.nu_extended ? 1 : 0);
    if (rec.triple_rows.size() != expected_triples)
        throw ParseError("record: triple_rows length " + std::to_string(rec.triple_rows.size()) +
                         " does not match " + std::to_string(expected_triples) + " triples");
    if (rec.nu_row && !rec.triple_rows.contains(*rec.nu_row))
        throw ParseError("record: nu_row outside triple_rows");
    return rec;
}

} // namespace sdred
