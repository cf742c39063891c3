// Command line front end: generate 3DM instances, reduce them to syndrome
// decoding sub-problems, solve, lift solutions back, verify round trips, and
// check the validity bounds of parameterized constructions.
//
// Exit codes: 0 solved / verified, 1 unsolvable on both sides, 2 budget
// exhausted or verdict unknown, 3 construction not applicable, 4 spurious
// solution (reduction unsound) or failed bound, 5 usage or I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "sdred/lift_verify.hpp"
#include "sdred/reductions.hpp"
#include "sdred/solvers.hpp"
#include "sdred/tdm.hpp"

namespace {

using namespace sdred;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path);
    out << content;
    if (!out)
        throw Error("write failed on " + path);
}

std::string support_line(const Support& sup) {
    std::string line;
    for (std::size_t i = 0; i < sup.size(); ++i) {
        if (i)
            line += ' ';
        line += std::to_string(sup[i]);
    }
    return line;
}

// Human-facing triple labels are 1-based; files stay 0-based.
std::string matching_labels(const Matching& m) {
    std::string line;
    for (std::size_t i = 0; i < m.indices.size(); ++i) {
        if (i)
            line += ' ';
        line += std::to_string(m.indices[i] + 1);
    }
    return line;
}

struct ParsedSolution {
    std::optional<Support> support; // absent for UNSAT / EXHAUSTED files
    std::string status;             // "", "UNSAT", or "EXHAUSTED"
};

ParsedSolution parse_solution_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    ParsedSolution out;
    if (line == "UNSAT" || line == "EXHAUSTED") {
        out.status = line;
        return out;
    }
    Support sup;
    std::istringstream ls(line);
    long long v = 0;
    while (ls >> v) {
        if (v < 0 || (!sup.empty() && std::size_t(v) <= sup.back()))
            throw ParseError("solution indices must be nonnegative and strictly increasing");
        sup.push_back(std::size_t(v));
    }
    if (!ls.eof())
        throw ParseError("solution file: bad token");
    out.support = std::move(sup);
    return out;
}

// Inclusive "lo..hi", or a single value.
std::pair<long, long> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const long v = std::stol(text);
            return {v, v};
        }
        return {std::stol(text.substr(0, dots)), std::stol(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw ParseError("bad range '" + text + "' (expected N or LO..HI)");
    }
}

struct SpecFlags {
    std::string preset, f, g, g_odd, p, q;
    long lambda = 0;
    bool lambda_set = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--preset", preset, "constraint preset: goppa or half-length");
        cmd->add_option("--f", f, "expression for n = f(r, w)");
        cmd->add_option("--g", g, "expression for r = g(t, u)");
        cmd->add_option("--g-odd", g_odd, "expression for r = g'(t, u), odd-t subspace path");
        cmd->add_option("--lambda", lambda, "threshold: constructions apply for t, u > lambda")
            ->each([this](const std::string&) { lambda_set = true; });
        cmd->add_option("--P", p, "upper bound expression for g over (t, u)");
        cmd->add_option("--Q", q, "upper bound expression for f over (t, u)");
    }

    std::optional<ConstraintSpec> build() const {
        if (preset.empty() && f.empty() && g.empty() && g_odd.empty() && p.empty() &&
            q.empty() && !lambda_set)
            return std::nullopt;
        ConstraintSpec spec;
        if (!preset.empty())
            spec = ConstraintSpec::preset(preset);
        if (!f.empty())
            spec.f = Expression::parse(f);
        if (!g.empty())
            spec.g = Expression::parse(g);
        if (!g_odd.empty())
            spec.g_odd = Expression::parse(g_odd);
        if (lambda_set)
            spec.lambda = lambda;
        if (!p.empty())
            spec.P = Expression::parse(p);
        if (!q.empty())
            spec.Q = Expression::parse(q);
        if (spec.f.empty() || spec.g.empty())
            throw std::invalid_argument("constraint spec needs --f and --g (or --preset)");
        return spec;
    }
};

int cmd_gen3dm(int t, long long u, bool planted, std::uint64_t seed, const std::string& out) {
    if (t < 0 || u < 0)
        throw std::invalid_argument("t and u must be nonnegative");
    const TdmInstance inst = planted ? gen_planted(t, std::size_t(u), seed)
                                     : gen_random(t, std::size_t(u), seed);
    write_file(out, serialize(inst));
    std::cout << "wrote " << out << " (t=" << t << ", u=" << u
              << (planted ? ", planted)" : ")") << '\n';
    return 0;
}

int cmd_reduce(const std::string& in, const std::string& kind_name, const ReductionOptions& opt,
               const std::string& out_instance, const std::string& out_record) {
    const TdmInstance inst = parse_tdm(read_file(in));
    const ReductionKind kind = reduction_kind_from_string(kind_name);
    Reduced<SdInstance> red = apply_reduction(inst, kind, opt);
    write_file(out_instance, serialize(red.instance));
    write_file(out_record, serialize(red.record));
    const BitMatrix& H = instance_matrix(red.instance);
    std::cout << "kind " << to_string(kind) << ": n=" << H.rows() << " r=" << H.cols()
              << " w=" << instance_weight(red.instance) << '\n';
    std::cout << "wrote " << out_instance << " and " << out_record << '\n';
    return 0;
}

int cmd_solve(const std::string& in, const std::string& method, std::uint64_t seed,
              std::uint64_t budget, std::uint64_t iterations, std::size_t max_dim,
              const std::string& out) {
    const SdInstance inst = parse_sd_instance(read_file(in));
    SolveResult res;
    if (method == "exhaustive") {
        res = solve_exhaustive(inst, budget, max_dim);
    } else if (method == "prange") {
        res = solve_prange(inst, iterations, seed);
    } else {
        throw std::invalid_argument("unknown method '" + method +
                                    "' (expected exhaustive or prange)");
    }
    switch (res.status) {
    case SolveStatus::Found:
        if (!out.empty())
            write_file(out, support_line(res.support) + "\n");
        std::cout << "found support " << support_line(res.support) << " (checked "
                  << res.checked << ")\n";
        return 0;
    case SolveStatus::Unsat:
        if (!out.empty())
            write_file(out, "UNSAT\n");
        std::cout << "unsat (checked " << res.checked << ")\n";
        return 1;
    case SolveStatus::Exhausted:
        if (!out.empty())
            write_file(out, "EXHAUSTED\n");
        std::cout << "exhausted (checked " << res.checked << ")\n";
        return 2;
    }
    return 5;
}

int cmd_lift(const std::string& record_path, const std::string& solution_path,
             const std::string& out) {
    const ReductionRecord rec = parse_record(read_file(record_path));
    const ParsedSolution sol = parse_solution_file(read_file(solution_path));
    if (sol.status == "UNSAT") {
        std::cout << "nothing to lift: solution file says UNSAT\n";
        return 1;
    }
    if (sol.status == "EXHAUSTED") {
        std::cout << "nothing to lift: solution file says EXHAUSTED\n";
        return 2;
    }
    const std::optional<Matching> matching = lift_solution(rec, *sol.support);
    if (!matching) {
        std::cout << "spurious: solution does not lift to a matching\n";
        return 4;
    }
    if (!out.empty())
        write_file(out, support_line(matching->indices) + "\n");
    std::cout << "matching " << matching_labels(*matching) << '\n';
    return 0;
}

int cmd_verify(const std::string& in, const std::string& kind_name, const VerifyOptions& opt,
               std::uint64_t samples, const std::string& witness_out) {
    const TdmInstance inst = parse_tdm(read_file(in));
    const ReductionKind kind = reduction_kind_from_string(kind_name);
    const RoundtripReport round = verify_roundtrip(inst, kind, opt);

    SoundnessBudget sb;
    sb.max_candidates = opt.budget;
    sb.max_dim = opt.max_dim;
    sb.samples = samples;
    sb.seed = opt.seed;
    const SoundnessReport sound = check_soundness(round.record, sb);

    const BitMatrix& H = instance_matrix(rebuild_instance(round.record));
    std::cout << "reduced kind " << to_string(kind) << ": n=" << H.rows() << " r=" << H.cols()
              << " w=" << instance_weight(rebuild_instance(round.record)) << '\n';
    std::cout << "solve " << to_string(round.solve.status);
    if (round.solve.status == SolveStatus::Found)
        std::cout << " support " << support_line(round.solve.support);
    std::cout << " (checked " << round.solve.checked << ")\n";
    std::cout << "soundness: verdict " << to_string(sound.verdict) << ", method "
              << to_string(sound.method) << ", checked " << sound.checked << '\n';

    if (sound.verdict == Verdict::Unsound) {
        if (!witness_out.empty() && sound.witness)
            write_file(witness_out, support_line(*sound.witness) + "\n");
        std::cout << "result unsound\n";
        return 4;
    }
    if (round.solve.status == SolveStatus::Found) {
        if (!round.matching) {
            // the solver itself produced a spurious word
            if (!witness_out.empty())
                write_file(witness_out, support_line(round.solve.support) + "\n");
            std::cout << "result unsound\n";
            return 4;
        }
        std::cout << "matching " << matching_labels(*round.matching) << '\n';
        std::cout << "result solved\n";
        return 0;
    }
    if (round.solve.status == SolveStatus::Unsat) {
        if (round.tdm_solvable && *round.tdm_solvable) {
            std::cout << "result inconclusive: reduced side unsat but the source has a "
                         "matching\n";
            return 2;
        }
        std::cout << "result unsat\n";
        return 1;
    }
    std::cout << "result inconclusive\n";
    return 2;
}

int cmd_check_props(const SpecFlags& flags, const std::string& mode_name,
                    const std::string& t_range, const std::string& u_range) {
    const std::optional<ConstraintSpec> spec = flags.build();
    if (!spec)
        throw std::invalid_argument("check-props needs a constraint spec");
    PropMode mode;
    if (mode_name == "psd")
        mode = PropMode::Psd;
    else if (mode_name == "psw")
        mode = PropMode::Psw;
    else
        throw std::invalid_argument("unknown mode '" + mode_name + "' (expected psd or psw)");
    const auto [t_lo, t_hi] = parse_range(t_range);
    const auto [u_lo, u_hi] = parse_range(u_range);
    const PropReport report = check_proposition_conditions(*spec, mode, t_lo, t_hi, u_lo, u_hi);
    std::cout << "mode " << mode_name << " points " << report.points << " failures "
              << report.failures.size() << '\n';
    const std::size_t shown = std::min<std::size_t>(report.failures.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) {
        const PropPointFailure& f = report.failures[i];
        std::cout << "t=" << f.t << " u=" << f.u << ": " << f.bound << '\n';
    }
    if (report.failures.size() > shown)
        std::cout << "... " << (report.failures.size() - shown) << " more\n";
    if (report.vacuous()) {
        std::cout << "no grid point clears lambda; nothing was checked\n";
        return 2;
    }
    return report.failures.empty() ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"3DM-to-syndrome-decoding reduction toolkit"};
    app.require_subcommand(1);

    // gen3dm
    auto* gen = app.add_subcommand("gen3dm", "generate a 3DM instance file");
    int gen_t = 0;
    long long gen_u = 0;
    bool gen_planted = false;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--t", gen_t, "element count per coordinate")->required();
    gen->add_option("--u", gen_u, "triple count")->required();
    gen->add_flag("--planted", gen_planted, "hide a guaranteed perfect matching");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--out", gen_out, "output .3dm path")->required();

    // reduce
    auto* red = app.add_subcommand("reduce", "reduce a 3DM instance to a decoding instance");
    std::string red_in, red_kind, red_strategy = "zero-rows", red_out_inst, red_out_rec;
    std::uint64_t red_seed = 0;
    std::size_t red_max_m = 30;
    SpecFlags red_spec;
    red->add_option("--in", red_in, "input .3dm path")->required();
    red->add_option("--kind", red_kind,
                    "coset | bmvt | compact | gpsd | gpsw | generic-psd | generic-psw")
        ->required();
    red->add_option("--strategy", red_strategy, "padding strategy: zero-rows | random-fresh");
    red->add_option("--seed", red_seed, "padding seed");
    red->add_option("--max-m", red_max_m, "largest power-of-2 exponent tried");
    red_spec.attach(red);
    red->add_option("--out-instance", red_out_inst, "output instance path")->required();
    red->add_option("--out-record", red_out_rec, "output record path")->required();

    // solve
    auto* sol = app.add_subcommand("solve", "solve a decoding instance");
    std::string sol_in, sol_method = "exhaustive", sol_out;
    std::uint64_t sol_seed = 0, sol_budget = 10'000'000, sol_iterations = 10'000;
    std::size_t sol_max_dim = 20;
    sol->add_option("--in", sol_in, "input instance path")->required();
    sol->add_option("--method", sol_method, "exhaustive | prange");
    sol->add_option("--seed", sol_seed, "prange seed");
    sol->add_option("--budget", sol_budget, "exhaustive candidate cap");
    sol->add_option("--iterations", sol_iterations, "prange restarts");
    sol->add_option("--max-dim", sol_max_dim, "nullspace enumeration cap");
    sol->add_option("--out", sol_out, "solution file path");

    // lift
    auto* lif = app.add_subcommand("lift", "lift a solution back to a matching");
    std::string lif_record, lif_solution, lif_out;
    lif->add_option("--record", lif_record, "reduction record path")->required();
    lif->add_option("--solution", lif_solution, "solution file path")->required();
    lif->add_option("--out", lif_out, "matching output path");

    // verify
    auto* ver = app.add_subcommand("verify", "reduce, solve, lift, and check soundness");
    std::string ver_in, ver_kind, ver_method = "exhaustive", ver_strategy = "zero-rows";
    std::string ver_witness;
    std::uint64_t ver_seed = 0, ver_budget = 10'000'000, ver_iterations = 10'000;
    std::uint64_t ver_samples = 100'000;
    std::size_t ver_max_dim = 20, ver_max_m = 30;
    SpecFlags ver_spec;
    ver->add_option("--in", ver_in, "input .3dm path")->required();
    ver->add_option("--kind", ver_kind,
                    "coset | bmvt | compact | gpsd | gpsw | generic-psd | generic-psw")
        ->required();
    ver->add_option("--method", ver_method, "exhaustive | prange");
    ver->add_option("--seed", ver_seed, "seed for padding, prange, and sampling");
    ver->add_option("--budget", ver_budget, "enumeration cap");
    ver->add_option("--iterations", ver_iterations, "prange restarts");
    ver->add_option("--samples", ver_samples, "soundness sampling draws");
    ver->add_option("--max-dim", ver_max_dim, "nullspace enumeration cap");
    ver->add_option("--max-m", ver_max_m, "largest power-of-2 exponent tried");
    ver->add_option("--strategy", ver_strategy, "padding strategy: zero-rows | random-fresh");
    ver_spec.attach(ver);
    ver->add_option("--witness-out", ver_witness, "path for a spurious-solution witness");

    // check-props
    auto* chk = app.add_subcommand("check-props", "check validity bounds over a (t, u) grid");
    std::string chk_mode = "psd", chk_t, chk_u;
    SpecFlags chk_spec;
    chk_spec.attach(chk);
    chk->add_option("--mode", chk_mode, "psd | psw");
    chk->add_option("--t", chk_t, "t range, N or LO..HI")->required();
    chk->add_option("--u", chk_u, "u range, N or LO..HI")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 5;
    }

    try {
        if (gen->parsed())
            return cmd_gen3dm(gen_t, gen_u, gen_planted, gen_seed, gen_out);
        if (red->parsed()) {
            ReductionOptions opt;
            opt.strategy = padding_strategy_from_string(red_strategy);
            opt.seed = red_seed;
            opt.m_ceiling = red_max_m;
            opt.spec = red_spec.build();
            return cmd_reduce(red_in, red_kind, opt, red_out_inst, red_out_rec);
        }
        if (sol->parsed())
            return cmd_solve(sol_in, sol_method, sol_seed, sol_budget, sol_iterations,
                             sol_max_dim, sol_out);
        if (lif->parsed())
            return cmd_lift(lif_record, lif_solution, lif_out);
        if (ver->parsed()) {
            VerifyOptions opt;
            if (ver_method == "exhaustive") {
                opt.solver = SolverChoice::Exhaustive;
            } else if (ver_method == "prange") {
                opt.solver = SolverChoice::Prange;
            } else {
                throw std::invalid_argument("unknown method '" + ver_method +
                                            "' (expected exhaustive or prange)");
            }
            opt.budget = ver_budget;
            opt.iterations = ver_iterations;
            opt.max_dim = ver_max_dim;
            opt.seed = ver_seed;
            opt.reduction.strategy = padding_strategy_from_string(ver_strategy);
            opt.reduction.seed = ver_seed;
            opt.reduction.m_ceiling = ver_max_m;
            opt.reduction.spec = ver_spec.build();
            return cmd_verify(ver_in, ver_kind, opt, ver_samples, ver_witness);
        }
        if (chk->parsed())
            return cmd_check_props(chk_spec, chk_mode, chk_t, chk_u);
        return 5;
    } catch (const Inapplicable& e) {
        std::cerr << "not applicable: " << e.what() << '\n';
        return 3;
    } catch (const ConditionViolated& e) {
        std::cerr << "condition violated: " << e.what() << '\n';
        return 3;
    } catch (const NotInteger& e) {
        std::cerr << "not integral: " << e.what() << '\n';
        return 3;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return 3;
    } catch (const NoFeasibleM& e) {
        std::cerr << "no feasible m: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 5;
    }
}
