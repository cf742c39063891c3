#include "sdred/tdm.hpp"

#include "sdred/rng.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sdred {

namespace {

std::vector<int> random_permutation(int t, std::mt19937_64& rng) {
    std::vector<int> p(t);
    for (int i = 0; i < t; ++i)
        p[i] = i + 1;
    for (int i = t - 1; i > 0; --i)
        std::swap(p[i], p[std::size_t(rand_below(rng, std::uint64_t(i) + 1))]);
    return p;
}

Triple random_triple(int t, std::mt19937_64& rng) {
    Triple tr;
    tr.a = int(rand_below(rng, std::uint64_t(t))) + 1;
    tr.b = int(rand_below(rng, std::uint64_t(t))) + 1;
    tr.c = int(rand_below(rng, std::uint64_t(t))) + 1;
    return tr;
}

} // namespace

bool is_matching(const TdmInstance& inst, const std::vector<std::size_t>& sel) {
    if (sel.size() != std::size_t(inst.t))
        return false;
    std::vector<char> used_a(inst.t + 1, 0), used_b(inst.t + 1, 0), used_c(inst.t + 1, 0);
    std::vector<char> taken(inst.u(), 0);
    for (std::size_t idx : sel) {
        if (idx >= inst.u())
            throw DimensionError("triple index " + std::to_string(idx) + " out of range (u " +
                                 std::to_string(inst.u()) + ")");
        if (taken[idx])
            return false;
        taken[idx] = 1;
        const Triple& tr = inst.triples[idx];
        if (used_a[tr.a] || used_b[tr.b] || used_c[tr.c])
            return false;
        used_a[tr.a] = used_b[tr.b] = used_c[tr.c] = 1;
    }
    return true;
}

bool has_duplicate_triples(const TdmInstance& inst) {
    std::set<std::tuple<int, int, int>> seen;
    for (const Triple& tr : inst.triples)
        if (!seen.insert({tr.a, tr.b, tr.c}).second)
            return true;
    return false;
}

namespace {

struct Backtracker {
    const TdmInstance& inst;
    std::vector<char> used[3]; // per coordinate position, values 1..t
    std::vector<std::size_t> chosen;

    explicit Backtracker(const TdmInstance& i) : inst(i) {
        for (auto& coord : used)
            coord.assign(std::size_t(inst.t) + 1, 0);
    }

    int coord(const Triple& tr, int pos) const { return pos == 0 ? tr.a : pos == 1 ? tr.b : tr.c; }

    bool fits(const Triple& tr) const {
        return !used[0][tr.a] && !used[1][tr.b] && !used[2][tr.c];
    }

    bool search() {
        if (chosen.size() == std::size_t(inst.t))
            return true;
        // most-constrained uncovered slot, ties by lowest slot index
        int best_pos = -1, best_val = 0;
        std::size_t best_count = 0;
        for (int pos = 0; pos < 3; ++pos) {
            for (int val = 1; val <= inst.t; ++val) {
                if (used[pos][val])
                    continue;
                std::size_t count = 0;
                for (const Triple& tr : inst.triples)
                    if (coord(tr, pos) == val && fits(tr))
                        ++count;
                if (best_pos < 0 || count < best_count) {
                    best_pos = pos;
                    best_val = val;
                    best_count = count;
                    if (count == 0)
                        return false;
                }
            }
        }
        for (std::size_t i = 0; i < inst.u(); ++i) {
            const Triple& tr = inst.triples[i];
            if (coord(tr, best_pos) != best_val || !fits(tr))
                continue;
            used[0][tr.a] = used[1][tr.b] = used[2][tr.c] = 1;
            chosen.push_back(i);
            if (search())
                return true;
            chosen.pop_back();
            used[0][tr.a] = used[1][tr.b] = used[2][tr.c] = 0;
        }
        return false;
    }
};

} // namespace

std::optional<Matching> solve_3dm(const TdmInstance& inst) {
    Backtracker bt(inst);
    if (!bt.search())
        return std::nullopt;
    Matching m{std::move(bt.chosen)};
    std::sort(m.indices.begin(), m.indices.end());
    return m;
}

TdmInstance gen_random(int t, std::size_t u, std::uint64_t seed) {
    if (t < 0)
        throw std::invalid_argument("t must be non-negative");
    if (t == 0 && u > 0)
        throw std::invalid_argument("no triples exist over an empty T");
    std::mt19937_64 rng(seed);
    TdmInstance inst;
    inst.t = t;
    inst.triples.reserve(u);
    for (std::size_t i = 0; i < u; ++i)
        inst.triples.push_back(random_triple(t, rng));
    return inst;
}

TdmInstance gen_planted(int t, std::size_t u, std::uint64_t seed) {
    if (t < 0)
        throw std::invalid_argument("t must be non-negative");
    if (u < std::size_t(t))
        throw std::invalid_argument("planted instance needs u >= t (got u=" + std::to_string(u) +
                                    ", t=" + std::to_string(t) + ")");
    if (t == 0 && u > 0)
        throw std::invalid_argument("no triples exist over an empty T");
    std::mt19937_64 rng(seed);
    TdmInstance inst;
    inst.t = t;
    inst.triples.reserve(u);
    auto pa = random_permutation(t, rng);
    auto pb = random_permutation(t, rng);
    auto pc = random_permutation(t, rng);
    for (int i = 0; i < t; ++i)
        inst.triples.push_back({pa[i], pb[i], pc[i]});
    for (std::size_t i = t; i < u; ++i)
        inst.triples.push_back(random_triple(t, rng));
    for (std::size_t i = inst.triples.size(); i > 1; --i)
        std::swap(inst.triples[i - 1], inst.triples[rand_below(rng, i)]);
    return inst;
}

TdmInstance parse_tdm(const std::string& text) {
    std::istringstream in(text);
    long long t = 0, u = 0;
    if (!(in >> t >> u))
        throw ParseError(".3dm header: expected \"t u\"");
    if (t < 0 || u < 0)
        throw ParseError(".3dm header: t and u must be non-negative");
    TdmInstance inst;
    inst.t = int(t);
    inst.triples.reserve(std::size_t(u));
    for (long long i = 0; i < u; ++i) {
        long long a = 0, b = 0, c = 0;
        if (!(in >> a >> b >> c))
            throw ParseError(".3dm triple " + std::to_string(i) + ": expected \"a b c\"");
        for (long long v : {a, b, c})
            if (v < 1 || v > t)
                throw ParseError(".3dm triple " + std::to_string(i) + ": coordinate " +
                                 std::to_string(v) + " outside [1, " + std::to_string(t) + "]");
        inst.triples.push_back({int(a), int(b), int(c)});
    }
    std::string rest;
    if (in >> rest)
        throw ParseError(".3dm: trailing content \"" + rest + "\"");
    return inst;
}

std::string serialize(const TdmInstance& inst) {
    std::ostringstream out;
    out << inst.t << ' ' << inst.u() << '\n';
    for (const Triple& tr : inst.triples)
        out << tr.a << ' ' << tr.b << ' ' << tr.c << '\n';
    return out.str();
}

} // namespace sdred
