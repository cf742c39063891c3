#include "sdred/sd_instance.hpp"

#include <sstream>

namespace sdred {

std::string serialize(const CosetInstance& inst) {
    std::ostringstream out;
    out << serialize(inst.H);
    out << "S " << inst.S.to_string() << '\n';
    out << "w " << inst.w << '\n';
    out << "mode coset\n";
    return out.str();
}

std::string serialize(const SubspaceInstance& inst) {
    std::ostringstream out;
    out << serialize(inst.H);
    out << "w " << inst.w << '\n';
    out << "mode subspace\n";
    return out.str();
}

std::string serialize(const SdInstance& inst) {
    return std::visit([](const auto& i) { return serialize(i); }, inst);
}

SdInstance parse_sd_instance(const std::string& text) {
    std::istringstream in(text);
    BitMatrix H = parse_matrix(in);
    bool have_s = false, have_w = false;
    BitVector S;
    std::size_t w = 0;
    std::string mode;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "S") {
            std::string bits;
            if (!(ls >> bits))
                throw ParseError("instance: S line without bits");
            S = parse_vector(bits);
            have_s = true;
        } else if (key == "w") {
            long long v = -1;
            if (!(ls >> v) || v < 0)
                throw ParseError("instance: w line needs a non-negative integer");
            w = std::size_t(v);
            have_w = true;
        } else if (key == "mode") {
            if (!(ls >> mode))
                throw ParseError("instance: mode line without value");
        } else {
            throw ParseError("instance: unexpected line \"" + line + "\"");
        }
    }
    if (!have_w)
        throw ParseError("instance: missing w line");
    if (mode == "coset") {
        if (!have_s)
            throw ParseError("instance: coset mode requires an S line");
        if (S.size() != H.cols())
            throw ParseError("instance: S has length " + std::to_string(S.size()) +
                             " but r = " + std::to_string(H.cols()));
        return CosetInstance{std::move(H), std::move(S), w};
    }
    if (mode == "subspace") {
        if (have_s)
            throw ParseError("instance: subspace mode must not carry an S line");
        if (w < 1)
            throw ParseError("instance: subspace mode requires w >= 1");
        return SubspaceInstance{std::move(H), w};
    }
    throw ParseError(mode.empty() ? "instance: missing mode line"
                                  : "instance: unknown mode \"" + mode + "\"");
}

const BitMatrix& instance_matrix(const SdInstance& inst) {
    return std::visit([](const auto& i) -> const BitMatrix& { return i.H; }, inst);
}

std::size_t instance_weight(const SdInstance& inst) {
    return std::visit([](const auto& i) { return i.w; }, inst);
}

} // namespace sdred
