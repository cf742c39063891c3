#ifndef SDRED_SD_INSTANCE_HPP
#define SDRED_SD_INSTANCE_HPP

#include <cstddef>
#include <string>
#include <variant>

#include "sdred/gf2.hpp"

namespace sdred {

// COSET WEIGHT instance: does some y of weight <= w satisfy yH = S?
struct CosetInstance {
    BitMatrix H;
    BitVector S; // length H.cols()
    std::size_t w = 0;
    bool operator==(const CosetInstance&) const = default;
};

// SUBSPACE WEIGHT instance: does some nonzero codeword have weight exactly w?
struct SubspaceInstance {
    BitMatrix H;
    std::size_t w = 1; // >= 1, which rules out the null word
    bool operator==(const SubspaceInstance&) const = default;
};

using SdInstance = std::variant<CosetInstance, SubspaceInstance>;

// Instance file: the matrix text format, then "S <bits>" (coset only),
// then "w <int>", then "mode coset|subspace".
std::string serialize(const CosetInstance& inst);
std::string serialize(const SubspaceInstance& inst);
std::string serialize(const SdInstance& inst);
SdInstance parse_sd_instance(const std::string& text);

const BitMatrix& instance_matrix(const SdInstance& inst);
std::size_t instance_weight(const SdInstance& inst);

} // namespace sdred

#endif
