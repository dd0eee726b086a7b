#pragma once

#include <cstdint>
#include <vector>

#include "rlkem/ring.hpp"

namespace rlkem {

// Additive threshold encoding: bit i is repeated m times at coefficient
// positions i + j*B (j = 0..m-1) as bit * floor(q/2).
struct AteParams {
    uint32_t m;          // repetition count, >= 1
    uint32_t block_len;  // B, coded bits per repetition block; m*B <= n
};

ModPoly ate_encode(const std::vector<uint8_t>& bits, const AteParams& ate, const ParamSet& params);

// Per bit: t = sum over j of |v[i + j*B] - floor(q/2)| on canonical
// representatives; bit = 1 iff t < m*q/4 (tie decodes to 0).
std::vector<uint8_t> ate_decode(const ModPoly& v, const AteParams& ate);

}  // namespace rlkem
