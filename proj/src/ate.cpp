#include "rlkem/ate.hpp"

#include <cstdlib>

namespace rlkem {

ModPoly ate_encode(const std::vector<uint8_t>& bits, const AteParams& ate, const ParamSet& params) {
    if (ate.m < 1) throw ParameterError("repetition count must be >= 1");
    if (static_cast<uint64_t>(ate.m) * ate.block_len > params.n)
        throw ParameterError("m * block_len exceeds ring dimension");
    if (bits.size() != ate.block_len) throw ParameterError("bit count != block_len");
    const uint32_t pole = params.q / 2;
    ModPoly v(params);
    for (uint32_t i = 0; i < ate.block_len; ++i) {
        if (bits[i] & 1) {
            for (uint32_t j = 0; j < ate.m; ++j) v.coeffs[i + j * ate.block_len] = pole;
        }
    }
    return v;
}

std::vector<uint8_t> ate_decode(const ModPoly& v, const AteParams& ate) {
    if (static_cast<uint64_t>(ate.m) * ate.block_len > v.params.n)
        throw ParameterError("m * block_len exceeds ring dimension");
    const int64_t pole = v.params.q / 2;
    std::vector<uint8_t> bits(ate.block_len);
    for (uint32_t i = 0; i < ate.block_len; ++i) {
        uint64_t t = 0;
        for (uint32_t j = 0; j < ate.m; ++j)
            t += static_cast<uint64_t>(
                std::llabs(static_cast<int64_t>(v.coeffs[i + j * ate.block_len]) - pole));
        // bit = 1 iff t < m*q/4; tie decodes to 0
        bits[i] = (4 * t < static_cast<uint64_t>(ate.m) * v.params.q) ? 1 : 0;
    }
    return bits;
}

}  // namespace rlkem
