#pragma once

#include <cstdint>
#include <vector>

#include "rlkem/ring.hpp"

namespace rlkem {

// Compression rate on one ciphertext polynomial: a power of two in
// [2, 2^ceil(log2 q)], or Full (lossless, ceil(log2 q) bits/coefficient).
struct Rate {
    uint32_t r = 0;  // 0 encodes Full

    static Rate full() { return Rate{0}; }
    static Rate of(uint32_t r);  // validates power of two >= 2

    bool is_full() const { return r == 0; }
    uint32_t bits(const ParamSet& p) const;
};

struct CompressionRates {
    Rate r_v;  // rate on v'
    Rate r_u;  // rate on u-hat
};

// Per-coefficient h_i = round(p_i * r / q) mod r; ties at .5 round up.
// The mod r folds the top rounding bucket back to 0.  Full rate = identity.
ModPoly compress(const ModPoly& p, Rate rate);

// Per-coefficient round(h_i * q / r); input coefficients must be < r.
ModPoly decompress(const ModPoly& h, Rate rate);

// Tightly bit-packed polynomial: coefficient-major, little-endian within
// each bits_per_coeff field, trailing pad bits zero.
struct PackedPoly {
    uint32_t bits_per_coeff;
    std::vector<uint8_t> bytes;
};

PackedPoly pack(const ModPoly& p, uint32_t bits_per_coeff);
ModPoly unpack(const PackedPoly& pp, const ParamSet& params);

// n/8 * (bits(r_v) + bits(r_u)) bytes.
size_t ciphertext_size(const ParamSet& p, const CompressionRates& rates);

}  // namespace rlkem
