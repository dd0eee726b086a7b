#include "rlkem/codec.hpp"

namespace rlkem {

namespace {

// round(a/b) with ties toward +inf, a >= 0, b > 0
uint64_t div_round(uint64_t a, uint64_t b) { return (2 * a + b) / (2 * b); }

}  // namespace

Rate Rate::of(uint32_t r) {
    if (r < 2 || (r & (r - 1)) != 0) throw ParameterError("rate must be a power of two >= 2");
    return Rate{r};
}

uint32_t Rate::bits(const ParamSet& p) const {
    if (is_full()) return p.coeff_bits();
    uint32_t b = 0;
    while ((1u << b) < r) ++b;
    if (b > p.coeff_bits()) throw ParameterError("rate exceeds 2^ceil(log2 q)");
    return b;
}

ModPoly compress(const ModPoly& p, Rate rate) {
    if (rate.is_full()) return p;
    rate.bits(p.params);  // range check
    ModPoly out(p.params);
    for (size_t i = 0; i < p.coeffs.size(); ++i) {
        uint64_t h = div_round(static_cast<uint64_t>(p.coeffs[i]) * rate.r, p.params.q);
        out.coeffs[i] = static_cast<uint32_t>(h % rate.r);
    }
    return out;
}

ModPoly decompress(const ModPoly& h, Rate rate) {
    if (rate.is_full()) return h;
    rate.bits(h.params);
    ModPoly out(h.params);
    for (size_t i = 0; i < h.coeffs.size(); ++i) {
        if (h.coeffs[i] >= rate.r) throw EncodingError("compressed coefficient >= rate");
        out.coeffs[i] = static_cast<uint32_t>(
            div_round(static_cast<uint64_t>(h.coeffs[i]) * h.params.q, rate.r));
    }
    return out;
}

PackedPoly pack(const ModPoly& p, uint32_t bits_per_coeff) {
    if (bits_per_coeff == 0 || bits_per_coeff > 32) throw EncodingError("bad bits_per_coeff");
    PackedPoly out;
    out.bits_per_coeff = bits_per_coeff;
    out.bytes.assign((static_cast<size_t>(p.params.n) * bits_per_coeff + 7) / 8, 0);
    size_t bitpos = 0;
    for (uint32_t c : p.coeffs) {
        if (bits_per_coeff < 32 && c >= (1u << bits_per_coeff))
            throw EncodingError("coefficient does not fit in bits_per_coeff");
        for (uint32_t b = 0; b < bits_per_coeff; ++b, ++bitpos)
            out.bytes[bitpos / 8] |= static_cast<uint8_t>(((c >> b) & 1u) << (bitpos % 8));
    }
    return out;
}

ModPoly unpack(const PackedPoly& pp, const ParamSet& params) {
    const uint32_t bits = pp.bits_per_coeff;
    size_t need = (static_cast<size_t>(params.n) * bits + 7) / 8;
    if (pp.bytes.size() != need) throw EncodingError("packed polynomial has wrong length");
    ModPoly out(params);
    size_t bitpos = 0;
    for (uint32_t i = 0; i < params.n; ++i) {
        uint32_t c = 0;
        for (uint32_t b = 0; b < bits; ++b, ++bitpos)
            c |= static_cast<uint32_t>((pp.bytes[bitpos / 8] >> (bitpos % 8)) & 1u) << b;
        if (c >= params.q) throw EncodingError("unpacked coefficient >= q");
        out.coeffs[i] = c;
    }
    return out;
}

size_t ciphertext_size(const ParamSet& p, const CompressionRates& rates) {
    return static_cast<size_t>(p.n) / 8 * (rates.r_v.bits(p) + rates.r_u.bits(p));
}

}  // namespace rlkem
