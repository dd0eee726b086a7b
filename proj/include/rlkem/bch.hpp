#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rlkem/params.hpp"

namespace rlkem {

// GF(2^m) with log/antilog tables over a fixed primitive polynomial.
// Fixed polynomials per m (lowest-weight, standard):
//   m=4:  x^4+x+1   m=9:  x^9+x^4+1   m=10: x^10+x^3+1
// Other m use the first irreducible found by search.
class GfField {
  public:
    explicit GfField(unsigned m);

    unsigned m() const { return m_; }
    uint32_t order() const { return order_; }  // 2^m - 1
    uint32_t primitive_polynomial() const { return prim_poly_; }

    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
    uint32_t pow_alpha(uint32_t e) const { return antilog_[e % order_]; }
    uint32_t log_alpha(uint32_t a) const { return log_[a]; }

  private:
    unsigned m_;
    uint32_t order_;
    uint32_t prim_poly_;
    std::vector<uint32_t> log_;
    std::vector<uint32_t> antilog_;
};

// Narrow-sense binary BCH code, optionally shortened: the first `shorten`
// message positions are fixed to zero and never transmitted.
struct BchSpec {
    GfField field;
    uint32_t n_full;    // 2^m - 1
    uint32_t shorten;
    uint32_t cn;        // n_full - shorten
    uint32_t ck;        // dimension after shortening
    uint32_t ct;        // designed error-correction capability
    std::vector<uint8_t> generator;  // coefficients, generator[i] = coeff of x^i
};

// Generator = lcm of minimal polynomials of alpha^1..alpha^{2t}, built from
// cyclotomic cosets mod 2^m - 1.  Throws ParameterError if the shortened
// dimension is not positive.
BchSpec build_bch(unsigned m, uint32_t ct, uint32_t shorten);

// Systematic: message bits followed by deg(g) parity bits.
std::vector<uint8_t> bch_encode(const BchSpec& spec, const std::vector<uint8_t>& msg);

struct BchDecodeResult {
    std::vector<uint8_t> msg;
    uint32_t corrected;
};

// Syndromes -> Berlekamp-Massey -> Chien search.  Returns nullopt when the
// error pattern is uncorrectable (legitimate outcome, not a crash).
std::optional<BchDecodeResult> bch_decode(const BchSpec& spec, const std::vector<uint8_t>& received);

}  // namespace rlkem
