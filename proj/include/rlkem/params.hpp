#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rlkem {

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParameterMismatch : ParameterError {
    using ParameterError::ParameterError;
};

struct UnsupportedModulus : ParameterError {
    using ParameterError::ParameterError;
};

struct EncodingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ring parameters for R_q = Z_q[x]/(x^n + 1).
//
// n must be a power of two, q prime.  The NTT fast path additionally needs
// q == 1 (mod 2n); parameter sets without that property are accepted but
// multiplication falls back to the schoolbook routine.
struct ParamSet {
    uint32_t n;
    uint32_t q;
    uint32_t k;  // centered binomial noise parameter

    ParamSet(uint32_t n_, uint32_t q_, uint32_t k_);

    bool ntt_supported() const { return (q - 1) % (2 * n) == 0; }
    uint32_t coeff_bits() const;  // ceil(log2 q)

    bool operator==(const ParamSet& o) const { return n == o.n && q == o.q && k == o.k; }
    bool operator!=(const ParamSet& o) const { return !(*this == o); }
};

// Paper defaults.
ParamSet newhope512_params();
ParamSet newhope1024_params();

}  // namespace rlkem
