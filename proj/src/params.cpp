#include "rlkem/params.hpp"

namespace rlkem {

namespace {

bool is_power_of_two(uint32_t x) { return x != 0 && (x & (x - 1)) == 0; }

bool is_prime(uint32_t x) {
    if (x < 2) return false;
    for (uint64_t d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

}  // namespace

ParamSet::ParamSet(uint32_t n_, uint32_t q_, uint32_t k_) : n(n_), q(q_), k(k_) {
    if (!is_power_of_two(n) || n < 2)
        throw ParameterError("n must be a power of two >= 2");
    if (!is_prime(q))
        throw ParameterError("q must be prime");
    if (k > q / 8)
        throw ParameterError("k must satisfy k <= q/8");
}

uint32_t ParamSet::coeff_bits() const {
    uint32_t b = 0;
    while ((1u << b) < q) ++b;
    return b;
}

ParamSet newhope512_params() { return ParamSet(512, 12289, 8); }
ParamSet newhope1024_params() { return ParamSet(1024, 12289, 8); }

}  // namespace rlkem
