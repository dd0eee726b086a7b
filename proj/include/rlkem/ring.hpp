#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rlkem/params.hpp"
#include "rlkem/xof.hpp"

namespace rlkem {

// Element of R_q: length-n coefficient vector, every coefficient canonical
// in [0, q).  Signed (centered) views exist only in the analyzer and tests.
struct ModPoly {
    ParamSet params;
    std::vector<uint32_t> coeffs;

    explicit ModPoly(const ParamSet& p) : params(p), coeffs(p.n, 0) {}
    ModPoly(const ParamSet& p, std::vector<uint32_t> c);

    bool operator==(const ModPoly& o) const { return params == o.params && coeffs == o.coeffs; }
};

ModPoly poly_add(const ModPoly& a, const ModPoly& b);
ModPoly poly_sub(const ModPoly& a, const ModPoly& b);

// Reference negacyclic multiplier: c_i = sum_{j+l=i} a_j b_l - sum_{j+l=i+n} a_j b_l.
ModPoly negacyclic_mul_schoolbook(const ModPoly& a, const ModPoly& b);

// Precomputed tables for the negacyclic NTT of a given ParamSet.  The twist
// root gamma is the smallest primitive 2n-th root of unity obtained by
// exponentiating the smallest generator of Z_q^*, so transforms are
// reproducible across implementations.
class NttTables {
  public:
    explicit NttTables(const ParamSet& p);  // throws UnsupportedModulus

    const ParamSet& params() const { return params_; }
    uint32_t gamma() const { return gamma_; }

    void forward(std::vector<uint32_t>& a) const;
    void inverse(std::vector<uint32_t>& a) const;

  private:
    ParamSet params_;
    uint32_t gamma_;
    std::vector<uint32_t> gamma_pow_;      // gamma^i,  i in [0, n)
    std::vector<uint32_t> gamma_inv_pow_;  // gamma^-i
    std::vector<uint32_t> omega_pow_;      // omega^i = gamma^2i
    std::vector<uint32_t> omega_inv_pow_;
    uint32_t n_inv_;
};

// Shared per-ParamSet table cache.
std::shared_ptr<const NttTables> ntt_tables_for(const ParamSet& p);

ModPoly ntt_forward(const ModPoly& a);
ModPoly ntt_inverse(const ModPoly& a);
ModPoly pointwise_mul(const ModPoly& a, const ModPoly& b);

// Fast negacyclic multiply; falls back to the schoolbook path when the
// modulus has no 2n-th root of unity.
ModPoly negacyclic_mul(const ModPoly& a, const ModPoly& b);

// Each coefficient is sum(b_i) - sum(b_i') over 2k XOF bits, consumed
// little-endian, coefficient-major.
ModPoly sample_binomial(Xof& xof, const ParamSet& p);

// Rejection sampling: ceil(log2 q)-bit chunks, values >= q rejected.
ModPoly sample_uniform(Xof& xof, const ParamSet& p);

uint32_t mod_pow(uint32_t base, uint64_t exp, uint32_t q);
uint32_t mod_inv(uint32_t a, uint32_t q);

}  // namespace rlkem
