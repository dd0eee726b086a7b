#include "rlkem/bch.hpp"

#include <algorithm>

namespace rlkem {

namespace {

// Fixed primitive polynomials for the field sizes the paper's codes use.
uint32_t fixed_primitive_poly(unsigned m) {
    switch (m) {
        case 4:  return (1u << 4) | (1u << 1) | 1u;            // x^4+x+1
        case 9:  return (1u << 9) | (1u << 4) | 1u;            // x^9+x^4+1
        case 10: return (1u << 10) | (1u << 3) | 1u;           // x^10+x^3+1
        default: return 0;
    }
}

bool try_build_tables(unsigned m, uint32_t poly, std::vector<uint32_t>& log,
                      std::vector<uint32_t>& antilog) {
    const uint32_t order = (1u << m) - 1;
    antilog.assign(order, 0);
    log.assign(1u << m, 0);
    uint32_t x = 1;
    for (uint32_t i = 0; i < order; ++i) {
        if (i > 0 && x == 1) return false;  // period < order: not primitive
        antilog[i] = x;
        log[x] = i;
        x <<= 1;
        if (x & (1u << m)) x ^= poly;
    }
    return x == 1;
}

// Multiply polynomials over GF(2); coefficient i of x^i.
std::vector<uint8_t> gf2_poly_mul(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
    std::vector<uint8_t> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j) c[i + j] ^= b[j];
    return c;
}

}  // namespace

GfField::GfField(unsigned m) : m_(m), order_((1u << m) - 1) {
    if (m < 2 || m > 16) throw ParameterError("field degree m out of supported range [2,16]");
    prim_poly_ = fixed_primitive_poly(m);
    if (prim_poly_ != 0) {
        if (!try_build_tables(m, prim_poly_, log_, antilog_))
            throw ParameterError("fixed primitive polynomial is not primitive");
    } else {
        for (uint32_t poly = (1u << m) | 1u;; poly += 2) {
            if (poly >= (2u << m)) throw ParameterError("no primitive polynomial found");
            if (try_build_tables(m, poly, log_, antilog_)) { prim_poly_ = poly; break; }
        }
    }
}

uint32_t GfField::mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return antilog_[(log_[a] + log_[b]) % order_];
}

uint32_t GfField::inv(uint32_t a) const {
    if (a == 0) throw ParameterError("inverse of zero");
    return antilog_[(order_ - log_[a]) % order_];
}

BchSpec build_bch(unsigned m, uint32_t ct, uint32_t shorten) {
    GfField field(m);
    const uint32_t n_full = field.order();
    if (ct < 1 || 2 * ct >= n_full) throw ParameterError("error capability out of range");

    // cyclotomic cosets of 1..2t mod 2^m-1 -> minimal polynomials -> lcm
    std::vector<uint8_t> covered(n_full, 0);
    std::vector<uint8_t> generator{1};
    for (uint32_t i = 1; i <= 2 * ct; ++i) {
        if (covered[i]) continue;
        std::vector<uint32_t> coset;
        uint32_t j = i;
        do {
            coset.push_back(j);
            covered[j] = 1;
            j = static_cast<uint32_t>((static_cast<uint64_t>(j) * 2) % n_full);
        } while (j != i);

        // minimal polynomial of alpha^i: product of (x + alpha^c), c in coset
        std::vector<uint32_t> mp{1};  // coefficients in GF(2^m), mp[d] = coeff of x^d
        for (uint32_t c : coset) {
            std::vector<uint32_t> next(mp.size() + 1, 0);
            uint32_t root = field.pow_alpha(c);
            for (size_t d = 0; d < mp.size(); ++d) {
                next[d + 1] ^= mp[d];
                next[d] ^= field.mul(mp[d], root);
            }
            mp = std::move(next);
        }
        std::vector<uint8_t> mp2(mp.size());
        for (size_t d = 0; d < mp.size(); ++d) {
            if (mp[d] > 1) throw ParameterError("minimal polynomial not binary");
            mp2[d] = static_cast<uint8_t>(mp[d]);
        }
        generator = gf2_poly_mul(generator, mp2);
    }

    const uint32_t deg_g = static_cast<uint32_t>(generator.size()) - 1;
    if (deg_g + shorten >= n_full) throw ParameterError("shortened dimension not positive");
    const uint32_t ck = n_full - deg_g - shorten;

    // generator must divide x^n_full + 1
    std::vector<uint8_t> rem(n_full + 1, 0);
    rem[0] = 1;
    rem[n_full] = 1;
    for (size_t d = n_full; d + 1 >= generator.size() && d < rem.size(); --d) {
        if (rem[d]) {
            size_t shift = d - deg_g;
            for (size_t t = 0; t < generator.size(); ++t) rem[shift + t] ^= generator[t];
        }
        if (d == deg_g) break;
    }
    for (uint8_t bit : rem)
        if (bit) throw ParameterError("generator does not divide x^n + 1");

    return BchSpec{std::move(field), n_full, shorten, n_full - shorten, ck, ct,
                   std::move(generator)};
}

std::vector<uint8_t> bch_encode(const BchSpec& spec, const std::vector<uint8_t>& msg) {
    if (msg.size() != spec.ck) throw ParameterError("message length != Ck");
    const uint32_t deg_g = static_cast<uint32_t>(spec.generator.size()) - 1;
    // full[p] is the coefficient of x^(n_full-1-p); shortened zeros lead.
    std::vector<uint8_t> full(spec.n_full, 0);
    for (uint32_t i = 0; i < spec.ck; ++i) full[spec.shorten + i] = msg[i] & 1;

    // parity = (data(x) * x^deg_g) mod g, long division from the top
    std::vector<uint8_t> work(full);
    for (uint32_t p = 0; p + deg_g < spec.n_full; ++p) {
        if (work[p]) {
            for (uint32_t t = 0; t <= deg_g; ++t) work[p + t] ^= spec.generator[deg_g - t];
        }
    }
    for (uint32_t t = 0; t < deg_g; ++t)
        full[spec.n_full - deg_g + t] = work[spec.n_full - deg_g + t];

    return std::vector<uint8_t>(full.begin() + spec.shorten, full.end());
}

std::optional<BchDecodeResult> bch_decode(const BchSpec& spec,
                                          const std::vector<uint8_t>& received) {
    if (received.size() != spec.cn) throw ParameterError("received length != Cn");
    const GfField& gf = spec.field;
    const uint32_t two_t = 2 * spec.ct;

    // syndromes S_j = r(alpha^j); position p carries x^(n_full-1-p)
    std::vector<uint32_t> syn(two_t, 0);
    bool all_zero = true;
    for (uint32_t p = 0; p < spec.cn; ++p) {
        if (!(received[p] & 1)) continue;
        uint32_t e = spec.n_full - 1 - (spec.shorten + p);
        for (uint32_t j = 1; j <= two_t; ++j)
            syn[j - 1] ^= gf.pow_alpha(static_cast<uint32_t>((static_cast<uint64_t>(j) * e) % spec.n_full));
    }
    for (uint32_t s : syn) all_zero = all_zero && s == 0;
    if (all_zero) {
        return BchDecodeResult{
            std::vector<uint8_t>(received.begin(), received.begin() + spec.ck), 0};
    }

    // Berlekamp-Massey
    std::vector<uint32_t> sigma{1}, prev{1};
    uint32_t L = 0, gap = 1, b = 1;
    for (uint32_t it = 0; it < two_t; ++it) {
        uint32_t d = syn[it];
        for (uint32_t i = 1; i <= L && i < sigma.size(); ++i)
            if (sigma[i]) d ^= gf.mul(sigma[i], syn[it - i]);
        if (d == 0) {
            ++gap;
        } else {
            std::vector<uint32_t> t_save = sigma;
            uint32_t coef = gf.mul(d, gf.inv(b));
            if (sigma.size() < prev.size() + gap) sigma.resize(prev.size() + gap, 0);
            for (size_t i = 0; i < prev.size(); ++i)
                if (prev[i]) sigma[i + gap] ^= gf.mul(coef, prev[i]);
            if (2 * L <= it) {
                L = it + 1 - L;
                prev = std::move(t_save);
                b = d;
                gap = 1;
            } else {
                ++gap;
            }
        }
    }
    while (!sigma.empty() && sigma.back() == 0) sigma.pop_back();
    const uint32_t deg_sigma = static_cast<uint32_t>(sigma.size()) - 1;
    if (deg_sigma > spec.ct) return std::nullopt;

    // Chien search: sigma(alpha^i) == 0  =>  error at exponent (n_full - i) % n_full
    std::vector<uint8_t> corrected(received);
    uint32_t roots = 0;
    bool bad_position = false;
    for (uint32_t i = 0; i < spec.n_full; ++i) {
        uint32_t val = 0;
        for (uint32_t d = 0; d < sigma.size(); ++d) {
            if (!sigma[d]) continue;
            val ^= gf.mul(sigma[d],
                          gf.pow_alpha(static_cast<uint32_t>((static_cast<uint64_t>(d) * i) % spec.n_full)));
        }
        if (val == 0) {
            ++roots;
            uint32_t e = (spec.n_full - i) % spec.n_full;
            uint32_t p = spec.n_full - 1 - e;
            if (p < spec.shorten) {
                bad_position = true;
            } else {
                corrected[p - spec.shorten] ^= 1;
            }
        }
    }
    if (bad_position || roots != deg_sigma) return std::nullopt;

    return BchDecodeResult{
        std::vector<uint8_t>(corrected.begin(), corrected.begin() + spec.ck), deg_sigma};
}

}  // namespace rlkem
