#include "rlkem/ring.hpp"

#include <map>
#include <mutex>

namespace rlkem {

namespace {

uint32_t mod_mul(uint32_t a, uint32_t b, uint32_t q) {
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % q);
}

void check_same_params(const ModPoly& a, const ModPoly& b) {
    if (a.params != b.params) throw ParameterMismatch("operands have different ParamSets");
}

// In-place radix-2 NTT; w_pow[i] must hold w^i for a primitive n-th root w.
void ntt_radix2(std::vector<uint32_t>& a, const std::vector<uint32_t>& w_pow, uint32_t q) {
    const size_t n = a.size();
    // bit-reversal permutation
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        size_t step = n / len;
        for (size_t i = 0; i < n; i += len) {
            for (size_t j = 0; j < len / 2; ++j) {
                uint32_t w = w_pow[j * step];
                uint32_t u = a[i + j];
                uint32_t v = mod_mul(a[i + j + len / 2], w, q);
                a[i + j] = u + v >= q ? u + v - q : u + v;
                a[i + j + len / 2] = u >= v ? u - v : u + q - v;
            }
        }
    }
}

}  // namespace

uint32_t mod_pow(uint32_t base, uint64_t exp, uint32_t q) {
    uint64_t result = 1, b = base % q;
    while (exp) {
        if (exp & 1) result = result * b % q;
        b = b * b % q;
        exp >>= 1;
    }
    return static_cast<uint32_t>(result);
}

uint32_t mod_inv(uint32_t a, uint32_t q) { return mod_pow(a, q - 2, q); }

ModPoly::ModPoly(const ParamSet& p, std::vector<uint32_t> c) : params(p), coeffs(std::move(c)) {
    if (coeffs.size() != params.n) throw ParameterError("coefficient count != n");
    for (uint32_t x : coeffs)
        if (x >= params.q) throw ParameterError("coefficient out of [0, q)");
}

ModPoly poly_add(const ModPoly& a, const ModPoly& b) {
    check_same_params(a, b);
    ModPoly c(a.params);
    uint32_t q = a.params.q;
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        uint32_t s = a.coeffs[i] + b.coeffs[i];
        c.coeffs[i] = s >= q ? s - q : s;
    }
    return c;
}

ModPoly poly_sub(const ModPoly& a, const ModPoly& b) {
    check_same_params(a, b);
    ModPoly c(a.params);
    uint32_t q = a.params.q;
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        c.coeffs[i] = a.coeffs[i] >= b.coeffs[i] ? a.coeffs[i] - b.coeffs[i]
                                                 : a.coeffs[i] + q - b.coeffs[i];
    return c;
}

ModPoly negacyclic_mul_schoolbook(const ModPoly& a, const ModPoly& b) {
    check_same_params(a, b);
    const uint32_t n = a.params.n, q = a.params.q;
    ModPoly c(a.params);
    for (uint32_t i = 0; i < n; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (uint32_t j = 0; j < n; ++j) {
            uint64_t prod = static_cast<uint64_t>(a.coeffs[i]) * b.coeffs[j] % q;
            uint32_t idx = i + j;
            if (idx < n) {
                uint64_t s = c.coeffs[idx] + prod;
                c.coeffs[idx] = static_cast<uint32_t>(s >= q ? s - q : s);
            } else {
                idx -= n;  // x^n = -1
                c.coeffs[idx] = static_cast<uint32_t>(
                    c.coeffs[idx] >= prod ? c.coeffs[idx] - prod : c.coeffs[idx] + q - prod);
            }
        }
    }
    return c;
}

NttTables::NttTables(const ParamSet& p) : params_(p) {
    if (!p.ntt_supported())
        throw UnsupportedModulus("q has no primitive 2n-th root of unity (q != 1 mod 2n)");
    const uint32_t q = p.q, n = p.n;
    const uint32_t two_n = 2 * n;

    // prime factors of q-1
    std::vector<uint32_t> factors;
    uint32_t rem = q - 1;
    for (uint32_t d = 2; d * d <= rem; ++d) {
        if (rem % d == 0) {
            factors.push_back(d);
            while (rem % d == 0) rem /= d;
        }
    }
    if (rem > 1) factors.push_back(rem);

    // smallest generator of Z_q^*
    uint32_t g = 0;
    for (uint32_t cand = 2; cand < q && g == 0; ++cand) {
        bool ok = true;
        for (uint32_t f : factors)
            if (mod_pow(cand, (q - 1) / f, q) == 1) { ok = false; break; }
        if (ok) g = cand;
    }

    // smallest primitive 2n-th root of unity: minimum over g^(j*(q-1)/2n) with
    // gcd(j, 2n) = 1
    uint32_t base = mod_pow(g, (q - 1) / two_n, q);
    gamma_ = q;
    uint32_t pw = 1;
    for (uint32_t j = 0; j < two_n; ++j) {
        if (j > 0 && (j & 1) && pw < gamma_) gamma_ = pw;  // 2n is a power of two: odd j are coprime
        pw = mod_mul(pw, base, q);
    }

    gamma_pow_.resize(n);
    gamma_inv_pow_.resize(n);
    omega_pow_.resize(n);
    omega_inv_pow_.resize(n);
    uint32_t gamma_inv = mod_inv(gamma_, q);
    uint32_t omega = mod_mul(gamma_, gamma_, q);
    uint32_t omega_inv = mod_inv(omega, q);
    gamma_pow_[0] = gamma_inv_pow_[0] = omega_pow_[0] = omega_inv_pow_[0] = 1;
    for (uint32_t i = 1; i < n; ++i) {
        gamma_pow_[i] = mod_mul(gamma_pow_[i - 1], gamma_, q);
        gamma_inv_pow_[i] = mod_mul(gamma_inv_pow_[i - 1], gamma_inv, q);
        omega_pow_[i] = mod_mul(omega_pow_[i - 1], omega, q);
        omega_inv_pow_[i] = mod_mul(omega_inv_pow_[i - 1], omega_inv, q);
    }
    n_inv_ = mod_inv(n, q);
}

void NttTables::forward(std::vector<uint32_t>& a) const {
    const uint32_t q = params_.q;
    for (size_t i = 0; i < a.size(); ++i) a[i] = mod_mul(a[i], gamma_pow_[i], q);
    ntt_radix2(a, omega_pow_, q);
}

void NttTables::inverse(std::vector<uint32_t>& a) const {
    const uint32_t q = params_.q;
    ntt_radix2(a, omega_inv_pow_, q);
    for (size_t i = 0; i < a.size(); ++i)
        a[i] = mod_mul(mod_mul(a[i], n_inv_, q), gamma_inv_pow_[i], q);
}

std::shared_ptr<const NttTables> ntt_tables_for(const ParamSet& p) {
    static std::mutex mu;
    static std::map<std::pair<uint32_t, uint32_t>, std::shared_ptr<const NttTables>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p.n, p.q);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto tables = std::make_shared<const NttTables>(p);
    cache.emplace(key, tables);
    return tables;
}

ModPoly ntt_forward(const ModPoly& a) {
    auto tables = ntt_tables_for(a.params);
    ModPoly out = a;
    tables->forward(out.coeffs);
    return out;
}

ModPoly ntt_inverse(const ModPoly& a) {
    auto tables = ntt_tables_for(a.params);
    ModPoly out = a;
    tables->inverse(out.coeffs);
    return out;
}

ModPoly pointwise_mul(const ModPoly& a, const ModPoly& b) {
    check_same_params(a, b);
    ModPoly c(a.params);
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        c.coeffs[i] = mod_mul(a.coeffs[i], b.coeffs[i], a.params.q);
    return c;
}

ModPoly negacyclic_mul(const ModPoly& a, const ModPoly& b) {
    if (!a.params.ntt_supported()) return negacyclic_mul_schoolbook(a, b);
    return ntt_inverse(pointwise_mul(ntt_forward(a), ntt_forward(b)));
}

ModPoly sample_binomial(Xof& xof, const ParamSet& p) {
    ModPoly out(p);
    for (uint32_t i = 0; i < p.n; ++i) {
        int32_t v = 0;
        for (uint32_t j = 0; j < p.k; ++j) v += static_cast<int32_t>(xof.read_bits(1));
        for (uint32_t j = 0; j < p.k; ++j) v -= static_cast<int32_t>(xof.read_bits(1));
        out.coeffs[i] = v >= 0 ? static_cast<uint32_t>(v) : p.q - static_cast<uint32_t>(-v);
    }
    return out;
}

ModPoly sample_uniform(Xof& xof, const ParamSet& p) {
    ModPoly out(p);
    const unsigned bits = p.coeff_bits();
    for (uint32_t i = 0; i < p.n; ++i) {
        uint32_t v;
        do {
            v = xof.read_bits(bits);
        } while (v >= p.q);
        out.coeffs[i] = v;
    }
    return out;
}

}  // namespace rlkem
