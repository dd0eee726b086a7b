#include "rlkem/kem.hpp"

#include <cstring>

namespace rlkem {

namespace {

// Domain tags for the XOF streams expanded from one master seed.
enum : uint8_t { kTagS = 0x00, kTagE = 0x01, kTagSPrime = 0x02, kTagEPrime = 0x03,
                 kTagEDoublePrime = 0x04 };

std::vector<uint8_t> tagged(const uint8_t* seed, size_t len, uint8_t tag) {
    std::vector<uint8_t> v(seed, seed + len);
    v.push_back(tag);
    return v;
}

ModPoly sample_noise(const std::array<uint8_t, 32>& seed, uint8_t tag, const ParamSet& p) {
    Xof xof(Xof::Kind::Shake256, tagged(seed.data(), seed.size(), tag));
    return sample_binomial(xof, p);
}

ModPoly expand_a(const std::array<uint8_t, 32>& seed, const ParamSet& p) {
    Xof xof(Xof::Kind::Shake128, std::vector<uint8_t>(seed.begin(), seed.end()));
    return sample_uniform(xof, p);
}

}  // namespace

std::vector<uint8_t> bytes_to_bits(const std::vector<uint8_t>& bytes, size_t nbits) {
    if (bytes.size() * 8 < nbits) throw ParameterError("not enough bytes for requested bits");
    std::vector<uint8_t> bits(nbits);
    for (size_t i = 0; i < nbits; ++i) bits[i] = (bytes[i / 8] >> (i % 8)) & 1;
    return bits;
}

std::vector<uint8_t> bits_to_bytes(const std::vector<uint8_t>& bits) {
    std::vector<uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (size_t i = 0; i < bits.size(); ++i)
        bytes[i / 8] |= static_cast<uint8_t>((bits[i] & 1) << (i % 8));
    return bytes;
}

std::vector<uint8_t> PublicKey::bytes() const {
    PackedPoly packed = pack(b_hat, b_hat.params.coeff_bits());
    std::vector<uint8_t> out = packed.bytes;
    out.insert(out.end(), a_seed.begin(), a_seed.end());
    return out;
}

std::vector<uint8_t> Ciphertext::bytes() const {
    std::vector<uint8_t> out = u_packed.bytes;
    out.insert(out.end(), h_packed.bytes.begin(), h_packed.bytes.end());
    return out;
}

KeyPair keygen(const Seed& seed, const ParamSet& params) {
    std::vector<uint8_t> z = shake256(std::vector<uint8_t>(seed.begin(), seed.end()), 64);
    std::array<uint8_t, 32> a_seed, noise_seed;
    std::memcpy(a_seed.data(), z.data(), 32);
    std::memcpy(noise_seed.data(), z.data() + 32, 32);

    ModPoly a_hat = expand_a(a_seed, params);
    ModPoly s = sample_noise(noise_seed, kTagS, params);
    ModPoly e = sample_noise(noise_seed, kTagE, params);
    ModPoly s_hat = ntt_forward(s);
    ModPoly b_hat = poly_add(pointwise_mul(a_hat, s_hat), ntt_forward(e));

    std::array<uint8_t, 32> rej;
    std::vector<uint8_t> zr = shake256(tagged(z.data(), z.size(), 0xff), 32);
    std::memcpy(rej.data(), zr.data(), 32);
    return KeyPair{PublicKey{std::move(b_hat), a_seed}, SecretKey{std::move(s_hat), rej}};
}

Ciphertext encrypt(const PublicKey& pk, const std::vector<uint8_t>& secret_bits,
                   const Seed& coin, const ParamSet& params, const CompressionRates& rates,
                   const EccScheme& scheme) {
    ModPoly a_hat = expand_a(pk.a_seed, params);
    ModPoly s_prime = sample_noise(coin, kTagSPrime, params);
    ModPoly e_prime = sample_noise(coin, kTagEPrime, params);
    ModPoly e_dprime = sample_noise(coin, kTagEDoublePrime, params);

    ModPoly v = ecc_encode(scheme, secret_bits, params);
    ModPoly t_hat = ntt_forward(s_prime);
    ModPoly u_hat = poly_add(pointwise_mul(a_hat, t_hat), ntt_forward(e_prime));
    ModPoly v_prime =
        poly_add(poly_add(ntt_inverse(pointwise_mul(pk.b_hat, t_hat)), e_dprime), v);

    // u travels in the time domain: compressing NTT-domain coefficients would
    // blow the rounding error up to the full modulus after the inverse NTT
    ModPoly u_compressed = compress(ntt_inverse(u_hat), rates.r_u);
    ModPoly h = compress(v_prime, rates.r_v);
    return Ciphertext{pack(u_compressed, rates.r_u.bits(params)),
                      pack(h, rates.r_v.bits(params))};
}

namespace {

ModPoly recover_v_dprime(const SecretKey& sk, const Ciphertext& ct, const ParamSet& params,
                         const CompressionRates& rates) {
    ModPoly u_hat = ntt_forward(decompress(unpack(ct.u_packed, params), rates.r_u));
    ModPoly v_decomp = decompress(unpack(ct.h_packed, params), rates.r_v);
    return poly_sub(v_decomp, ntt_inverse(pointwise_mul(u_hat, sk.s_hat)));
}

}  // namespace

std::optional<std::vector<uint8_t>> decrypt(const SecretKey& sk, const Ciphertext& ct,
                                            const ParamSet& params, const CompressionRates& rates,
                                            const EccScheme& scheme) {
    return ecc_decode(scheme, recover_v_dprime(sk, ct, params, rates));
}

std::vector<int32_t> noise_tap(const SecretKey& sk, const Ciphertext& ct, const ModPoly& v,
                               const ParamSet& params, const CompressionRates& rates) {
    ModPoly v_dprime = recover_v_dprime(sk, ct, params, rates);
    std::vector<int32_t> out(params.n);
    const int32_t q = static_cast<int32_t>(params.q);
    for (uint32_t i = 0; i < params.n; ++i) {
        int32_t d = static_cast<int32_t>(v_dprime.coeffs[i]) - static_cast<int32_t>(v.coeffs[i]);
        if (d < 0) d += q;
        if (d > q / 2) d -= q;
        out[i] = d;
    }
    return out;
}

namespace {

bool same_bytes(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size()) == 0;
}

std::array<uint8_t, 32> derive_key(const std::vector<uint8_t>& pre,
                                   const std::vector<uint8_t>& ct_bytes) {
    std::vector<uint8_t> ct_digest = shake256(ct_bytes, 32);
    std::vector<uint8_t> input = pre;
    input.insert(input.end(), ct_digest.begin(), ct_digest.end());
    std::vector<uint8_t> k = shake256(input, 32);
    std::array<uint8_t, 32> out;
    std::memcpy(out.data(), k.data(), 32);
    return out;
}

}  // namespace

Encapsulation kem_encapsulate(const PublicKey& pk, const Seed& entropy, const ParamSet& params,
                              const CompressionRates& rates, const EccScheme& scheme) {
    // secret = H(entropy), then (coin || K-bar) = H(secret || H(pk))
    std::vector<uint8_t> secret =
        shake256(std::vector<uint8_t>(entropy.begin(), entropy.end()), (scheme.msg_bits() + 7) / 8);
    std::vector<uint8_t> pk_digest = shake256(pk.bytes(), 32);
    std::vector<uint8_t> g_in = secret;
    g_in.insert(g_in.end(), pk_digest.begin(), pk_digest.end());
    std::vector<uint8_t> g_out = shake256(g_in, 64);
    Seed coin;
    std::memcpy(coin.data(), g_out.data(), 32);

    Ciphertext ct =
        encrypt(pk, bytes_to_bits(secret, scheme.msg_bits()), coin, params, rates, scheme);
    std::vector<uint8_t> pre(g_out.begin() + 32, g_out.end());
    std::array<uint8_t, 32> key = derive_key(pre, ct.bytes());
    return Encapsulation{std::move(ct), key};
}

std::array<uint8_t, 32> kem_decapsulate(const SecretKey& sk, const PublicKey& pk,
                                        const Ciphertext& ct, const ParamSet& params,
                                        const CompressionRates& rates, const EccScheme& scheme) {
    std::vector<uint8_t> ct_bytes = ct.bytes();
    auto secret_bits = decrypt(sk, ct, params, rates, scheme);
    if (secret_bits) {
        std::vector<uint8_t> secret = bits_to_bytes(*secret_bits);
        std::vector<uint8_t> pk_digest = shake256(pk.bytes(), 32);
        std::vector<uint8_t> g_in = secret;
        g_in.insert(g_in.end(), pk_digest.begin(), pk_digest.end());
        std::vector<uint8_t> g_out = shake256(g_in, 64);
        Seed coin;
        std::memcpy(coin.data(), g_out.data(), 32);
        Ciphertext reenc = encrypt(pk, *secret_bits, coin, params, rates, scheme);
        if (same_bytes(reenc.bytes(), ct_bytes)) {
            std::vector<uint8_t> pre(g_out.begin() + 32, g_out.end());
            return derive_key(pre, ct_bytes);
        }
    }
    // implicit rejection: pseudorandom key from the secret rejection value
    std::vector<uint8_t> pre(sk.z.begin(), sk.z.end());
    return derive_key(pre, ct_bytes);
}

}  // namespace rlkem
