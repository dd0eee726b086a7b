#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "rlkem/codec.hpp"
#include "rlkem/ecc.hpp"

namespace rlkem {

using Seed = std::array<uint8_t, 32>;

struct PublicKey {
    ModPoly b_hat;              // NTT domain
    std::array<uint8_t, 32> a_seed;

    std::vector<uint8_t> bytes() const;  // packed b_hat || a_seed
};

struct SecretKey {
    ModPoly s_hat;              // NTT domain
    std::array<uint8_t, 32> z;  // implicit-rejection secret
};

struct KeyPair {
    PublicKey pk;
    SecretKey sk;
};

struct Ciphertext {
    PackedPoly u_packed;  // u compressed at r_u (time-domain coefficients)
    PackedPoly h_packed;  // v' compressed at r_v

    std::vector<uint8_t> bytes() const;
};

// Deterministic from seed: a-hat expanded from the public sub-seed, s and e
// sampled from psi_k with domain-separated XOF streams.
KeyPair keygen(const Seed& seed, const ParamSet& params);

// Deterministic from coin.  secret_bits has scheme.msg_bits() entries.
Ciphertext encrypt(const PublicKey& pk, const std::vector<uint8_t>& secret_bits,
                   const Seed& coin, const ParamSet& params, const CompressionRates& rates,
                   const EccScheme& scheme);

std::optional<std::vector<uint8_t>> decrypt(const SecretKey& sk, const Ciphertext& ct,
                                            const ParamSet& params, const CompressionRates& rates,
                                            const EccScheme& scheme);

// Centered per-coefficient total noise v'' - v given the true encoded v
// (test/validation API).
std::vector<int32_t> noise_tap(const SecretKey& sk, const Ciphertext& ct, const ModPoly& v,
                               const ParamSet& params, const CompressionRates& rates);

struct Encapsulation {
    Ciphertext ct;
    std::array<uint8_t, 32> key;
};

// FO wrapper with implicit rejection: coins and key derived by hashing the
// secret with a pk digest; decapsulation re-encrypts and compares.
Encapsulation kem_encapsulate(const PublicKey& pk, const Seed& entropy, const ParamSet& params,
                              const CompressionRates& rates, const EccScheme& scheme);

std::array<uint8_t, 32> kem_decapsulate(const SecretKey& sk, const PublicKey& pk,
                                        const Ciphertext& ct, const ParamSet& params,
                                        const CompressionRates& rates, const EccScheme& scheme);

// Bit helpers shared by ECC and KEM code (bit i of byte j = (b[j] >> i) & 1).
std::vector<uint8_t> bytes_to_bits(const std::vector<uint8_t>& bytes, size_t nbits);
std::vector<uint8_t> bits_to_bytes(const std::vector<uint8_t>& bits);

}  // namespace rlkem
