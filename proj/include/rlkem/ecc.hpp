#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rlkem/ate.hpp"
#include "rlkem/bch.hpp"

namespace rlkem {

// Error-correction pipeline: ATE-only repetition, or outer BCH + inner ATE.
// msg_pad zeros extend the secret to Ck bits; cw_pad zeros extend the BCH
// codeword before ATE (the pads are transmitted and strictly checked on
// decode).
class EccScheme {
  public:
    static EccScheme ate_only(uint32_t m, uint32_t msg_bits = 256);
    static EccScheme concat(BchSpec bch, uint32_t m, uint32_t msg_pad, uint32_t cw_pad,
                            uint32_t msg_bits = 256);

    bool is_concat() const { return bch_ != nullptr; }
    uint32_t repetition() const { return m_; }
    uint32_t msg_bits() const { return msg_bits_; }
    uint32_t block_len() const { return block_len_; }  // bits crossing the super channel
    uint32_t msg_pad() const { return msg_pad_; }
    uint32_t cw_pad() const { return cw_pad_; }
    const BchSpec& bch() const { return *bch_; }
    std::string describe() const;

    AteParams ate_params() const { return AteParams{m_, block_len_}; }

  private:
    EccScheme() = default;
    std::shared_ptr<const BchSpec> bch_;
    uint32_t m_ = 1;
    uint32_t msg_pad_ = 0;
    uint32_t cw_pad_ = 0;
    uint32_t msg_bits_ = 256;
    uint32_t block_len_ = 256;
};

// The paper's Options 1-4 plus the plain-NewHope baseline ("newhope",
// option 0).  Options 1-3 require n=1024, option 4 requires n=512.
EccScheme scheme_for_option(int option, const ParamSet& params);

ModPoly ecc_encode(const EccScheme& scheme, const std::vector<uint8_t>& secret_bits,
                   const ParamSet& params);

// nullopt = decode failure (BCH failure or nonzero pad bits); counts as a
// decryption failure upstream.
std::optional<std::vector<uint8_t>> ecc_decode(const EccScheme& scheme, const ModPoly& v);

}  // namespace rlkem
