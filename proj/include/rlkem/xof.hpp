#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rlkem {

// Deterministic extendable-output function backed by the Keccak sponge
// (SHAKE-128 / SHAKE-256 per FIPS 202).  Identical seed + identical read
// sequence gives identical bytes.  Single-caller: not thread safe.
class Xof {
  public:
    enum class Kind { Shake128, Shake256 };

    Xof(Kind kind, const std::vector<uint8_t>& seed);

    void read(uint8_t* out, size_t len);
    std::vector<uint8_t> read(size_t len);

    // Reads bits little-endian within each byte; used by the samplers.
    uint32_t read_bits(unsigned nbits);

  private:
    void squeeze_block();

    uint64_t state_[25];
    size_t rate_;       // bytes per sponge block
    std::vector<uint8_t> block_;
    size_t block_pos_;
    uint64_t bit_buf_;
    unsigned bit_count_;
};

// One-shot SHAKE-256 convenience used by the KEM wrapper.
std::vector<uint8_t> shake256(const std::vector<uint8_t>& data, size_t outlen);
std::vector<uint8_t> shake128(const std::vector<uint8_t>& data, size_t outlen);

}  // namespace rlkem
