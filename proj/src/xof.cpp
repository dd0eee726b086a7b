#include "rlkem/xof.hpp"

#include <cstring>

namespace rlkem {

namespace {

constexpr int kRounds = 24;

constexpr uint64_t kRoundConstants[kRounds] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

constexpr unsigned kRotc[24] = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                                27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};

constexpr unsigned kPiln[24] = {10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                                15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

uint64_t rotl64(uint64_t x, unsigned s) { return (x << s) | (x >> (64 - s)); }

void keccak_f1600(uint64_t st[25]) {
    uint64_t bc[5];
    for (int round = 0; round < kRounds; ++round) {
        for (int i = 0; i < 5; ++i)
            bc[i] = st[i] ^ st[i + 5] ^ st[i + 10] ^ st[i + 15] ^ st[i + 20];
        for (int i = 0; i < 5; ++i) {
            uint64_t t = bc[(i + 4) % 5] ^ rotl64(bc[(i + 1) % 5], 1);
            for (int j = 0; j < 25; j += 5) st[j + i] ^= t;
        }
        uint64_t t = st[1];
        for (int i = 0; i < 24; ++i) {
            unsigned j = kPiln[i];
            bc[0] = st[j];
            st[j] = rotl64(t, kRotc[i]);
            t = bc[0];
        }
        for (int j = 0; j < 25; j += 5) {
            for (int i = 0; i < 5; ++i) bc[i] = st[j + i];
            for (int i = 0; i < 5; ++i) st[j + i] ^= (~bc[(i + 1) % 5]) & bc[(i + 2) % 5];
        }
        st[0] ^= kRoundConstants[round];
    }
}

}  // namespace

Xof::Xof(Kind kind, const std::vector<uint8_t>& seed)
    : rate_(kind == Kind::Shake128 ? 168 : 136),
      block_(rate_, 0),
      block_pos_(rate_),
      bit_buf_(0),
      bit_count_(0) {
    std::memset(state_, 0, sizeof(state_));
    // Absorb seed with SHAKE domain padding (0x1f ... 0x80).
    size_t off = 0;
    std::vector<uint8_t> chunk(rate_, 0);
    while (seed.size() - off >= rate_) {
        for (size_t i = 0; i < rate_; ++i)
            state_[i / 8] ^= static_cast<uint64_t>(seed[off + i]) << (8 * (i % 8));
        keccak_f1600(state_);
        off += rate_;
    }
    for (size_t i = off; i < seed.size(); ++i)
        state_[(i - off) / 8] ^= static_cast<uint64_t>(seed[i]) << (8 * ((i - off) % 8));
    size_t pad = seed.size() - off;
    state_[pad / 8] ^= static_cast<uint64_t>(0x1f) << (8 * (pad % 8));
    state_[(rate_ - 1) / 8] ^= static_cast<uint64_t>(0x80) << (8 * ((rate_ - 1) % 8));
}

void Xof::squeeze_block() {
    keccak_f1600(state_);
    for (size_t i = 0; i < rate_; ++i)
        block_[i] = static_cast<uint8_t>(state_[i / 8] >> (8 * (i % 8)));
    block_pos_ = 0;
}

void Xof::read(uint8_t* out, size_t len) {
    while (len > 0) {
        if (block_pos_ == rate_) squeeze_block();
        size_t take = std::min(len, rate_ - block_pos_);
        std::memcpy(out, block_.data() + block_pos_, take);
        block_pos_ += take;
        out += take;
        len -= take;
    }
}

std::vector<uint8_t> Xof::read(size_t len) {
    std::vector<uint8_t> out(len);
    read(out.data(), len);
    return out;
}

uint32_t Xof::read_bits(unsigned nbits) {
    while (bit_count_ < nbits) {
        uint8_t b;
        read(&b, 1);
        bit_buf_ |= static_cast<uint64_t>(b) << bit_count_;
        bit_count_ += 8;
    }
    uint32_t out = static_cast<uint32_t>(bit_buf_ & ((1ull << nbits) - 1));
    bit_buf_ >>= nbits;
    bit_count_ -= nbits;
    return out;
}

std::vector<uint8_t> shake256(const std::vector<uint8_t>& data, size_t outlen) {
    Xof x(Xof::Kind::Shake256, data);
    return x.read(outlen);
}

std::vector<uint8_t> shake128(const std::vector<uint8_t>& data, size_t outlen) {
    Xof x(Xof::Kind::Shake128, data);
    return x.read(outlen);
}

}  // namespace rlkem
