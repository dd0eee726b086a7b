#include "rlkem/ecc.hpp"

#include <sstream>

namespace rlkem {

EccScheme EccScheme::ate_only(uint32_t m, uint32_t msg_bits) {
    if (m < 1) throw ParameterError("repetition count must be >= 1");
    EccScheme s;
    s.m_ = m;
    s.msg_bits_ = msg_bits;
    s.block_len_ = msg_bits;
    return s;
}

EccScheme EccScheme::concat(BchSpec bch, uint32_t m, uint32_t msg_pad, uint32_t cw_pad,
                            uint32_t msg_bits) {
    if (msg_bits + msg_pad != bch.ck)
        throw ParameterError("msg_bits + msg_pad must equal the BCH dimension");
    EccScheme s;
    s.bch_ = std::make_shared<const BchSpec>(std::move(bch));
    s.m_ = m;
    s.msg_pad_ = msg_pad;
    s.cw_pad_ = cw_pad;
    s.msg_bits_ = msg_bits;
    s.block_len_ = s.bch_->cn + cw_pad;
    return s;
}

std::string EccScheme::describe() const {
    std::ostringstream os;
    if (!is_concat()) {
        os << "ATE(m=" << m_ << ", B=" << block_len_ << ")";
    } else {
        os << "BCH(" << bch_->cn << "," << bch_->ck << "," << bch_->ct << ") + ATE(m=" << m_
           << ")";
    }
    return os.str();
}

EccScheme scheme_for_option(int option, const ParamSet& params) {
    switch (option) {
        case 0:  // plain NewHope: ATE with m = n/256
            if (params.n % 256 != 0 || params.n / 256 < 1)
                throw ParameterError("NewHope baseline needs n to be a multiple of 256");
            return EccScheme::ate_only(params.n / 256);
        case 1:
            if (params.n != 1024) throw ParameterError("option 1 requires n=1024");
            return EccScheme::concat(build_bch(9, 9, 170), 3, 4, 0);
        case 2:
            if (params.n != 1024) throw ParameterError("option 2 requires n=1024");
            return EccScheme::concat(build_bch(9, 30, 0), 2, 3, 1);
        case 3:
            if (params.n != 1024) throw ParameterError("option 3 requires n=1024");
            return EccScheme::concat(build_bch(10, 106, 0), 1, 2, 1);
        case 4:
            if (params.n != 512) throw ParameterError("option 4 requires n=512");
            return EccScheme::concat(build_bch(9, 30, 0), 1, 3, 1);
        default:
            throw ParameterError("unknown ECC option");
    }
}

ModPoly ecc_encode(const EccScheme& scheme, const std::vector<uint8_t>& secret_bits,
                   const ParamSet& params) {
    if (secret_bits.size() != scheme.msg_bits())
        throw ParameterError("secret has wrong bit length for scheme");
    std::vector<uint8_t> coded;
    if (!scheme.is_concat()) {
        coded = secret_bits;
    } else {
        std::vector<uint8_t> msg(secret_bits);
        msg.resize(scheme.msg_bits() + scheme.msg_pad(), 0);
        coded = bch_encode(scheme.bch(), msg);
        coded.resize(coded.size() + scheme.cw_pad(), 0);
    }
    return ate_encode(coded, scheme.ate_params(), params);
}

std::optional<std::vector<uint8_t>> ecc_decode(const EccScheme& scheme, const ModPoly& v) {
    std::vector<uint8_t> coded = ate_decode(v, scheme.ate_params());
    if (!scheme.is_concat()) return coded;
    for (uint32_t i = 0; i < scheme.cw_pad(); ++i)
        if (coded[scheme.bch().cn + i]) return std::nullopt;
    coded.resize(scheme.bch().cn);
    auto decoded = bch_decode(scheme.bch(), coded);
    if (!decoded) return std::nullopt;
    for (uint32_t i = 0; i < scheme.msg_pad(); ++i)
        if (decoded->msg[scheme.msg_bits() + i]) return std::nullopt;
    decoded->msg.resize(scheme.msg_bits());
    return std::move(decoded->msg);
}

}  // namespace rlkem
