#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rlkem/ate.hpp"
#include "rlkem/codec.hpp"
#include "rlkem/ring.hpp"

using namespace rlkem;

namespace {

ModPoly random_poly(const ParamSet& p, std::mt19937& rng) {
    ModPoly out(p);
    std::uniform_int_distribution<uint32_t> dist(0, p.q - 1);
    for (auto& c : out.coeffs) c = dist(rng);
    return out;
}

}  // namespace

TEST_CASE("ParamSet validation") {
    CHECK_NOTHROW(ParamSet(1024, 12289, 8));
    CHECK_NOTHROW(ParamSet(16, 257, 2));
    CHECK_THROWS_AS(ParamSet(1000, 12289, 8), ParameterError);  // not a power of two
    CHECK_THROWS_AS(ParamSet(1024, 12288, 8), ParameterError);  // composite q
    CHECK_THROWS_AS(ParamSet(16, 257, 100), ParameterError);    // k > q/8
    CHECK(ParamSet(1024, 12289, 8).ntt_supported());
    CHECK_FALSE(ParamSet(4, 7, 0).ntt_supported());
    CHECK(ParamSet(1024, 12289, 8).coeff_bits() == 14);
}

TEST_CASE("SHAKE FIPS-202 empty-message vectors") {
    auto s128 = shake128({}, 16);
    const uint8_t exp128[16] = {0x7f, 0x9c, 0x2b, 0xa4, 0xe8, 0x8f, 0x82, 0x7d,
                                0x61, 0x60, 0x45, 0x50, 0x76, 0x05, 0x85, 0x3e};
    for (int i = 0; i < 16; ++i) CHECK(s128[i] == exp128[i]);

    auto s256 = shake256({}, 32);
    const uint8_t exp256[32] = {0x46, 0xb9, 0xdd, 0x2b, 0x0b, 0xa8, 0x8d, 0x13, 0x23, 0x3b, 0x3f,
                                0xeb, 0x74, 0x3e, 0xeb, 0x24, 0x3f, 0xcd, 0x52, 0xea, 0x62, 0xb8,
                                0x1b, 0x82, 0xb5, 0x0c, 0x27, 0x64, 0x6e, 0xd5, 0x76, 0x2f};
    for (int i = 0; i < 32; ++i) CHECK(s256[i] == exp256[i]);
}

TEST_CASE("Xof determinism and chunked reads") {
    std::vector<uint8_t> seed{1, 2, 3};
    Xof a(Xof::Kind::Shake256, seed);
    Xof b(Xof::Kind::Shake256, seed);
    auto whole = a.read(300);
    std::vector<uint8_t> parts = b.read(7);
    auto rest = b.read(293);
    parts.insert(parts.end(), rest.begin(), rest.end());
    CHECK(whole == parts);
}

TEST_CASE("poly add/sub") {
    ParamSet tiny(2, 5, 0);
    ModPoly zero(tiny);
    ModPoly one(tiny, {1, 0});
    CHECK(poly_sub(zero, one).coeffs == std::vector<uint32_t>{4, 0});

    ParamSet p(16, 257, 2);
    std::mt19937 rng(7);
    ModPoly a = random_poly(p, rng), b = random_poly(p, rng);
    CHECK(poly_add(a, b) == poly_add(b, a));
    CHECK(poly_add(a, ModPoly(p)) == a);
    CHECK(poly_sub(poly_add(a, b), b) == a);

    ModPoly other(ParamSet(16, 97, 2));
    CHECK_THROWS_AS(poly_add(a, other), ParameterMismatch);
}

TEST_CASE("schoolbook negacyclic multiply") {
    ParamSet p2(2, 12289, 8);
    ModPoly x(p2, {0, 1});
    CHECK(negacyclic_mul_schoolbook(x, x).coeffs == std::vector<uint32_t>{12288, 0});  // x^2 = -1

    ParamSet p4(4, 17, 2);
    ModPoly a(p4, {1, 1, 0, 0});
    ModPoly b(p4, {0, 1, 0, 0});
    // (1+x)*x = x + x^2, hand convolution
    CHECK(negacyclic_mul_schoolbook(a, b).coeffs == std::vector<uint32_t>{0, 1, 1, 0});

    ModPoly one(p4, {1, 0, 0, 0});
    std::mt19937 rng(11);
    ModPoly r = random_poly(p4, rng);
    CHECK(negacyclic_mul_schoolbook(r, one) == r);
}

TEST_CASE("NTT roundtrip and equivalence with schoolbook") {
    std::mt19937 rng(42);
    for (ParamSet p : {ParamSet(16, 257, 2), ParamSet(64, 257, 2), ParamSet(1024, 12289, 8)}) {
        for (int trial = 0; trial < 5; ++trial) {
            ModPoly a = random_poly(p, rng), b = random_poly(p, rng);
            CHECK(ntt_inverse(ntt_forward(a)) == a);
            CHECK(negacyclic_mul(a, b) == negacyclic_mul_schoolbook(a, b));
        }
        ModPoly c(p);
        c.coeffs[0] = 5;  // constant polynomial -> flat spectrum
        ModPoly c_hat = ntt_forward(c);
        for (uint32_t v : c_hat.coeffs) CHECK(v == 5);
    }
    CHECK_THROWS_AS(ntt_forward(ModPoly(ParamSet(4, 7, 0))), UnsupportedModulus);
}

TEST_CASE("binomial sampler") {
    ParamSet p0(16, 257, 0);
    Xof x0(Xof::Kind::Shake256, {9});
    CHECK(sample_binomial(x0, p0).coeffs == std::vector<uint32_t>(16, 0));

    ParamSet p(1024, 257, 2);
    Xof xa(Xof::Kind::Shake256, {1, 2});
    Xof xb(Xof::Kind::Shake256, {1, 2});
    CHECK(sample_binomial(xa, p) == sample_binomial(xb, p));

    // k=2 pmf: {0: 6/16, +-1: 4/16, +-2: 1/16}, 3-sigma check over ~1e6 draws
    Xof xs(Xof::Kind::Shake256, {3, 4});
    const size_t polys = 1000;
    std::map<int, size_t> counts;
    for (size_t i = 0; i < polys; ++i) {
        ModPoly s = sample_binomial(xs, p);
        for (uint32_t c : s.coeffs) {
            int v = static_cast<int>(c);
            if (v > (int)p.q / 2) v -= p.q;
            CHECK(std::abs(v) <= 2);
            counts[v]++;
        }
    }
    const double N = polys * 1024.0;
    const std::map<int, double> expect{{-2, 1 / 16.}, {-1, 4 / 16.}, {0, 6 / 16.},
                                       {1, 4 / 16.},  {2, 1 / 16.}};
    for (auto [v, prob] : expect) {
        double sigma = std::sqrt(prob * (1 - prob) / N);
        CHECK(std::fabs(counts[v] / N - prob) < 3 * sigma + 1e-9);
    }
}

TEST_CASE("uniform sampler") {
    ParamSet p(1024, 12289, 8);
    Xof xa(Xof::Kind::Shake128, {7});
    Xof xb(Xof::Kind::Shake128, {7});
    ModPoly a = sample_uniform(xa, p);
    CHECK(a == sample_uniform(xb, p));
    for (uint32_t c : a.coeffs) CHECK(c < p.q);

    // chi-square over 16 buckets, ~1e6 draws; chi2_{15, 0.99} = 30.578
    Xof xs(Xof::Kind::Shake128, {8});
    std::vector<size_t> buckets(16, 0);
    const size_t polys = 1000;
    for (size_t i = 0; i < polys; ++i) {
        ModPoly u = sample_uniform(xs, p);
        for (uint32_t c : u.coeffs) buckets[static_cast<size_t>(c) * 16 / p.q]++;
    }
    double N = polys * 1024.0, chi2 = 0;
    for (int bk = 0; bk < 16; ++bk) {
        uint32_t lo = (bk * p.q + 15) / 16, hi = ((bk + 1) * p.q - 1) / 16;
        double expect = N * (std::floor((double)(bk + 1) * p.q / 16) - std::floor((double)bk * p.q / 16)) / p.q;
        (void)lo; (void)hi;
        chi2 += (buckets[bk] - expect) * (buckets[bk] - expect) / expect;
    }
    CHECK(chi2 < 30.578);
}

TEST_CASE("compress / decompress") {
    ParamSet p(1024, 12289, 8);
    Rate r8 = Rate::of(8);

    ModPoly v(p);
    v.coeffs[0] = 0;
    v.coeffs[1] = 768;   // 768*8/12289 ~ 0.49996 -> 0
    v.coeffs[2] = 1536;  // ~1.00008 -> 1
    ModPoly h = compress(v, r8);
    CHECK(h.coeffs[0] == 0);
    CHECK(h.coeffs[1] == 0);
    CHECK(h.coeffs[2] == 1);

    ModPoly one(p);
    one.coeffs[0] = 1;
    CHECK(decompress(one, r8).coeffs[0] == 1536);  // round(12289/8) = round(1536.125)
    CHECK(decompress(ModPoly(p), r8).coeffs == ModPoly(p).coeffs);

    std::mt19937 rng(5);
    ModPoly r = random_poly(p, rng);
    CHECK(compress(r, Rate::full()) == r);
    CHECK(decompress(r, Rate::full()) == r);

    ModPoly bad(p);
    bad.coeffs[0] = 8;
    CHECK_THROWS_AS(decompress(bad, r8), EncodingError);
    CHECK_THROWS_AS(Rate::of(3), ParameterError);
    CHECK_THROWS_AS(Rate::of(1), ParameterError);
}

TEST_CASE("compression error bound, exhaustive") {
    // |centered(decompress(compress(x)) - x)| <= floor(q/2r) + 1 for all x
    const uint32_t q = 12289;
    ParamSet p(2, q, 8);
    for (uint32_t rr : {2u, 4u, 8u, 256u, 4096u}) {
        Rate rate = Rate::of(rr);
        long bound = q / (2 * rr) + 1;
        for (uint32_t x = 0; x < q; ++x) {
            ModPoly v(p);
            v.coeffs[0] = x;
            long y = decompress(compress(v, rate), rate).coeffs[0];
            long e = (y - (long)x) % (long)q;
            if (e < 0) e += q;
            if (e > (long)q / 2) e -= q;
            CHECK(std::labs(e) <= bound);
        }
    }
}

TEST_CASE("pack / unpack") {
    ParamSet p(4, 17, 2);
    ModPoly v(p, {1, 2, 3, 4});
    PackedPoly pp = pack(v, 3);
    // hand layout: 1 | 2<<3 | 3<<6 -> 0xd1, then high bit of 3 is 0, 4 at bits 9..11 -> 0x08
    REQUIRE(pp.bytes.size() == 2);
    CHECK(pp.bytes[0] == 0xd1);
    CHECK(pp.bytes[1] == 0x08);
    CHECK(unpack(pp, p) == v);

    ModPoly big(p, {8, 0, 0, 0});
    CHECK_THROWS_AS(pack(big, 3), EncodingError);
    PackedPoly truncated = pp;
    truncated.bytes.pop_back();
    CHECK_THROWS_AS(unpack(truncated, p), EncodingError);

    std::mt19937 rng(19);
    ParamSet pn(64, 12289, 8);
    for (uint32_t bits = 1; bits <= 14; ++bits) {
        ModPoly r(pn);
        std::uniform_int_distribution<uint32_t> dist(0, std::min(pn.q - 1, (1u << bits) - 1));
        for (auto& c : r.coeffs) c = dist(rng);
        CHECK(unpack(pack(r, bits), pn) == r);
    }
}

TEST_CASE("ciphertext_size matches the closed form") {
    ParamSet p1024(1024, 12289, 8), p512(512, 12289, 8);
    CHECK(ciphertext_size(p1024, {Rate::of(8), Rate::full()}) == 2176);
    CHECK(ciphertext_size(p1024, {Rate::of(4), Rate::of(256)}) == 1280);
    CHECK(ciphertext_size(p512, {Rate::of(8), Rate::of(256)}) == 704);
    CHECK(ciphertext_size(p512, {Rate::of(8), Rate::full()}) == 1088);
}

TEST_CASE("ATE encode/decode") {
    ParamSet p8(8, 257, 2);
    AteParams ate{2, 4};
    std::vector<uint8_t> bits{1, 0, 0, 0};
    ModPoly v = ate_encode(bits, ate, p8);
    uint32_t pole = p8.q / 2;
    CHECK(v.coeffs == std::vector<uint32_t>{pole, 0, 0, 0, pole, 0, 0, 0});
    CHECK(ate_encode({0, 0, 0, 0}, ate, p8).coeffs == std::vector<uint32_t>(8, 0));
    CHECK(ate_decode(v, ate) == bits);

    // NewHope layout: bit i occupies i, i+256, i+512, i+768
    ParamSet p1024(1024, 12289, 8);
    AteParams nh{4, 256};
    std::vector<uint8_t> one_bit(256, 0);
    one_bit[10] = 1;
    ModPoly vv = ate_encode(one_bit, nh, p1024);
    for (uint32_t j = 0; j < 4; ++j) CHECK(vv.coeffs[10 + 256 * j] == 6144);
    CHECK(ate_decode(vv, nh) == one_bit);

    // single flipped pole among m=4 does not change the decoded bit
    ModPoly corrupted = vv;
    corrupted.coeffs[10] = 0;
    CHECK(ate_decode(corrupted, nh) == one_bit);
    corrupted = vv;
    corrupted.coeffs[266] = 6144;  // bit 10 untouched elsewhere; this flips bit 10's neighbor block
    CHECK(ate_decode(corrupted, nh)[10] == 1);

    // noiseless poles decode exactly; all-zero decodes 0
    CHECK(ate_decode(ModPoly(p1024), nh) == std::vector<uint8_t>(256, 0));

    CHECK_THROWS_AS(ate_encode(std::vector<uint8_t>(512, 0), AteParams{4, 512}, p1024),
                    ParameterError);

    // noiseless roundtrip, random bit strings
    std::mt19937 rng(3);
    for (int t = 0; t < 20; ++t) {
        std::vector<uint8_t> rb(256);
        for (auto& b : rb) b = rng() & 1;
        CHECK(ate_decode(ate_encode(rb, nh, p1024), nh) == rb);
    }
}

TEST_CASE("ATE noise margin") {
    // per-coefficient noise of magnitude < q/4 on every position never flips bits
    ParamSet p(16, 257, 2);
    AteParams ate{4, 4};
    std::vector<uint8_t> bits{1, 0, 1, 1};
    ModPoly v = ate_encode(bits, ate, p);
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> noise(-(int)p.q / 4 + 1, (int)p.q / 4 - 1);
    for (int t = 0; t < 200; ++t) {
        ModPoly w = v;
        for (auto& c : w.coeffs) {
            int val = (int)c + noise(rng);
            val %= (int)p.q;
            if (val < 0) val += p.q;
            c = (uint32_t)val;
        }
        CHECK(ate_decode(w, ate) == bits);
    }
}
