#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rlkem/analyzer.hpp"

using namespace rlkem;

namespace {

constexpr unsigned P = 192;

double as_double(const BigProb& b) { return std::exp2(b.log2()); }

long centered(long x, uint32_t q) {
    long r = ((x % (long)q) + q) % q;
    if (r > (long)q / 2) r -= q;
    return r;
}

}  // namespace

TEST_CASE("compression noise pmf") {
    CHECK(pmf_compression_noise(12289, Rate::full(), CompressionSide::V, P).max_support() == 0);

    // oracle: run every input through the codec directly
    const uint32_t q = 17;
    Rate r4 = Rate::of(4);
    Pmf nc = pmf_compression_noise(q, r4, CompressionSide::V, P);
    nc.check_normalized();
    ParamSet tiny(2, q, 2);
    std::map<long, uint32_t> counts;
    for (uint32_t x = 0; x < q; ++x) {
        ModPoly v(tiny);
        v.coeffs[0] = x;
        long y = decompress(compress(v, r4), r4).coeffs[0];
        counts[centered(y - (long)x, q)]++;
    }
    for (long e = nc.min_support(); e <= nc.max_support(); ++e) {
        BigProb expect = BigProb::from_ratio(counts.count(e) ? counts[e] : 0, q, P);
        BigProb d = (nc.at(e) > expect) ? nc.at(e) - expect : expect - nc.at(e);
        CHECK(d < BigProb(1e-40, P));
    }

    // support bound q/(2r)+1 at the production modulus
    Pmf big = pmf_compression_noise(12289, Rate::of(8), CompressionSide::V, P);
    big.check_normalized();
    CHECK(big.max_support() <= 12289 / 16 + 1);
    CHECK(big.min_support() >= -(12289 / 16 + 1));
    CHECK(std::fabs(big.mean()) < 1.0);
}

TEST_CASE("difference noise vs exhaustive joint enumeration") {
    // n=2, k=1, q=17: (es' - e's + e'')_0 = e0 s'0 - e1 s'1 - e'0 s0 + e'1 s1 + e''_0.
    // Nine independent psi_1 variables; enumerate all 3^9 assignments.
    ParamSet p(2, 17, 1);
    Pmf nd = pmf_difference_noise(p, P);
    CHECK(nd.folded());
    nd.check_normalized();

    std::vector<BigProb> oracle(17, BigProb(0.0, P));
    const int vals[3] = {-1, 0, 1};
    const uint64_t wnum[3] = {1, 2, 1};  // /4
    int v[9];
    for (int a = 0; a < 19683; ++a) {
        int idx = a;
        uint64_t num = 1;
        for (int i = 0; i < 9; ++i) {
            v[i] = vals[idx % 3];
            num *= wnum[idx % 3];
            idx /= 3;
        }
        long nd0 = (long)v[0] * v[2] - (long)v[1] * v[3]  // e s'
                   - (long)v[4] * v[6] + (long)v[5] * v[7]  // e' s
                   + v[8];
        long f = ((nd0 % 17) + 17) % 17;
        oracle[f] += BigProb::from_ratio(num, 1ull << 18, P);  // 4^9 = 2^18
    }
    for (uint32_t x = 0; x < 17; ++x) {
        BigProb d = (nd.at(x) > oracle[x]) ? nd.at(x) - oracle[x] : oracle[x] - nd.at(x);
        CHECK(d < BigProb(1e-40, P));
    }
}

TEST_CASE("difference noise, k=0") {
    Pmf nd = pmf_difference_noise(ParamSet(4, 17, 0), P);
    CHECK(as_double(nd.at(0)) == doctest::Approx(1.0));
    for (uint32_t x = 1; x < 17; ++x) CHECK(as_double(nd.at(x)) == doctest::Approx(0.0));
}

TEST_CASE("total noise composition") {
    ParamSet p(4, 97, 2);
    // at full/full rates the total noise is exactly the difference noise
    Pmf total = pmf_total_noise(p, {Rate::full(), Rate::full()}, P);
    Pmf diff = pmf_difference_noise(p, P);
    for (uint32_t x = 0; x < 97; ++x) {
        BigProb d = (total.at(x) > diff.at(x)) ? total.at(x) - diff.at(x)
                                               : diff.at(x) - total.at(x);
        CHECK(d < BigProb(1e-40, P));
    }
    // compressing v adds noise: variance of the centered lift must grow
    Pmf total8 = pmf_total_noise(p, {Rate::of(8), Rate::full()}, P);
    total8.check_normalized();
    auto centered_var = [](const Pmf& f, uint32_t q) {
        double m2 = 0;
        for (uint32_t x = 0; x < q; ++x) {
            long c = centered(x, q);
            m2 += (double)c * c * as_double(f.at(x));
        }
        return m2;
    };
    CHECK(centered_var(total8, 97) > centered_var(total, 97));
    // and compressing u as well adds more
    Pmf total88 = pmf_total_noise(p, {Rate::of(8), Rate::of(8)}, P);
    CHECK(centered_var(total88, 97) > centered_var(total8, 97));
}

TEST_CASE("crossover vs exhaustive oracle") {
    ParamSet p(4, 17, 1);
    Pmf total = pmf_total_noise(p, {Rate::of(4), Rate::full()}, P);
    const uint32_t q = 17, half = q / 2;
    for (uint32_t m : {1u, 2u}) {
        SuperChannel ch = crossover_probability(total, m, q);
        // oracle: enumerate the m noise values seen by one bit's positions
        BigProb err(0.0, P);
        uint64_t combos = 1;
        for (uint32_t j = 0; j < m; ++j) combos *= q;
        for (uint32_t pole : {0u, half}) {
            for (uint64_t c = 0; c < combos; ++c) {
                uint64_t idx = c;
                BigProb w(1.0, P);
                uint64_t t = 0;
                for (uint32_t j = 0; j < m; ++j) {
                    uint32_t noise = idx % q;
                    idx /= q;
                    w *= total.at(noise);
                    uint32_t received = (pole + noise) % q;
                    t += received >= half ? received - half : half - received;
                }
                int bit = (4 * t < (uint64_t)m * q) ? 1 : 0;
                int sent = pole == half ? 1 : 0;
                if (bit != sent) err += w * BigProb(0.5, P);
            }
        }
        double got = as_double(ch.p), expect = as_double(err);
        CHECK(got == doctest::Approx(expect).epsilon(1e-9));
        CHECK(ch.m == m);
    }

    // noiseless channel never errs
    Pmf clean = pmf_fold(Pmf::delta(0, P), q);
    CHECK(as_double(crossover_probability(clean, 2, q).p) == doctest::Approx(0.0));

    // more repetitions help
    SuperChannel c1 = crossover_probability(total, 1, q);
    SuperChannel c2 = crossover_probability(total, 2, q);
    SuperChannel c4 = crossover_probability(total, 4, q);
    CHECK(c2.p < c1.p);
    CHECK(c4.p < c2.p);
}

TEST_CASE("dfr formulas") {
    SuperChannel zero{BigProb(0.0, P), 1, 17};
    CHECK(as_double(dfr_ate(zero, 256)) == doctest::Approx(0.0));

    SuperChannel half{BigProb(0.5, P), 1, 17};
    CHECK(as_double(dfr_ate(half, 1)) == doctest::Approx(0.5));
    CHECK(as_double(dfr_ate(half, 2)) == doctest::Approx(0.75));

    SuperChannel small{BigProb(std::exp2(-100), P), 1, 17};
    // 1-(1-p)^256 ~ 256p for tiny p; no cancellation allowed
    CHECK(dfr_ate(small, 256).log2() == doctest::Approx(-92.0).epsilon(1e-6));

    CHECK(as_double(dfr_bch(half, 3, 3)) == doctest::Approx(0.0));
    CHECK(as_double(dfr_bch(half, 3, 1)) == doctest::Approx(0.5));   // C(3,2)+C(3,3) = 4 of 8
    CHECK(as_double(dfr_bch(half, 2, 0)) == doctest::Approx(0.75));
    CHECK(as_double(dfr_bch(SuperChannel{BigProb(0.1, P), 1, 17}, 5, 1)) ==
          doctest::Approx(1 - std::pow(0.9, 5) - 5 * 0.1 * std::pow(0.9, 4)).epsilon(1e-12));

    // monotone in p and in ct
    BigProb d1 = dfr_bch(SuperChannel{BigProb(0.01, P), 1, 17}, 341, 9);
    BigProb d2 = dfr_bch(SuperChannel{BigProb(0.02, P), 1, 17}, 341, 9);
    BigProb d3 = dfr_bch(SuperChannel{BigProb(0.02, P), 1, 17}, 341, 12);
    CHECK(d1 < d2);
    CHECK(d3 < d2);
}

TEST_CASE("renyi divergence properties") {
    CHECK_THROWS_AS(renyi_divergence(8, 1.0, P), ParameterError);
    CHECK_THROWS_AS(renyi_divergence(0, 2.0, P), ParameterError);
    for (uint32_t k : {2u, 4u, 8u, 16u}) {
        BigProb r = renyi_divergence(k, 9.0, P);
        CHECK(r.log2() >= 0.0);  // R_a >= 1 always
    }
    // binomial approaches the rounded Gaussian as k grows
    CHECK(renyi_divergence(16, 9.0, P) < renyi_divergence(4, 9.0, P));
    CHECK(renyi_divergence(4, 9.0, P) < renyi_divergence(2, 9.0, P));
}

TEST_CASE("analyzer caching and certification") {
    NoiseAnalyzer an(P);
    ParamSet p(4, 97, 2);
    const Pmf& a = an.difference_noise(p);
    const Pmf& b = an.difference_noise(p);
    CHECK(&a == &b);  // memoized

    CompressionRates rates{Rate::of(8), Rate::full()};
    const Pmf& t1 = an.total_noise(p, rates);
    const Pmf& t2 = an.total_noise(p, rates);
    CHECK(&t1 == &t2);

    double d = an.certified_log2_dfr(p, rates, EccScheme::ate_only(2, 2));
    CHECK(std::isfinite(d));
    CHECK(d < 0.0);
    double c = an.certified_log2_crossover(p, rates, 2);
    CHECK(std::isfinite(c));
    CHECK(c < 0.0);
}
