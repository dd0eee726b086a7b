#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "rlkem/pmf.hpp"

using namespace rlkem;

namespace {

constexpr unsigned P = 256;

bool close(const BigProb& a, double b, double tol = 1e-60) {
    BigProb d = (a > BigProb(b, P)) ? a - BigProb(b, P) : BigProb(b, P) - a;
    return d < BigProb(tol, P);
}

Pmf random_pmf(long offset, size_t size, std::mt19937& rng) {
    Pmf p(offset, size, P);
    uint64_t sum = 0;
    std::vector<uint64_t> raw(size);
    for (auto& r : raw) {
        r = rng() % 1000;
        sum += r;
    }
    if (sum == 0) raw[0] = sum = 1;
    for (size_t i = 0; i < size; ++i) p.weight(i) = BigProb::from_ratio(raw[i], sum, P);
    return p;
}

}  // namespace

TEST_CASE("centered binomial pmf") {
    Pmf k0 = pmf_binomial(0, P);
    CHECK(k0.min_support() == 0);
    CHECK(k0.max_support() == 0);
    CHECK(close(k0.at(0), 1.0));

    // k=2: 1/16 {-2,2}, 4/16 {-1,1}, 6/16 {0}
    Pmf k2 = pmf_binomial(2, P);
    CHECK(k2.min_support() == -2);
    CHECK(k2.max_support() == 2);
    CHECK(close(k2.at(-2), 1.0 / 16));
    CHECK(close(k2.at(-1), 4.0 / 16));
    CHECK(close(k2.at(0), 6.0 / 16));
    CHECK(close(k2.at(1), 4.0 / 16));
    CHECK(close(k2.at(2), 1.0 / 16));
    CHECK(close(k2.at(3), 0.0));
    k2.check_normalized();
    CHECK(k2.mean() == doctest::Approx(0.0));
    CHECK(k2.variance() == doctest::Approx(1.0));

    Pmf k8 = pmf_binomial(8, P);
    k8.check_normalized();
    CHECK(k8.variance() == doctest::Approx(4.0));  // var(psi_k) = k/2
}

TEST_CASE("product distribution vs exhaustive enumeration") {
    // X, Y iid psi_1 (values -1,0,1 w.p. 1/4,1/2,1/4); enumerate all 9 pairs
    Pmf k1 = pmf_binomial(1, P);
    Pmf prod = pmf_product(k1, k1);
    std::map<long, double> expect;
    const double pv[3] = {0.25, 0.5, 0.25};
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y) expect[x * y] += pv[x + 1] * pv[y + 1];
    for (long v = prod.min_support(); v <= prod.max_support(); ++v)
        CHECK(close(prod.at(v), expect.count(v) ? expect[v] : 0.0));
    prod.check_normalized();
    CHECK(prod.min_support() == -1);
    CHECK(prod.max_support() == 1);
}

TEST_CASE("convolution basics") {
    Pmf k1 = pmf_binomial(1, P);
    Pmf two = pmf_convolve(k1, k1);
    two.check_normalized();
    CHECK(two.min_support() == -2);
    CHECK(two.max_support() == 2);
    // psi_1 + psi_1 has the law of psi_2
    Pmf k2 = pmf_binomial(2, P);
    for (long v = -2; v <= 2; ++v) CHECK(close(two.at(v), 0.0) == close(k2.at(v), 0.0));
    CHECK(close(two.at(0) - k2.at(0), 0.0));

    Pmf d = Pmf::delta(5, P);
    Pmf shifted = pmf_convolve(k1, d);
    CHECK(shifted.min_support() == 4);
    CHECK(close(shifted.at(5), 0.5));

    std::mt19937 rng(7);
    Pmf a = random_pmf(-3, 9, rng), b = random_pmf(2, 5, rng);
    Pmf ab = pmf_convolve(a, b), ba = pmf_convolve(b, a);
    for (long v = ab.min_support(); v <= ab.max_support(); ++v)
        CHECK(close(ab.at(v) - ba.at(v), 0.0, 1e-70));
}

TEST_CASE("self-convolution matches the generic path") {
    std::mt19937 rng(11);
    for (int t = 0; t < 5; ++t) {
        Pmf a = random_pmf(-4 + (int)(rng() % 9), 1 + rng() % 12, rng);
        Pmf s = pmf_self_convolve(a);
        Pmf g = pmf_convolve(a, a);
        REQUIRE(s.min_support() == g.min_support());
        REQUIRE(s.max_support() == g.max_support());
        for (long v = s.min_support(); v <= s.max_support(); ++v) {
            bool near = close(s.at(v) - g.at(v), 0.0, 1e-70) ||
                        close(g.at(v) - s.at(v), 0.0, 1e-70);
            CHECK(near);
        }
    }
}

TEST_CASE("power by binary exponentiation == sequential convolution") {
    Pmf base = pmf_product(pmf_binomial(2, P), pmf_binomial(2, P));
    Pmf seq = Pmf::delta(0, P);
    for (uint64_t t = 1; t <= 8; ++t) {
        seq = pmf_convolve(seq, base);
        Pmf pw = pmf_power(base, t);
        REQUIRE(pw.min_support() == seq.min_support());
        for (long v = pw.min_support(); v <= pw.max_support(); ++v) {
            BigProb d = (pw.at(v) > seq.at(v)) ? pw.at(v) - seq.at(v) : seq.at(v) - pw.at(v);
            CHECK(d < BigProb(1e-70, P));
        }
        pw.check_normalized();
    }
    CHECK_THROWS(pmf_power(base, 0));
}

TEST_CASE("folding") {
    const uint32_t q = 17;
    Pmf a(-20, 45, P);  // support [-20, 24]
    std::mt19937 rng(13);
    a = random_pmf(-20, 45, rng);
    Pmf f = pmf_fold(a, q);
    CHECK(f.folded());
    CHECK(f.min_support() == 0);
    CHECK(f.max_support() == q - 1);
    f.check_normalized();
    for (uint32_t r = 0; r < q; ++r) {
        double expect_gap = 0;
        BigProb acc(0.0, P);
        for (long x = -20; x <= 24; ++x)
            if (((x % (long)q) + q) % q == r) acc = acc + a.at(x);
        (void)expect_gap;
        BigProb d = (f.at(r) > acc) ? f.at(r) - acc : acc - f.at(r);
        CHECK(d < BigProb(1e-70, P));
    }

    // folding commutes with convolution mod q
    Pmf b = random_pmf(-6, 30, rng);
    Pmf lhs = pmf_fold(pmf_convolve(a, b), q);
    Pmf rhs = pmf_fold(pmf_convolve(pmf_fold(a, q), pmf_fold(b, q)), q);
    for (uint32_t r = 0; r < q; ++r) {
        BigProb d = (lhs.at(r) > rhs.at(r)) ? lhs.at(r) - rhs.at(r) : rhs.at(r) - lhs.at(r);
        CHECK(d < BigProb(1e-68, P));
    }

    // folded power equals folding the unfolded power
    Pmf p1 = pmf_power(pmf_binomial(2, P), 16, q);
    Pmf p2 = pmf_fold(pmf_power(pmf_binomial(2, P), 16), q);
    for (uint32_t r = 0; r < q; ++r) {
        BigProb d = (p1.at(r) > p2.at(r)) ? p1.at(r) - p2.at(r) : p2.at(r) - p1.at(r);
        CHECK(d < BigProb(1e-68, P));
    }
}

TEST_CASE("normalization guard") {
    Pmf bad(0, 2, P);
    bad.weight(0) = BigProb(0.5, P);
    bad.weight(1) = BigProb(0.4, P);
    CHECK_THROWS_AS(bad.check_normalized(), std::logic_error);
}

TEST_CASE("BigProb log2 handles tiny magnitudes") {
    BigProb t = BigProb(1.0, P);
    for (int i = 0; i < 50; ++i) t = t * BigProb(std::ldexp(1.0, -20), P);
    CHECK(t.log2() == doctest::Approx(-1000.0).epsilon(1e-12));
    CHECK(BigProb(0.25, P).log2() == doctest::Approx(-2.0));
}
