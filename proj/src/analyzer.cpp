#include "rlkem/analyzer.hpp"

#include <gmp.h>

#include <cmath>
#include <tuple>

namespace rlkem {

const char kSecurityColumnsNote[] =
    "security-bit columns (primal/dual attack costs) are not reproduced; "
    "they require an external lattice attack-cost estimator. Tables report DFR "
    "and ciphertext size only.";

namespace {

// round(a/b) with ties toward +inf (matches the codec)
uint64_t div_round(uint64_t a, uint64_t b) { return (2 * a + b) / (2 * b); }

long centered(long x, uint32_t q) {
    long r = x % static_cast<long>(q);
    if (r < 0) r += q;
    if (r > static_cast<long>(q) / 2) r -= q;
    return r;
}

}  // namespace

Pmf pmf_compression_noise(uint32_t q, Rate r, CompressionSide /*side*/, unsigned prec,
                          CompressionModel model) {
    if (r.is_full()) return Pmf::delta(0, prec);
    if (model == CompressionModel::Idealized) {
        // Idealized rounding-error model: uniform weight r/q on
        // [-(ceil(q/2r)-1), +(ceil(q/2r)-1)].  The support offsets caused by
        // the top bucket wrapping to 0 are ignored, and the total mass
        // (2*ceil(q/2r)-1) * r/q differs from 1 by O(r/q); kept as-is since
        // downstream tail probabilities are quoted against analyses that use
        // this exact shape.
        long b = static_cast<long>((q + 2 * r.r - 1) / (2 * r.r)) - 1;
        Pmf pmf(-b, static_cast<size_t>(2 * b + 1), prec);
        BigProb unit = BigProb::from_ratio(r.r, q, prec);
        for (size_t i = 0; i < pmf.size(); ++i) pmf.weight(i) = unit;
        return pmf;
    }
    // Exact model: the v'- and u-side coefficients both enter compression
    // uniform on [0, q), so the enumerated error PMF is the same for either
    // side.
    std::vector<long> err(q);
    long lo = 0, hi = 0;
    for (uint32_t x = 0; x < q; ++x) {
        uint32_t h = static_cast<uint32_t>(div_round(static_cast<uint64_t>(x) * r.r, q) % r.r);
        uint32_t y = static_cast<uint32_t>(div_round(static_cast<uint64_t>(h) * q, r.r));
        long e = centered(static_cast<long>(y) - static_cast<long>(x), q);
        err[x] = e;
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    Pmf pmf(lo, static_cast<size_t>(hi - lo + 1), prec);
    BigProb unit = BigProb::from_ratio(1, q, prec);
    for (uint32_t x = 0; x < q; ++x) {
        BigProb& slot = pmf.weight(static_cast<size_t>(err[x] - lo));
        mpfr_add(slot.raw(), slot.raw(), unit.raw(), MPFR_RNDN);
    }
    pmf.check_normalized();
    return pmf;
}

Pmf pmf_difference_noise(const ParamSet& params, unsigned prec) {
    // n_d = (es' - e's + e'')_i: 2n independent psi_k*psi_k product terms
    // (signs irrelevant by symmetry) plus one psi_k term, folded mod q.
    Pmf psi = pmf_binomial(params.k, prec);
    Pmf prod = pmf_product(psi, psi);
    Pmf summed = pmf_power(prod, 2ull * params.n, params.q);
    Pmf out = pmf_fold(pmf_convolve(summed, psi), params.q);
    out.check_normalized();
    return out;
}

Pmf pmf_total_noise(const ParamSet& params, const CompressionRates& rates, unsigned prec) {
    NoiseAnalyzer an(prec);
    return an.total_noise(params, rates);
}

SuperChannel crossover_probability(const Pmf& total_folded, uint32_t m, uint32_t q) {
    if (!total_folded.folded() || total_folded.size() != q)
        throw ParameterError("crossover_probability expects a PMF folded to [0, q)");
    const unsigned prec = total_folded.prec();
    const uint32_t half = q / 2;

    // Upper tail of the summed-distance PMF for the pole at floor(q/2),
    // lower tail for the pole at 0; tails are summed directly so no
    // cancellation occurs.  Rounding-tie asymmetry makes the two distance
    // PMFs slightly different, so both conditionals are computed.
    BigProb err_sum(prec);
    for (uint32_t pole : {half, 0u}) {
        Pmf dist(0, half + 1, prec);
        for (uint32_t x = 0; x < q; ++x) {
            uint32_t d = x >= half ? x - half : half - x;
            if (d > half) d = half;  // x = q-1..: |x-half| <= half for odd q
            uint32_t noise_idx = (x + q - pole) % q;
            BigProb& slot = dist.weight(d);
            mpfr_add(slot.raw(), slot.raw(), total_folded.weight(noise_idx).raw(), MPFR_RNDN);
        }
        // mass is conserved, but the idealized compression model is allowed
        // to carry total mass != 1
        BigProb in_mass = total_folded.total(), out_mass = dist.total();
        BigProb gap = (in_mass > out_mass) ? in_mass - out_mass : out_mass - in_mass;
        if (BigProb(std::ldexp(1.0, -(int)prec / 2), prec) < gap)
            throw std::logic_error("distance PMF lost mass");
        Pmf summed = pmf_power(dist, m);
        BigProb tail(prec);
        for (size_t i = 0; i < summed.size(); ++i) {
            uint64_t t = static_cast<uint64_t>(summed.offset() + static_cast<long>(i));
            bool decodes_one = 4 * t < static_cast<uint64_t>(m) * q;  // tie -> 0
            bool error = (pole == half) ? !decodes_one : decodes_one;
            if (error) tail += summed.weight(i);
        }
        err_sum += tail;
    }
    BigProb p = err_sum;
    mpfr_div_2ui(p.raw(), p.raw(), 1, MPFR_RNDN);  // 1/2-1/2 priors
    return SuperChannel{std::move(p), m, q};
}

BigProb dfr_ate(const SuperChannel& ch, uint32_t nbits) {
    // 1 - (1-p)^N = -expm1(N * log1p(-p)): no cancellation for tiny p.
    unsigned prec = ch.p.prec();
    BigProb out(prec);
    mpfr_neg(out.raw(), ch.p.raw(), MPFR_RNDN);
    mpfr_log1p(out.raw(), out.raw(), MPFR_RNDN);
    mpfr_mul_ui(out.raw(), out.raw(), nbits, MPFR_RNDN);
    mpfr_expm1(out.raw(), out.raw(), MPFR_RNDN);
    mpfr_neg(out.raw(), out.raw(), MPFR_RNDN);
    return out;
}

BigProb dfr_bch(const SuperChannel& ch, uint32_t cn, uint32_t ct) {
    unsigned prec = ch.p.prec();
    if (mpfr_cmp_ui(ch.p.raw(), 1) > 0) throw ParameterError("cross-over probability > 1");
    if (ct >= cn) return BigProb(prec);

    // direct upper tail: sum_{i=ct+1}^{cn} C(cn,i) p^i (1-p)^(cn-i)
    mpfr_t one_minus_p, ratio, term, sum, tmp;
    mpfr_inits2(prec, one_minus_p, ratio, term, sum, tmp, (mpfr_ptr)0);
    mpfr_ui_sub(one_minus_p, 1, ch.p.raw(), MPFR_RNDN);
    mpfr_div(ratio, ch.p.raw(), one_minus_p, MPFR_RNDN);  // p/(1-p)

    // first term i = ct+1
    mpz_t binom;
    mpz_init(binom);
    mpz_bin_uiui(binom, cn, ct + 1);
    mpfr_pow_ui(term, ch.p.raw(), ct + 1, MPFR_RNDN);
    mpfr_pow_ui(tmp, one_minus_p, cn - ct - 1, MPFR_RNDN);
    mpfr_mul(term, term, tmp, MPFR_RNDN);
    mpfr_mul_z(term, term, binom, MPFR_RNDN);
    mpfr_set(sum, term, MPFR_RNDN);
    for (uint32_t i = ct + 1; i < cn; ++i) {
        // term_{i+1} = term_i * (cn-i)/(i+1) * p/(1-p)
        mpfr_mul_ui(term, term, cn - i, MPFR_RNDN);
        mpfr_div_ui(term, term, i + 1, MPFR_RNDN);
        mpfr_mul(term, term, ratio, MPFR_RNDN);
        mpfr_add(sum, sum, term, MPFR_RNDN);
        if (!mpfr_zero_p(term) && !mpfr_zero_p(sum) &&
            mpfr_get_exp(term) + static_cast<mpfr_exp_t>(prec) + 8 < mpfr_get_exp(sum))
            break;
    }
    mpz_clear(binom);
    BigProb out(prec);
    mpfr_set(out.raw(), sum, MPFR_RNDN);
    mpfr_clears(one_minus_p, ratio, term, sum, tmp, (mpfr_ptr)0);
    return out;
}

BigProb renyi_divergence(uint32_t k, double a, unsigned prec) {
    if (a <= 1.0) throw ParameterError("Renyi order a must be > 1");
    if (k < 1) throw ParameterError("k must be >= 1");

    Pmf psi = pmf_binomial(k, prec);
    mpfr_t sigma, sqrt2sig, hi, lo, xi, sum, t, av;
    mpfr_inits2(prec, sigma, sqrt2sig, hi, lo, xi, sum, t, av, (mpfr_ptr)0);
    mpfr_set_ui(sigma, k, MPFR_RNDN);
    mpfr_div_2ui(sigma, sigma, 1, MPFR_RNDN);
    mpfr_sqrt(sigma, sigma, MPFR_RNDN);              // sigma = sqrt(k/2)
    mpfr_sqrt_ui(sqrt2sig, 2, MPFR_RNDN);
    mpfr_mul(sqrt2sig, sqrt2sig, sigma, MPFR_RNDN);  // sqrt(2)*sigma
    mpfr_set_d(av, a, MPFR_RNDN);

    mpfr_set_zero(sum, 1);
    for (long x = -static_cast<long>(k); x <= static_cast<long>(k); ++x) {
        // xi_k(x) = (erf((x+1/2)/(sqrt2 sigma)) - erf((x-1/2)/(sqrt2 sigma))) / 2
        mpfr_set_si(hi, 2 * x + 1, MPFR_RNDN);
        mpfr_div_2ui(hi, hi, 1, MPFR_RNDN);
        mpfr_div(hi, hi, sqrt2sig, MPFR_RNDN);
        mpfr_erf(hi, hi, MPFR_RNDN);
        mpfr_set_si(lo, 2 * x - 1, MPFR_RNDN);
        mpfr_div_2ui(lo, lo, 1, MPFR_RNDN);
        mpfr_div(lo, lo, sqrt2sig, MPFR_RNDN);
        mpfr_erf(lo, lo, MPFR_RNDN);
        mpfr_sub(xi, hi, lo, MPFR_RNDN);
        mpfr_div_2ui(xi, xi, 1, MPFR_RNDN);

        // psi(x)^a / xi(x)^(a-1)
        mpfr_pow(t, psi.at(x).raw(), av, MPFR_RNDN);
        mpfr_sub_ui(hi, av, 1, MPFR_RNDN);
        mpfr_pow(xi, xi, hi, MPFR_RNDN);
        mpfr_div(t, t, xi, MPFR_RNDN);
        mpfr_add(sum, sum, t, MPFR_RNDN);
    }
    // R_a = sum^(1/(a-1))
    mpfr_sub_ui(av, av, 1, MPFR_RNDN);
    mpfr_ui_div(av, 1, av, MPFR_RNDN);
    mpfr_pow(sum, sum, av, MPFR_RNDN);
    BigProb out(prec);
    mpfr_set(out.raw(), sum, MPFR_RNDN);
    mpfr_clears(sigma, sqrt2sig, hi, lo, xi, sum, t, av, (mpfr_ptr)0);
    return out;
}

bool NoiseAnalyzer::Key::operator<(const Key& o) const {
    return std::tie(n, q, k, rv, ru) < std::tie(o.n, o.q, o.k, o.rv, o.ru);
}

const Pmf& NoiseAnalyzer::difference_noise(const ParamSet& p) {
    Key key{p.n, p.q, p.k, 0, 0};
    auto it = diff_cache_.find(key);
    if (it == diff_cache_.end())
        it = diff_cache_.emplace(key, pmf_difference_noise(p, prec_)).first;
    return it->second;
}

const Pmf& NoiseAnalyzer::u_term(const ParamSet& p, Rate ru) {
    Key key{p.n, p.q, p.k, 0, ru.r};
    auto it = u_term_cache_.find(key);
    if (it == u_term_cache_.end()) {
        Pmf nu = pmf_compression_noise(p.q, ru, CompressionSide::U, prec_, model_);
        Pmf psi = pmf_binomial(p.k, prec_);
        Pmf term = pmf_power(pmf_product(nu, psi), p.n, p.q);
        it = u_term_cache_.emplace(key, std::move(term)).first;
    }
    return it->second;
}

const Pmf& NoiseAnalyzer::total_noise(const ParamSet& p, const CompressionRates& rates) {
    Key key{p.n, p.q, p.k, rates.r_v.r, rates.r_u.r};
    auto it = total_cache_.find(key);
    if (it == total_cache_.end()) {
        Pmf acc = difference_noise(p);
        if (!rates.r_v.is_full()) {
            Pmf nc = pmf_compression_noise(p.q, rates.r_v, CompressionSide::V, prec_, model_);
            acc = pmf_fold(pmf_convolve(acc, nc), p.q);
        }
        if (!rates.r_u.is_full()) acc = pmf_fold(pmf_convolve(acc, u_term(p, rates.r_u)), p.q);
        acc.mark_folded(true);
        if (model_ == CompressionModel::Exact) acc.check_normalized();
        it = total_cache_.emplace(key, std::move(acc)).first;
    }
    return it->second;
}

NoiseAnalyzer& NoiseAnalyzer::doubled() {
    if (!doubled_) doubled_ = std::make_unique<NoiseAnalyzer>(2 * prec_, model_);
    return *doubled_;
}

SuperChannel NoiseAnalyzer::channel(const ParamSet& p, const CompressionRates& rates,
                                    uint32_t m) {
    return crossover_probability(total_noise(p, rates), m, p.q);
}

BigProb NoiseAnalyzer::scheme_dfr(const ParamSet& p, const CompressionRates& rates,
                                  const EccScheme& scheme) {
    SuperChannel ch = channel(p, rates, scheme.repetition());
    if (!scheme.is_concat()) return dfr_ate(ch, scheme.msg_bits());
    return dfr_bch(ch, scheme.block_len(), scheme.bch().ct);
}

BigProb NoiseAnalyzer::option_dfr(const ParamSet& p, const CompressionRates& rates, int option) {
    return scheme_dfr(p, rates, scheme_for_option(option, p));
}

namespace {

void require_agreement(double l1, double l2, const char* what) {
    if (std::isinf(l1) && std::isinf(l2)) return;
    double tol = 1e-6 * std::max({std::fabs(l1), std::fabs(l2), 1.0});
    if (!(std::fabs(l1 - l2) <= tol))
        throw PrecisionError(std::string("precision doubling changed ") + what + ": " +
                             std::to_string(l1) + " vs " + std::to_string(l2));
}

}  // namespace

double NoiseAnalyzer::certified_log2_dfr(const ParamSet& p, const CompressionRates& rates,
                                         int option) {
    return certified_log2_dfr(p, rates, scheme_for_option(option, p));
}

double NoiseAnalyzer::certified_log2_dfr(const ParamSet& p, const CompressionRates& rates,
                                         const EccScheme& scheme) {
    double l1 = scheme_dfr(p, rates, scheme).log2();
    double l2 = doubled().scheme_dfr(p, rates, scheme).log2();
    require_agreement(l1, l2, "log2(DFR)");
    return l1;
}

double NoiseAnalyzer::certified_log2_crossover(const ParamSet& p, const CompressionRates& rates,
                                               uint32_t m) {
    double l1 = channel(p, rates, m).p.log2();
    double l2 = doubled().channel(p, rates, m).p.log2();
    require_agreement(l1, l2, "log2(crossover)");
    return l1;
}

std::vector<TableRow> NoiseAnalyzer::generate_table(int table_id, bool certify) {
    std::vector<TableRow> rows;
    const double nan = std::nan("");
    auto rates_of = [](uint32_t rv, uint32_t ru) {
        return CompressionRates{rv ? Rate::of(rv) : Rate::full(), ru ? Rate::of(ru) : Rate::full()};
    };
    auto emit_dfr = [&](const ParamSet& p, const CompressionRates& rates, int option) {
        double l = certify ? certified_log2_dfr(p, rates, option)
                           : option_dfr(p, rates, option).log2();
        EccScheme s = scheme_for_option(option, p);
        size_t bytes = ciphertext_size(p, rates);
        size_t base = ciphertext_size(p, rates_of(8, 0));
        rows.push_back(TableRow{p.n, rates, option, s.repetition(), l, nan, bytes,
                                100.0 * (1.0 - double(bytes) / double(base))});
    };

    ParamSet p1024 = newhope1024_params();
    ParamSet p512 = newhope512_params();

    switch (table_id) {
        case 2: {
            for (auto [rv, ru] : {std::pair<uint32_t, uint32_t>{8, 0}, {4, 0}, {8, 1024}})
                emit_dfr(p1024, rates_of(rv, ru), 0);
            for (auto [rv, ru] :
                 {std::pair<uint32_t, uint32_t>{8, 0}, {4, 0}, {4, 2048}, {8, 1024}})
                emit_dfr(p512, rates_of(rv, ru), 0);
            break;
        }
        case 3: {
            CompressionRates base = rates_of(8, 0);
            for (uint32_t m : {4u, 3u, 2u, 1u}) {
                double l = certify ? certified_log2_crossover(p1024, base, m)
                                   : channel(p1024, base, m).p.log2();
                rows.push_back(TableRow{1024, base, static_cast<int>(4 - m), m, nan, l,
                                        ciphertext_size(p1024, base), 0.0});
            }
            double l4 = certify ? certified_log2_crossover(p512, base, 1)
                                : channel(p512, base, 1).p.log2();
            rows.push_back(
                TableRow{512, base, 4, 1, nan, l4, ciphertext_size(p512, base), 0.0});
            break;
        }
        case 4: {
            for (auto [rv, ru] : {std::pair<uint32_t, uint32_t>{8, 512}, {8, 256}, {8, 128},
                                  {4, 512}, {4, 256}, {4, 128}})
                for (int option : {0, 1, 2, 3}) emit_dfr(p1024, rates_of(rv, ru), option);
            break;
        }
        case 5: {
            for (auto [rv, ru] : {std::pair<uint32_t, uint32_t>{8, 512}, {8, 256}, {8, 128},
                                  {4, 1024}, {4, 512}, {4, 256}})
                for (int option : {0, 4}) emit_dfr(p512, rates_of(rv, ru), option);
            break;
        }
        default:
            throw ParameterError("table id must be 2, 3, 4, or 5");
    }
    return rows;
}

}  // namespace rlkem
