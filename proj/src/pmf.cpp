#include "rlkem/pmf.hpp"

#include <gmp.h>

#include <algorithm>
#include <stdexcept>

namespace rlkem {

namespace {

const BigProb& zero_of(unsigned prec) {
    static thread_local BigProb z(0.0, 64);
    (void)prec;
    return z;
}

}  // namespace

Pmf::Pmf(long offset, size_t size, unsigned prec)
    : offset_(offset), w_(size, BigProb(prec)), prec_(prec) {
    if (size == 0) throw std::invalid_argument("empty Pmf support");
}

Pmf Pmf::delta(long at, unsigned prec) {
    Pmf p(at, 1, prec);
    p.w_[0] = BigProb(1.0, prec);
    return p;
}

const BigProb& Pmf::at(long x) const {
    if (x < offset_ || x >= offset_ + static_cast<long>(w_.size())) return zero_of(prec_);
    return w_[static_cast<size_t>(x - offset_)];
}

BigProb Pmf::total() const {
    BigProb sum(prec_);
    for (const auto& w : w_) sum += w;
    return sum;
}

void Pmf::check_normalized() const {
    BigProb sum = total();
    mpfr_t diff;
    mpfr_init2(diff, prec_);
    mpfr_sub_ui(diff, sum.raw(), 1, MPFR_RNDN);
    mpfr_abs(diff, diff, MPFR_RNDN);
    bool ok = mpfr_cmp_d(diff, 0.0) == 0 ||
              mpfr_get_exp(diff) <= -static_cast<mpfr_exp_t>(prec_ / 2);
    mpfr_clear(diff);
    if (!ok) throw std::logic_error("Pmf mass deviates from 1 beyond 2^(-P/2)");
}

double Pmf::mean() const {
    double m = 0;
    for (size_t i = 0; i < w_.size(); ++i)
        m += (offset_ + static_cast<double>(i)) * w_[i].to_double();
    return m;
}

double Pmf::variance() const {
    double mu = mean(), v = 0;
    for (size_t i = 0; i < w_.size(); ++i) {
        double x = offset_ + static_cast<double>(i) - mu;
        v += x * x * w_[i].to_double();
    }
    return v;
}

Pmf pmf_binomial(uint32_t k, unsigned prec) {
    Pmf p(-static_cast<long>(k), 2 * k + 1, prec);
    mpz_t binom;
    mpz_init(binom);
    for (uint32_t i = 0; i <= 2 * k; ++i) {
        mpz_bin_uiui(binom, 2 * k, i);
        mpfr_set_z(p.weight(i).raw(), binom, MPFR_RNDN);
        mpfr_div_2ui(p.weight(i).raw(), p.weight(i).raw(), 2 * k, MPFR_RNDN);
    }
    mpz_clear(binom);
    p.check_normalized();
    return p;
}

Pmf pmf_product(const Pmf& a, const Pmf& b) {
    unsigned prec = std::max(a.prec(), b.prec());
    long lo = a.min_support() * b.min_support(), hi = lo;
    for (long x : {a.min_support() * b.min_support(), a.min_support() * b.max_support(),
                   a.max_support() * b.min_support(), a.max_support() * b.max_support()}) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    Pmf c(lo, static_cast<size_t>(hi - lo + 1), prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a.weight(i).is_zero()) continue;
        long x = a.offset() + static_cast<long>(i);
        for (size_t j = 0; j < b.size(); ++j) {
            if (b.weight(j).is_zero()) continue;
            long y = b.offset() + static_cast<long>(j);
            BigProb& slot = c.weight(static_cast<size_t>(x * y - lo));
            mpfr_mul(t, a.weight(i).raw(), b.weight(j).raw(), MPFR_RNDN);
            mpfr_add(slot.raw(), slot.raw(), t, MPFR_RNDN);
        }
    }
    mpfr_clear(t);
    return c;
}

Pmf pmf_convolve(const Pmf& a, const Pmf& b) {
    unsigned prec = std::max(a.prec(), b.prec());
    Pmf c(a.offset() + b.offset(), a.size() + b.size() - 1, prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a.weight(i).is_zero()) continue;
        mpfr_srcptr ai = a.weight(i).raw();
        for (size_t j = 0; j < b.size(); ++j) {
            if (b.weight(j).is_zero()) continue;
            BigProb& slot = c.weight(i + j);
            mpfr_mul(t, ai, b.weight(j).raw(), MPFR_RNDN);
            mpfr_add(slot.raw(), slot.raw(), t, MPFR_RNDN);
        }
    }
    mpfr_clear(t);
    return c;
}

Pmf pmf_self_convolve(const Pmf& a) {
    const unsigned prec = a.prec();
    const size_t n = a.size();
    Pmf c(2 * a.offset(), 2 * n - 1, prec);
    mpfr_t t, acc;
    mpfr_init2(t, prec);
    mpfr_init2(acc, prec);
    for (size_t s = 0; s < 2 * n - 1; ++s) {
        mpfr_set_zero(acc, 1);
        size_t i_lo = s >= n ? s - n + 1 : 0;
        // pairs (i, s-i) with i < s-i, then doubled; center term added once
        for (size_t i = i_lo; 2 * i < s; ++i) {
            if (a.weight(i).is_zero() || a.weight(s - i).is_zero()) continue;
            mpfr_mul(t, a.weight(i).raw(), a.weight(s - i).raw(), MPFR_RNDN);
            mpfr_add(acc, acc, t, MPFR_RNDN);
        }
        mpfr_mul_2ui(acc, acc, 1, MPFR_RNDN);
        if (s % 2 == 0 && !a.weight(s / 2).is_zero()) {
            mpfr_sqr(t, a.weight(s / 2).raw(), MPFR_RNDN);
            mpfr_add(acc, acc, t, MPFR_RNDN);
        }
        mpfr_set(c.weight(s).raw(), acc, MPFR_RNDN);
    }
    mpfr_clear(t);
    mpfr_clear(acc);
    return c;
}

Pmf pmf_fold(const Pmf& a, uint32_t q) {
    if (q == 0) throw std::invalid_argument("fold modulus must be positive");
    Pmf c(0, q, a.prec());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a.weight(i).is_zero()) continue;
        long x = a.offset() + static_cast<long>(i);
        long r = x % static_cast<long>(q);
        if (r < 0) r += q;
        BigProb& slot = c.weight(static_cast<size_t>(r));
        mpfr_add(slot.raw(), slot.raw(), a.weight(i).raw(), MPFR_RNDN);
    }
    c.mark_folded(true);
    return c;
}

Pmf pmf_power(const Pmf& a, uint64_t t, uint32_t fold_q) {
    if (t < 1) throw std::invalid_argument("pmf_power exponent must be >= 1");
    auto maybe_fold = [&](Pmf&& p) {
        if (fold_q > 0 && p.size() > fold_q) return pmf_fold(p, fold_q);
        return std::move(p);
    };
    Pmf base = maybe_fold(Pmf(a));
    Pmf result = Pmf::delta(0, a.prec());
    bool have_result = false;
    while (true) {
        if (t & 1) {
            result = have_result ? maybe_fold(pmf_convolve(result, base)) : base;
            have_result = true;
        }
        t >>= 1;
        if (t == 0) break;
        base = maybe_fold(pmf_self_convolve(base));
    }
    return result;
}

}  // namespace rlkem
