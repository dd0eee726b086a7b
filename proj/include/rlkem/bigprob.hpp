#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace rlkem {

// Non-negative arbitrary-precision float: P-bit mantissa, unbounded exponent
// (backed by MPFR).  Values as small as 2^-3000 and beyond stay exact in
// relative terms; all analyzer sums are of non-negative terms, so relative
// precision survives accumulation.
class BigProb {
  public:
    static constexpr unsigned kDefaultPrec = 512;

    explicit BigProb(unsigned prec = kDefaultPrec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigProb(double d, unsigned prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, d, MPFR_RNDN); }
    BigProb(const BigProb& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigProb(BigProb&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
    BigProb& operator=(const BigProb& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    BigProb& operator=(BigProb&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~BigProb() { mpfr_clear(v_); }

    unsigned prec() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    double log2() const;  // -inf for zero
    std::string str(int digits = 8) const;

    BigProb& operator+=(const BigProb& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigProb& operator-=(const BigProb& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigProb& operator*=(const BigProb& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigProb& operator/=(const BigProb& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend BigProb operator+(BigProb a, const BigProb& b) { a += b; return a; }
    friend BigProb operator-(BigProb a, const BigProb& b) { a -= b; return a; }
    friend BigProb operator*(BigProb a, const BigProb& b) { a *= b; return a; }
    friend BigProb operator/(BigProb a, const BigProb& b) { a /= b; return a; }

    friend bool operator<(const BigProb& a, const BigProb& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigProb& a, const BigProb& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator==(const BigProb& a, const BigProb& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    static BigProb from_ratio(uint64_t num, uint64_t den, unsigned prec);
    static BigProb one(unsigned prec) { return BigProb(1.0, prec); }

  private:
    mpfr_t v_;
};

}  // namespace rlkem
