#include "rlkem/bigprob.hpp"

#include <cmath>
#include <vector>

namespace rlkem {

double BigProb::log2() const {
    if (mpfr_zero_p(v_)) return -INFINITY;
    // log2(m * 2^e) = e + log2(m) keeps accuracy for tiny values.
    mpfr_exp_t e;
    double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
    return static_cast<double>(e) + std::log2(m);
}

std::string BigProb::str(int digits) const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*Rg", digits, v_) < 0) return "?";
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

BigProb BigProb::from_ratio(uint64_t num, uint64_t den, unsigned prec) {
    BigProb out(prec);
    mpfr_set_ui(out.v_, static_cast<unsigned long>(num), MPFR_RNDN);
    mpfr_div_ui(out.v_, out.v_, static_cast<unsigned long>(den), MPFR_RNDN);
    return out;
}

}  // namespace rlkem
