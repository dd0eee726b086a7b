#pragma once

#include <cstdint>
#include <vector>

#include "rlkem/bigprob.hpp"

namespace rlkem {

// Probability mass function over a contiguous integer support
// [offset, offset + size).  Weights are non-negative BigProb; a Pmf marked
// folded has support exactly [0, q).
class Pmf {
  public:
    Pmf(long offset, size_t size, unsigned prec);

    static Pmf delta(long at, unsigned prec);  // point mass

    long offset() const { return offset_; }
    size_t size() const { return w_.size(); }
    long min_support() const { return offset_; }
    long max_support() const { return offset_ + static_cast<long>(w_.size()) - 1; }
    unsigned prec() const { return prec_; }
    bool folded() const { return folded_; }

    const BigProb& at(long x) const;          // 0 outside support
    BigProb& weight(size_t i) { return w_[i]; }
    const BigProb& weight(size_t i) const { return w_[i]; }

    BigProb total() const;
    // Asserts |total - 1| <= 2^(-prec/2); throws std::logic_error otherwise.
    void check_normalized() const;

    double mean() const;
    double variance() const;

    void mark_folded(bool f) { folded_ = f; }

  private:
    long offset_;
    std::vector<BigProb> w_;
    unsigned prec_;
    bool folded_ = false;
};

// Centered binomial psi_k: weight(x) = C(2k, k+x) / 4^k on [-k, k].
Pmf pmf_binomial(uint32_t k, unsigned prec);

// Exact distribution of X*Y, X+Y, sum of t iid copies, X mod q.
Pmf pmf_product(const Pmf& a, const Pmf& b);
Pmf pmf_convolve(const Pmf& a, const Pmf& b);
// Binary exponentiation; intermediate supports are folded to [0, fold_q)
// whenever they would exceed it (fold_q = 0 disables folding).
Pmf pmf_power(const Pmf& a, uint64_t t, uint32_t fold_q = 0);
Pmf pmf_fold(const Pmf& a, uint32_t q);

// Self-convolution (distribution of X + X' iid); ~half the multiplies of
// the generic path on the analyzer's large symmetric supports.
Pmf pmf_self_convolve(const Pmf& a);

}  // namespace rlkem
