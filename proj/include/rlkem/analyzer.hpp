#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rlkem/codec.hpp"
#include "rlkem/ecc.hpp"
#include "rlkem/pmf.hpp"

namespace rlkem {

struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CompressionSide { V, U };

// Exact: PMF of decompress(compress(x)) - x for x uniform on [0, q),
// enumerated through the real codec.  Idealized: the flat rounding-error
// model (uniform weight r/q on +-(ceil(q/2r)-1)) that published DFR tables
// are computed with; its total mass differs from 1 by O(r/q) by design.
enum class CompressionModel { Exact, Idealized };

Pmf pmf_compression_noise(uint32_t q, Rate r, CompressionSide side, unsigned prec,
                          CompressionModel model = CompressionModel::Exact);

// Difference noise n_d = (es' - e's + e'')_i, folded to [0, q):
// fold_q(power(product(psi_k, psi_k), 2n) (*) psi_k).
Pmf pmf_difference_noise(const ParamSet& params, unsigned prec);

// Total noise n_t = n_d + n_c - (n_u s)_i, folded to [0, q); the u-hat term
// is omitted at full rate.
Pmf pmf_total_noise(const ParamSet& params, const CompressionRates& rates, unsigned prec);

// Binary symmetric super channel seen by the outer code.
struct SuperChannel {
    BigProb p;  // cross-over probability
    uint32_t m;
    uint32_t q;
};

// Exact per-bit error probability of ATE with m repetitions over the given
// folded total-noise PMF: distance PMFs conditioned on both transmitted
// poles, m-fold convolution, threshold sum >= m*q/4 with the decoder's tie
// rule, 1/2-1/2 priors.
SuperChannel crossover_probability(const Pmf& total_folded, uint32_t m, uint32_t q);

// 1 - (1 - p)^nbits, evaluated without cancellation.
BigProb dfr_ate(const SuperChannel& ch, uint32_t nbits = 256);

// Upper binomial tail: sum_{i > ct} C(cn, i) p^i (1-p)^(cn-i).  cn counts
// the bits actually crossing the super channel (codeword + transmitted pad).
BigProb dfr_bch(const SuperChannel& ch, uint32_t cn, uint32_t ct);

// Renyi divergence R_a(psi_k || xi_k), xi_k the rounded Gaussian with
// variance k/2.  a > 1.
BigProb renyi_divergence(uint32_t k, double a, unsigned prec);

// Printed alongside every emitted table: the attack-cost columns of the
// source tables come from an external lattice estimator and are out of
// scope, so tables here carry DFR and bandwidth figures only.
extern const char kSecurityColumnsNote[];

struct TableRow {
    uint32_t n;
    CompressionRates rates;
    int option;       // -1 = rate-only row, 0 = ATE-only baseline, 1..4 = paper option
    uint32_t m;       // inner repetition actually used
    double log2_dfr;  // NaN for table-3 rows
    double log2_crossover;  // NaN except table 3
    size_t ct_bytes;
    double reduction_pct;
};

// Memoizing front end over the PMF pipeline.  Every emitted number is
// recomputed at doubled precision and must agree to 1e-6 relative in log2,
// otherwise PrecisionError is thrown.
class NoiseAnalyzer {
  public:
    explicit NoiseAnalyzer(unsigned prec = BigProb::kDefaultPrec,
                           CompressionModel model = CompressionModel::Exact)
        : prec_(prec), model_(model) {}

    unsigned prec() const { return prec_; }
    CompressionModel model() const { return model_; }

    const Pmf& difference_noise(const ParamSet& p);
    const Pmf& total_noise(const ParamSet& p, const CompressionRates& rates);
    SuperChannel channel(const ParamSet& p, const CompressionRates& rates, uint32_t m);

    BigProb option_dfr(const ParamSet& p, const CompressionRates& rates, int option);
    BigProb scheme_dfr(const ParamSet& p, const CompressionRates& rates, const EccScheme& scheme);

    // Reproduces the layout of the paper's tables 2-5 (DFR / bandwidth
    // columns only; attack-cost estimation is out of scope).
    std::vector<TableRow> generate_table(int table_id, bool certify = true);

    // Certified single numbers (computed at prec and 2*prec).
    double certified_log2_dfr(const ParamSet& p, const CompressionRates& rates, int option);
    double certified_log2_dfr(const ParamSet& p, const CompressionRates& rates,
                              const EccScheme& scheme);
    double certified_log2_crossover(const ParamSet& p, const CompressionRates& rates, uint32_t m);

  private:
    struct Key {
        uint32_t n, q, k, rv, ru;
        bool operator<(const Key& o) const;
    };
    unsigned prec_;
    CompressionModel model_;
    std::map<Key, Pmf> diff_cache_;   // rv/ru unused
    std::map<Key, Pmf> u_term_cache_; // rv unused
    std::map<Key, Pmf> total_cache_;
    std::unique_ptr<NoiseAnalyzer> doubled_;  // lazily built, shares nothing

    const Pmf& u_term(const ParamSet& p, Rate ru);
    NoiseAnalyzer& doubled();
};

}  // namespace rlkem
