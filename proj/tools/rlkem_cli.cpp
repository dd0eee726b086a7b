// Command-line front end: table/figure reproduction, KEM demos, Monte-Carlo
// noise validation, and Renyi divergences.
//
// Exit codes: 0 ok, 2 usage error, 3 precision failure, 4 I/O error.
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rlkem/analyzer.hpp"
#include "rlkem/kem.hpp"

using json = nlohmann::ordered_json;
using namespace rlkem;

namespace {

constexpr const char* kToolVersion = "rlkem 1.0.0";

unsigned default_precision() {
    if (const char* env = std::getenv("RLKEM_PREC")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 256 && v <= 16384) return static_cast<unsigned>(v);
        std::fprintf(stderr, "RLKEM_PREC must be an integer in [256, 16384]\n");
        std::exit(2);
    }
    return BigProb::kDefaultPrec;
}

struct Preset {
    ParamSet params;
    CompressionRates rates;
    int option;            // -1: bare ATE scheme below
    EccScheme scheme;
};

Preset preset_by_name(const std::string& name) {
    ParamSet p1024 = newhope1024_params();
    ParamSet p512 = newhope512_params();
    CompressionRates base{Rate::of(8), Rate::full()};
    if (name == "newhope1024") return {p1024, base, 0, scheme_for_option(0, p1024)};
    if (name == "newhope512") return {p512, base, 0, scheme_for_option(0, p512)};
    if (name == "option1" || name == "option2" || name == "option3") {
        int opt = name[6] - '0';
        return {p1024, base, opt, scheme_for_option(opt, p1024)};
    }
    if (name == "option4") return {p512, base, 4, scheme_for_option(4, p512)};
    if (name == "toy-weak") {
        // documented weakened preset: per-bit error probability ~8.2e-3
        ParamSet toy(16, 577, 1);
        return {toy, CompressionRates{Rate::of(2), Rate::full()}, -1,
                EccScheme::ate_only(1, 16)};
    }
    throw CLI::ValidationError("preset", "unknown preset '" + name + "'");
}

uint32_t rate_value(Rate r) { return r.is_full() ? 0 : r.r; }
std::string rate_str(Rate r) { return r.is_full() ? "q" : std::to_string(r.r); }

// probabilities below 1e-12 are emitted in log2 form
std::string prob_repr(const BigProb& p) {
    double d = p.to_double();
    if (p.is_zero()) return "0";
    if (d >= 1e-12) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.12g", d);
        return buf;
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "2^%.4f", p.log2());
    return buf;
}

std::string hex(const std::vector<uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * bytes.size());
    for (uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 15]);
    }
    return out;
}

Seed parse_seed(const std::string& s) {
    if (s.size() != 64) throw CLI::ValidationError("seed", "seed must be 64 hex characters");
    Seed out{};
    for (size_t i = 0; i < 32; ++i) {
        auto nib = [&](char c) -> unsigned {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            if (c >= 'A' && c <= 'F') return c - 'A' + 10;
            throw CLI::ValidationError("seed", "seed must be hex");
        };
        out[i] = static_cast<uint8_t>(nib(s[2 * i]) << 4 | nib(s[2 * i + 1]));
    }
    return out;
}

json provenance(const std::string& command, json parameters, unsigned prec) {
    return json{{"tool", kToolVersion},
                {"command", command},
                {"parameters", std::move(parameters)},
                {"precision_bits", prec}};
}

// CSV files open with the same provenance object, one '# key=value' line per
// leaf, so a run can be reconstructed from the file alone.
void write_csv_provenance(std::ostream& os, const json& prov) {
    os << "# tool=" << prov["tool"].get<std::string>() << "\n";
    os << "# command=" << prov["command"].get<std::string>() << "\n";
    for (auto& [k, v] : prov["parameters"].items()) os << "# " << k << "=" << v.dump() << "\n";
    os << "# precision_bits=" << prov["precision_bits"].get<unsigned>() << "\n";
}

struct OutFile {
    std::ofstream file;
    std::ostream& os;
    explicit OutFile(const std::string& path) : os(path.empty() ? std::cout : file) {
        if (!path.empty()) {
            file.open(path);
            if (!file) {
                std::fprintf(stderr, "cannot open %s for writing\n", path.c_str());
                std::exit(4);
            }
        }
    }
};

// ---------------------------------------------------------------------------

int cmd_table(int id, unsigned prec, const std::string& out_path) {
    NoiseAnalyzer an(prec);
    std::vector<TableRow> rows = an.generate_table(id);
    json jrows = json::array();
    for (const TableRow& r : rows) {
        json row{{"n", r.n},
                 {"r_v", rate_str(r.rates.r_v)},
                 {"r_u", rate_str(r.rates.r_u)},
                 {"option", r.option == 0 ? "ate-only" : "option" + std::to_string(r.option)},
                 {"ate_m", r.m},
                 {"ciphertext_bytes", r.ct_bytes},
                 {"reduction_pct", r.reduction_pct}};
        if (!std::isnan(r.log2_dfr)) row["log2_dfr"] = r.log2_dfr;
        if (!std::isnan(r.log2_crossover)) row["log2_crossover"] = r.log2_crossover;
        jrows.push_back(std::move(row));
    }
    json doc;
    doc["provenance"] = provenance("analyze table", json{{"id", id}}, prec);
    doc["note"] = std::string(kSecurityColumnsNote);
    doc["rows"] = std::move(jrows);
    OutFile out(out_path);
    out.os << doc.dump(2) << "\n";
    return 0;
}

int cmd_noise(uint32_t n, uint32_t q, uint32_t k, uint32_t rv, uint32_t ru, unsigned prec,
              const std::string& out_path) {
    ParamSet p(n, q, k);
    CompressionRates rates{rv ? Rate::of(rv) : Rate::full(), ru ? Rate::of(ru) : Rate::full()};
    NoiseAnalyzer an(prec);
    const Pmf& total = an.total_noise(p, rates);
    OutFile out(out_path);
    write_csv_provenance(out.os, provenance("analyze noise",
                                            json{{"n", n}, {"q", q}, {"k", k},
                                                 {"r_v", rate_value(rates.r_v)},
                                                 {"r_u", rate_value(rates.r_u)}},
                                            prec));
    out.os << "value,log2_weight\n";
    char buf[64];
    // centered representatives in ascending order; the pmf is folded to [0, q)
    for (int64_t value = -(int64_t)(q / 2); value <= (int64_t)(q / 2); ++value) {
        int64_t folded = ((value % (int64_t)q) + q) % (int64_t)q;
        std::snprintf(buf, sizeof buf, "%" PRId64 ",%.10f\n", value, total.at(folded).log2());
        out.os << buf;
    }
    return 0;
}

int cmd_dfr(uint32_t n, uint32_t q, uint32_t k, uint32_t rv, uint32_t ru, int option,
            unsigned prec) {
    ParamSet p(n, q, k);
    CompressionRates rates{rv ? Rate::of(rv) : Rate::full(), ru ? Rate::of(ru) : Rate::full()};
    NoiseAnalyzer an(prec);
    double l = an.certified_log2_dfr(p, rates, option);
    BigProb dfr = an.option_dfr(p, rates, option);
    std::printf("n=%u q=%u k=%u rates=(%s,%s) option=%d: DFR = %s (log2 = %.4f)\n", n, q, k,
                rate_str(rates.r_v).c_str(), rate_str(rates.r_u).c_str(), option,
                prob_repr(dfr).c_str(), l);
    return 0;
}

int cmd_keygen(const Preset& pre, const Seed& seed, const std::string& out_path) {
    KeyPair kp = keygen(seed, pre.params);
    std::vector<uint8_t> pk_bytes = kp.pk.bytes();
    // the stored key is self-describing: a JSON header carries everything
    // needed to interpret the key material
    json doc{{"header",
              json{{"scheme", "rlkem"},
                   {"version", kToolVersion},
                   {"n", pre.params.n},
                   {"q", pre.params.q},
                   {"k", pre.params.k},
                   {"r_v", rate_str(pre.rates.r_v)},
                   {"r_u", rate_str(pre.rates.r_u)},
                   {"ecc", pre.scheme.describe()}}},
             {"public_key", hex(pk_bytes)},
             {"secret_key",
              json{{"s_hat", hex(bits_to_bytes([&] {
                        std::vector<uint8_t> bits;
                        for (uint32_t c : kp.sk.s_hat.coeffs)
                            for (uint32_t b = 0; b < pre.params.coeff_bits(); ++b)
                                bits.push_back((c >> b) & 1);
                        return bits;
                    }()))},
                   {"z", hex({kp.sk.z.begin(), kp.sk.z.end()})}}}};
    OutFile out(out_path);
    out.os << doc.dump(2) << "\n";
    return 0;
}

int cmd_roundtrip(const Preset& pre, const Seed& seed, uint64_t trials, bool predict,
                  unsigned prec) {
    Xof rng(Xof::Kind::Shake256, std::vector<uint8_t>(seed.begin(), seed.end()));
    uint64_t failures = 0;
    for (uint64_t t = 0; t < trials; ++t) {
        Seed ks, es;
        rng.read(ks.data(), ks.size());
        rng.read(es.data(), es.size());
        KeyPair kp = keygen(ks, pre.params);
        Encapsulation enc = kem_encapsulate(kp.pk, es, pre.params, pre.rates, pre.scheme);
        auto key = kem_decapsulate(kp.sk, kp.pk, enc.ct, pre.params, pre.rates, pre.scheme);
        if (key != enc.key) ++failures;
    }
    std::printf("%" PRIu64 " roundtrips, %" PRIu64 " failures (rate %.6g)\n", trials, failures,
                trials ? double(failures) / double(trials) : 0.0);
    if (predict) {
        NoiseAnalyzer an(prec);
        BigProb dfr = an.scheme_dfr(pre.params, pre.rates, pre.scheme);
        double p = dfr.to_double();
        std::printf("analyzer block-failure prediction: %s\n", prob_repr(dfr).c_str());
        if (p > 0 && p < 1) {
            double z = (double(failures) - double(trials) * p) /
                       std::sqrt(double(trials) * p * (1 - p));
            std::printf("z-score vs prediction: %+.3f\n", z);
        }
    }
    return 0;
}

int cmd_montecarlo(const Preset& pre, const Seed& seed, uint64_t coeffs, unsigned prec,
                   const std::string& out_path) {
    NoiseAnalyzer an(prec);
    const Pmf& predicted = an.total_noise(pre.params, pre.rates);
    Xof rng(Xof::Kind::Shake256, std::vector<uint8_t>(seed.begin(), seed.end()));
    std::vector<uint64_t> hist(pre.params.q, 0);
    uint64_t have = 0;
    while (have < coeffs) {
        Seed ks, es;
        rng.read(ks.data(), ks.size());
        rng.read(es.data(), es.size());
        KeyPair kp = keygen(ks, pre.params);
        std::vector<uint8_t> bits(pre.scheme.msg_bits());
        for (auto& b : bits) b = rng.read_bits(1);
        Ciphertext ct = encrypt(kp.pk, bits, es, pre.params, pre.rates, pre.scheme);
        ModPoly v = ecc_encode(pre.scheme, bits, pre.params);
        for (int32_t tap : noise_tap(kp.sk, ct, v, pre.params, pre.rates)) {
            ++hist[((tap % (int32_t)pre.params.q) + pre.params.q) % pre.params.q];
            ++have;
        }
    }
    OutFile out(out_path);
    write_csv_provenance(
        out.os, provenance("montecarlo",
                           json{{"n", pre.params.n}, {"q", pre.params.q},
                                {"k", pre.params.k}, {"r_v", rate_value(pre.rates.r_v)},
                                {"r_u", rate_value(pre.rates.r_u)}, {"coefficients", have},
                                {"seed", hex({seed.begin(), seed.end()})}},
                           prec));
    out.os << "value,empirical,predicted,z_score\n";
    char buf[128];
    uint32_t q = pre.params.q;
    for (int64_t value = -(int64_t)(q / 2); value <= (int64_t)(q / 2); ++value) {
        uint32_t idx = uint32_t(((value % (int64_t)q) + q) % (int64_t)q);
        double p = predicted.at(idx).to_double();
        double emp = double(hist[idx]) / double(have);
        double z = 0;
        if (p > 0 && p < 1)
            z = (double(hist[idx]) - double(have) * p) / std::sqrt(double(have) * p * (1 - p));
        else if (hist[idx] > 0)
            z = INFINITY;
        std::snprintf(buf, sizeof buf, "%" PRId64 ",%.10g,%.10g,%.4f\n", value, emp, p, z);
        out.os << buf;
    }
    return 0;
}

int cmd_renyi(double a, const std::string& krange, unsigned prec, const std::string& out_path) {
    uint32_t klo, khi;
    if (auto dots = krange.find(".."); dots != std::string::npos) {
        klo = std::stoul(krange.substr(0, dots));
        khi = std::stoul(krange.substr(dots + 2));
    } else {
        klo = khi = std::stoul(krange);
    }
    if (a <= 1.0) {
        std::fprintf(stderr, "renyi: --a must be > 1\n");
        return 2;
    }
    OutFile out(out_path);
    write_csv_provenance(out.os, provenance("renyi", json{{"a", a}, {"k", krange}}, prec));
    out.os << "k,renyi_divergence\n";
    char buf[64];
    for (uint32_t k = klo; k <= khi; ++k) {
        std::snprintf(buf, sizeof buf, "%u,%.15g\n", k, renyi_divergence(k, a, prec).to_double());
        out.os << buf;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parameterized Ring-LWE KEM laboratory"};
    app.require_subcommand(1);
    unsigned prec = default_precision();
    app.add_option("--prec", prec, "working precision in bits (env RLKEM_PREC)");

    std::string out_path, preset_name = "newhope1024",
                seed_hex(64, '0'), krange = "2..16";
    uint32_t n = 1024, q = 12289, k = 8, rv = 8, ru = 0;
    int table_id = 2, option = 0;
    uint64_t trials = 1, coeffs = 1000000;
    double a = 9.0;
    bool predict = false;

    CLI::App* analyze = app.add_subcommand("analyze", "probability analysis and paper tables");
    CLI::App* tbl = analyze->add_subcommand("table", "reproduce a paper table as JSON");
    tbl->add_option("--id", table_id, "table id (2-5)")->required()->check(CLI::Range(2, 5));
    tbl->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* noise = analyze->add_subcommand("noise", "total-noise PMF as CSV");
    noise->add_option("--n", n);
    noise->add_option("--q", q);
    noise->add_option("--k", k)->required();
    noise->add_option("--rv", rv, "v compression rate, 0 = full")->required();
    noise->add_option("--ru", ru, "u compression rate, 0 = full");
    noise->add_option("--out", out_path);

    CLI::App* dfr = analyze->add_subcommand("dfr", "certified log2 DFR for one configuration");
    dfr->add_option("--n", n);
    dfr->add_option("--q", q);
    dfr->add_option("--k", k);
    dfr->add_option("--rv", rv, "v compression rate, 0 = full");
    dfr->add_option("--ru", ru, "u compression rate, 0 = full");
    dfr->add_option("--option", option, "ECC option (0 = plain ATE)")->check(CLI::Range(0, 4));

    CLI::App* kem = app.add_subcommand("kem", "key encapsulation operations");
    CLI::App* keygen_cmd = kem->add_subcommand("keygen", "deterministic keypair as JSON");
    keygen_cmd->add_option("--seed", seed_hex, "32-byte hex seed");
    keygen_cmd->add_option("--preset", preset_name, "parameter preset");
    keygen_cmd->add_option("--out", out_path);

    CLI::App* rt = kem->add_subcommand("roundtrip", "encapsulate/decapsulate trials");
    rt->add_option("--trials", trials)->required();
    rt->add_option("--preset", preset_name);
    rt->add_option("--seed", seed_hex);
    rt->add_flag("--predict", predict, "also print the analyzer's failure prediction");

    CLI::App* mc = app.add_subcommand("montecarlo", "noise histogram vs analyzer prediction");
    mc->add_option("--preset", preset_name);
    mc->add_option("--coeffs", coeffs, "number of noise coefficients to sample");
    mc->add_option("--seed", seed_hex);
    mc->add_option("--out", out_path);

    CLI::App* renyi = app.add_subcommand("renyi", "Renyi divergence of psi_k vs xi_k");
    renyi->add_option("--a", a, "order (> 1)");
    renyi->add_option("--k", krange, "k or k range lo..hi");
    renyi->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (tbl->parsed()) return cmd_table(table_id, prec, out_path);
        if (noise->parsed()) return cmd_noise(n, q, k, rv, ru, prec, out_path);
        if (dfr->parsed()) return cmd_dfr(n, q, k, rv, ru, option, prec);
        Preset pre = preset_by_name(preset_name);
        Seed seed = parse_seed(seed_hex);
        if (keygen_cmd->parsed()) return cmd_keygen(pre, seed, out_path);
        if (rt->parsed()) return cmd_roundtrip(pre, seed, trials, predict, prec);
        if (mc->parsed()) return cmd_montecarlo(pre, seed, coeffs, prec, out_path);
        if (renyi->parsed()) return cmd_renyi(a, krange, prec, out_path);
        std::fprintf(stderr, "no subcommand\n");
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const PrecisionError& e) {
        std::fprintf(stderr, "precision failure: %s\n", e.what());
        return 3;
    } catch (const ParameterError& e) {
        std::fprintf(stderr, "invalid parameters: %s\n", e.what());
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return 4;
    }
}
