// Python bindings for the core operations: parameters, KEM primitives,
// compression codec, NTT, ECC, and the headline analyzer entry points.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "rlkem/analyzer.hpp"
#include "rlkem/kem.hpp"
#include "rlkem/ring.hpp"

namespace py = pybind11;
using namespace rlkem;

namespace {

Seed to_seed(py::bytes b) {
    std::string s = b;
    if (s.size() != 32) throw py::value_error("seed must be exactly 32 bytes");
    Seed out;
    std::copy(s.begin(), s.end(), out.begin());
    return out;
}

py::bytes to_bytes(const std::vector<uint8_t>& v) {
    return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Ring-LWE KEM laboratory core";

    py::class_<ParamSet>(m, "ParamSet")
        .def(py::init<uint32_t, uint32_t, uint32_t>(), py::arg("n"), py::arg("q"), py::arg("k"))
        .def_readonly("n", &ParamSet::n)
        .def_readonly("q", &ParamSet::q)
        .def_readonly("k", &ParamSet::k)
        .def("ntt_supported", &ParamSet::ntt_supported)
        .def("coeff_bits", &ParamSet::coeff_bits)
        .def("__repr__", [](const ParamSet& p) {
            return "ParamSet(n=" + std::to_string(p.n) + ", q=" + std::to_string(p.q) +
                   ", k=" + std::to_string(p.k) + ")";
        });
    m.def("newhope512_params", &newhope512_params);
    m.def("newhope1024_params", &newhope1024_params);

    py::class_<Rate>(m, "Rate")
        .def_static("full", &Rate::full)
        .def_static("of", &Rate::of, py::arg("r"))
        .def_readonly("r", &Rate::r)
        .def("is_full", &Rate::is_full);

    py::class_<CompressionRates>(m, "CompressionRates")
        .def(py::init([](Rate rv, Rate ru) { return CompressionRates{rv, ru}; }),
             py::arg("r_v"), py::arg("r_u"))
        .def_readonly("r_v", &CompressionRates::r_v)
        .def_readonly("r_u", &CompressionRates::r_u);

    py::class_<ModPoly>(m, "ModPoly")
        .def(py::init([](std::vector<uint32_t> coeffs, const ParamSet& p) {
                 ModPoly poly(p);
                 if (coeffs.size() != p.n) throw py::value_error("need exactly n coefficients");
                 poly.coeffs = std::move(coeffs);
                 return poly;
             }),
             py::arg("coeffs"), py::arg("params"))
        .def_readonly("coeffs", &ModPoly::coeffs);

    m.def("ntt_forward", &ntt_forward, py::arg("poly"));
    m.def("ntt_inverse", &ntt_inverse, py::arg("poly"));
    m.def("negacyclic_mul", &negacyclic_mul, py::arg("a"), py::arg("b"));
    m.def("compress", &compress, py::arg("poly"), py::arg("rate"));
    m.def("decompress", &decompress, py::arg("poly"), py::arg("rate"));

    py::class_<BchSpec>(m, "BchSpec")
        .def_readonly("cn", &BchSpec::cn)
        .def_readonly("ck", &BchSpec::ck)
        .def_readonly("ct", &BchSpec::ct)
        .def("encode",
             [](const BchSpec& s, const std::vector<uint8_t>& msg) { return bch_encode(s, msg); },
             py::arg("msg_bits"))
        .def("decode",
             [](const BchSpec& s, const std::vector<uint8_t>& rx)
                 -> std::optional<std::pair<std::vector<uint8_t>, uint32_t>> {
                 auto r = bch_decode(s, rx);
                 if (!r) return std::nullopt;
                 return std::make_pair(r->msg, r->corrected);
             },
             py::arg("received_bits"));
    m.def("build_bch", &build_bch, py::arg("m"), py::arg("t"), py::arg("shorten") = 0);

    py::class_<EccScheme>(m, "EccScheme")
        .def_static("ate_only", &EccScheme::ate_only, py::arg("m"), py::arg("msg_bits") = 256)
        .def("is_concat", &EccScheme::is_concat)
        .def("repetition", &EccScheme::repetition)
        .def("msg_bits", &EccScheme::msg_bits)
        .def("block_len", &EccScheme::block_len)
        .def("describe", &EccScheme::describe);
    m.def("scheme_for_option", &scheme_for_option, py::arg("option"), py::arg("params"));

    py::class_<PublicKey>(m, "PublicKey")
        .def("bytes", [](const PublicKey& pk) { return to_bytes(pk.bytes()); });
    py::class_<SecretKey>(m, "SecretKey");
    py::class_<KeyPair>(m, "KeyPair")
        .def_readonly("pk", &KeyPair::pk)
        .def_readonly("sk", &KeyPair::sk);
    py::class_<Ciphertext>(m, "Ciphertext")
        .def("bytes", [](const Ciphertext& ct) { return to_bytes(ct.bytes()); });

    m.def(
        "keygen",
        [](py::bytes seed, const ParamSet& p) { return keygen(to_seed(seed), p); },
        py::arg("seed"), py::arg("params"));
    m.def(
        "encrypt",
        [](const PublicKey& pk, const std::vector<uint8_t>& bits, py::bytes coin,
           const ParamSet& p, const CompressionRates& rates, const EccScheme& scheme) {
            return encrypt(pk, bits, to_seed(coin), p, rates, scheme);
        },
        py::arg("pk"), py::arg("secret_bits"), py::arg("coin"), py::arg("params"),
        py::arg("rates"), py::arg("scheme"));
    m.def("decrypt", &decrypt, py::arg("sk"), py::arg("ct"), py::arg("params"), py::arg("rates"),
          py::arg("scheme"));

    py::class_<Encapsulation>(m, "Encapsulation")
        .def_readonly("ct", &Encapsulation::ct)
        .def_property_readonly("key", [](const Encapsulation& e) {
            return py::bytes(reinterpret_cast<const char*>(e.key.data()), e.key.size());
        });
    m.def(
        "encapsulate",
        [](const PublicKey& pk, py::bytes entropy, const ParamSet& p,
           const CompressionRates& rates, const EccScheme& scheme) {
            return kem_encapsulate(pk, to_seed(entropy), p, rates, scheme);
        },
        py::arg("pk"), py::arg("entropy"), py::arg("params"), py::arg("rates"), py::arg("scheme"));
    m.def(
        "decapsulate",
        [](const SecretKey& sk, const PublicKey& pk, const Ciphertext& ct, const ParamSet& p,
           const CompressionRates& rates, const EccScheme& scheme) {
            auto key = kem_decapsulate(sk, pk, ct, p, rates, scheme);
            return py::bytes(reinterpret_cast<const char*>(key.data()), key.size());
        },
        py::arg("sk"), py::arg("pk"), py::arg("ct"), py::arg("params"), py::arg("rates"),
        py::arg("scheme"));

    m.def("ciphertext_size", &ciphertext_size, py::arg("params"), py::arg("rates"));

    // analyzer: expose log2-domain results (the raw probabilities underflow
    // doubles for the interesting parameter sets)
    py::class_<NoiseAnalyzer>(m, "NoiseAnalyzer")
        .def(py::init<unsigned>(), py::arg("prec") = BigProb::kDefaultPrec)
        .def("prec", &NoiseAnalyzer::prec)
        .def(
            "log2_crossover",
            [](NoiseAnalyzer& a, const ParamSet& p, const CompressionRates& r, uint32_t m) {
                return a.channel(p, r, m).p.log2();
            },
            py::arg("params"), py::arg("rates"), py::arg("m"))
        .def(
            "log2_dfr",
            [](NoiseAnalyzer& a, const ParamSet& p, const CompressionRates& r, int option) {
                return a.option_dfr(p, r, option).log2();
            },
            py::arg("params"), py::arg("rates"), py::arg("option") = 0)
        .def(
            "log2_scheme_dfr",
            [](NoiseAnalyzer& a, const ParamSet& p, const CompressionRates& r,
               const EccScheme& s) { return a.scheme_dfr(p, r, s).log2(); },
            py::arg("params"), py::arg("rates"), py::arg("scheme"))
        .def(
            "total_noise_pmf",
            [](NoiseAnalyzer& a, const ParamSet& p, const CompressionRates& r) {
                const Pmf& pmf = a.total_noise(p, r);
                std::vector<double> out(pmf.size());
                for (size_t i = 0; i < pmf.size(); ++i) out[i] = pmf.weight(i).to_double();
                return out;  // index = residue mod q
            },
            py::arg("params"), py::arg("rates"));
    m.def(
        "renyi_divergence",
        [](uint32_t k, double a, unsigned prec) { return renyi_divergence(k, a, prec).to_double(); },
        py::arg("k"), py::arg("a") = 9.0, py::arg("prec") = BigProb::kDefaultPrec);
}
