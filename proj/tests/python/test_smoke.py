import rlkem


def test_kem_roundtrip_newhope1024():
    p = rlkem.newhope1024_params()
    rates = rlkem.CompressionRates(rlkem.Rate.of(8), rlkem.Rate.full())
    scheme = rlkem.scheme_for_option(0, p)
    kp = rlkem.keygen(b"\x00" * 32, p)
    enc = rlkem.encapsulate(kp.pk, b"\x01" * 32, p, rates, scheme)
    key = rlkem.decapsulate(kp.sk, kp.pk, enc.ct, p, rates, scheme)
    assert key == enc.key
    assert len(key) == 32
    assert len(enc.ct.bytes()) == rlkem.ciphertext_size(p, rates) == 2176


def test_keygen_deterministic():
    p = rlkem.newhope512_params()
    a = rlkem.keygen(b"\x07" * 32, p)
    b = rlkem.keygen(b"\x07" * 32, p)
    assert a.pk.bytes() == b.pk.bytes()


def test_ntt_roundtrip_and_mul():
    p = rlkem.ParamSet(16, 257, 2)
    a = rlkem.ModPoly(list(range(16)), p)
    assert rlkem.ntt_inverse(rlkem.ntt_forward(a)).coeffs == a.coeffs
    b = rlkem.ModPoly([1] + [0] * 15, p)
    assert rlkem.negacyclic_mul(a, b).coeffs == a.coeffs


def test_compress_roundtrip_full_rate():
    p = rlkem.ParamSet(16, 257, 2)
    a = rlkem.ModPoly(list(range(16)), p)
    h = rlkem.compress(a, rlkem.Rate.full())
    assert rlkem.decompress(h, rlkem.Rate.full()).coeffs == a.coeffs


def test_bch_corrects_errors():
    spec = rlkem.build_bch(4, 2, 0)  # BCH(15, 7, 2)
    assert (spec.cn, spec.ck, spec.ct) == (15, 7, 2)
    msg = [i % 2 for i in range(spec.ck)]
    cw = spec.encode(msg)
    cw[0] ^= 1
    cw[9] ^= 1
    decoded = spec.decode(cw)
    assert decoded is not None
    out, corrected = decoded
    assert out == msg
    assert corrected == 2


def test_analyzer_toy_dfr():
    an = rlkem.NoiseAnalyzer(512)
    p = rlkem.ParamSet(16, 577, 1)
    rates = rlkem.CompressionRates(rlkem.Rate.of(2), rlkem.Rate.full())
    log2_p = an.log2_crossover(p, rates, 1)
    assert abs(2.0 ** log2_p - 8.213e-3) < 2e-5


def test_renyi():
    assert abs(rlkem.renyi_divergence(16, 9.0) - 1.0) < 1e-3
    assert rlkem.renyi_divergence(2, 9.0) > rlkem.renyi_divergence(16, 9.0) > 1.0
