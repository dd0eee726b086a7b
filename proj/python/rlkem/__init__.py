"""Ring-LWE KEM laboratory: KEM primitives, compression codec, error
correction, and the exact decryption-failure-rate analyzer."""

from ._core import (
    BchSpec,
    Ciphertext,
    CompressionRates,
    EccScheme,
    Encapsulation,
    KeyPair,
    ModPoly,
    NoiseAnalyzer,
    ParamSet,
    PublicKey,
    Rate,
    SecretKey,
    build_bch,
    ciphertext_size,
    compress,
    decapsulate,
    decompress,
    decrypt,
    encapsulate,
    encrypt,
    keygen,
    negacyclic_mul,
    newhope512_params,
    newhope1024_params,
    ntt_forward,
    ntt_inverse,
    renyi_divergence,
    scheme_for_option,
)

__all__ = [
    "BchSpec",
    "Ciphertext",
    "CompressionRates",
    "EccScheme",
    "Encapsulation",
    "KeyPair",
    "ModPoly",
    "NoiseAnalyzer",
    "ParamSet",
    "PublicKey",
    "Rate",
    "SecretKey",
    "build_bch",
    "ciphertext_size",
    "compress",
    "decapsulate",
    "decompress",
    "decrypt",
    "encapsulate",
    "encrypt",
    "keygen",
    "negacyclic_mul",
    "newhope512_params",
    "newhope1024_params",
    "ntt_forward",
    "ntt_inverse",
    "renyi_divergence",
    "scheme_for_option",
]
