"""Character sequences over finite fields and their correlation (demerit) factors."""

__version__ = "0.1.0"

from .errors import CharSeqError
from .gf import FiniteField, FieldElement, builtin_field, make_field, prime_field
from .chars import AdditiveCharacter, MultiplicativeCharacter, gauss_sum, mult_char, quadratic_char
from .seqgen import (
    ComplexSequence,
    SequenceSpec,
    additive_sequence,
    cyclic_shift,
    decimate_cyclic,
    m_sequence,
    mult_sequence,
    random_binary,
    unimodularize,
)
from .corr import crosscorrelate, cross_demerit, demerit_factor, metrics
from .asym import AsymptoticCase, acdf, acdf_additive, acdf_multiplicative, omega
from .optim import LAMBDA_APP, LAMBDA_TRUNC, minimize_acdf

__all__ = [
    "CharSeqError",
    "FiniteField",
    "FieldElement",
    "builtin_field",
    "make_field",
    "prime_field",
    "AdditiveCharacter",
    "MultiplicativeCharacter",
    "gauss_sum",
    "mult_char",
    "quadratic_char",
    "ComplexSequence",
    "SequenceSpec",
    "additive_sequence",
    "cyclic_shift",
    "decimate_cyclic",
    "m_sequence",
    "mult_sequence",
    "random_binary",
    "unimodularize",
    "crosscorrelate",
    "cross_demerit",
    "demerit_factor",
    "metrics",
    "AsymptoticCase",
    "acdf",
    "acdf_additive",
    "acdf_multiplicative",
    "omega",
    "LAMBDA_APP",
    "LAMBDA_TRUNC",
    "minimize_acdf",
]
