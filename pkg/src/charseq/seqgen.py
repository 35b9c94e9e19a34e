"""Sequence families built from finite-field characters.

Term ``t`` of an additive character sequence is ``eps(alpha**(shift + t))``;
term ``t`` of a multiplicative character sequence is ``chi(shift + t)``.
Truncation and appending are nothing more than choosing ``length`` below or
above the natural period, with indices read periodically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field as dc_field
from typing import Any

import numpy as np

from .chars import MultiplicativeCharacter, roots_of_unity
from .errors import BadArgs, NonUnitReplacement, NotCoprime, NotPrimitive, TrivialCharacter
from .gf import FieldElement, FiniteField

UNIT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ComplexSequence:
    """A finite sequence of complex terms, each of magnitude 1 or 0."""

    terms: np.ndarray
    meta: dict[str, Any] = dc_field(default_factory=dict)

    def __post_init__(self):
        terms = np.array(self.terms, dtype=complex).ravel()
        if terms.size < 1:
            raise BadArgs("a sequence needs at least one term")
        terms.setflags(write=False)
        object.__setattr__(self, "terms", terms)

    def __len__(self) -> int:
        return self.terms.size

    def __getitem__(self, i):
        return self.terms[i]

    def __iter__(self):
        return iter(self.terms)

    def __array__(self, dtype=None, copy=None):
        return self.terms if dtype is None else self.terms.astype(dtype)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexSequence):
            return NotImplemented
        return np.array_equal(self.terms, other.terms)

    def __repr__(self) -> str:
        return f"ComplexSequence(len={len(self)}, meta={self.meta})"

    @property
    def energy(self) -> float:
        """``C_{f,f}(0)``: the sum of squared magnitudes."""
        return math.fsum(np.abs(self.terms) ** 2)

    def is_unimodular(self) -> bool:
        return bool(np.all(np.abs(np.abs(self.terms) - 1.0) < UNIT_TOL))


def _as_exponent(field: FiniteField, alpha) -> int:
    if isinstance(alpha, FieldElement):
        e = field.log(alpha)
    else:
        raise BadArgs("alpha must be a FieldElement")
    if math.gcd(e, field.q - 1) != 1:
        raise NotPrimitive(f"{alpha} is not primitive in GF({field.q})")
    return e


def additive_sequence(field: FiniteField, alpha: FieldElement, shift: int, length: int) -> ComplexSequence:
    """``(eps(alpha**shift), ..., eps(alpha**(shift + length - 1)))``."""
    if length < 1:
        raise BadArgs("length must be positive")
    e = _as_exponent(field, alpha)
    N = field.q - 1
    t = np.arange(length, dtype=np.int64)
    exps = (e * ((int(shift) + t) % N)) % N
    terms = roots_of_unity(field.p)[field.trace_by_exponent[exps]]
    meta = {
        "family": "additive",
        "field": field.spec(),
        "alpha_log": e,
        "shift": int(shift),
        "length": int(length),
    }
    return ComplexSequence(terms, meta)


def m_sequence(field: FiniteField, alpha: FieldElement, shift: int = 0) -> ComplexSequence:
    """The p-ary m-sequence for ``alpha`` with the given shift (length q - 1)."""
    return additive_sequence(field, alpha, shift, field.q - 1)


def mult_sequence(chi: MultiplicativeCharacter, shift: int, length: int) -> ComplexSequence:
    """``(chi(shift), chi(shift + 1), ..., chi(shift + length - 1))`` on a prime field."""
    if chi.is_trivial:
        raise TrivialCharacter("multiplicative character sequences need a nontrivial character")
    if chi.field.n != 1:
        raise BadArgs("multiplicative character sequences live on prime fields")
    if length < 1:
        raise BadArgs("length must be positive")
    p = chi.field.p
    table = chi.table()  # prime field: code == residue
    idx = (int(shift) + np.arange(length, dtype=np.int64)) % p
    meta = {"family": "multiplicative", "p": p, "j": chi.j, "shift": int(shift), "length": int(length)}
    return ComplexSequence(table[idx], meta)


def unimodularize(seq: ComplexSequence, replacement: complex = 1) -> ComplexSequence:
    """Replace zero terms by ``replacement``, which must have magnitude 1."""
    replacement = complex(replacement)
    if abs(abs(replacement) - 1.0) > UNIT_TOL:
        raise NonUnitReplacement(f"|{replacement}| != 1")
    terms = seq.terms.copy()
    terms[terms == 0] = replacement
    return ComplexSequence(terms, {**seq.meta, "unimodularized": True})


def decimate_cyclic(seq: ComplexSequence, d: int) -> ComplexSequence:
    """Every d-th term, read cyclically: ``out[t] = seq[d*t mod len]``."""
    n = len(seq)
    if math.gcd(int(d), n) != 1:
        raise NotCoprime(f"gcd({d}, {n}) != 1")
    idx = (int(d) * np.arange(n, dtype=np.int64)) % n
    return ComplexSequence(seq.terms[idx], {**seq.meta, "decimated_by": int(d)})


def cyclic_shift(seq: ComplexSequence, k: int) -> ComplexSequence:
    """Left cyclic shift by k places: ``out[t] = seq[(t + k) mod len]``."""
    return ComplexSequence(np.roll(seq.terms, -int(k)), dict(seq.meta))


def random_binary(length: int, seed: int | np.random.Generator | None = None) -> ComplexSequence:
    """I.i.d. uniform +-1 terms from a seeded generator."""
    rng = np.random.default_rng(seed)
    terms = rng.integers(0, 2, size=length) * 2 - 1
    return ComplexSequence(terms.astype(complex), {"family": "random"})


class Family(enum.Enum):
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"


@dataclass(frozen=True)
class SequenceSpec:
    """Everything needed to build one character sequence.

    For the additive family ``generator_power`` picks ``alpha = g**d`` with g
    the field generator; for the multiplicative family ``char`` is used.
    """

    family: Family
    shift: int
    length: int
    field: FiniteField | None = None
    generator_power: int = 1
    char: MultiplicativeCharacter | None = None

    def __post_init__(self):
        if self.length < 1:
            raise BadArgs("length must be positive")
        if self.family is Family.ADDITIVE and self.field is None:
            raise BadArgs("additive sequences need a field")
        if self.family is Family.MULTIPLICATIVE and self.char is None:
            raise BadArgs("multiplicative sequences need a character")

    @property
    def period(self) -> int:
        if self.family is Family.ADDITIVE:
            return self.field.q - 1
        return self.char.field.p

    @property
    def fractional_length(self) -> float:
        return self.length / self.period

    def build(self) -> ComplexSequence:
        if self.family is Family.ADDITIVE:
            alpha = self.field.generator ** self.generator_power
            return additive_sequence(self.field, alpha, self.shift, self.length)
        return mult_sequence(self.char, self.shift, self.length)
