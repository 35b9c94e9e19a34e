"""Additive and multiplicative characters of finite fields, and Gauss sums.

Multiplicative characters are indexed against the field's fixed generator:
``chi_j(g**k) = exp(2*pi*i*j*k/(q-1))`` and ``chi_j(0) = 0``.  On a prime
field the generator is the least primitive root, so ``mult_char(p, j)`` is
reproducible across runs and machines.

Roots of unity come from :func:`roots_of_unity`, which returns exact values at
the quarter points; binary and quadratic-character sequences therefore have
terms that are exactly +1 or -1 rather than ``-1 + 1.2e-16j``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BadArgs
from .gf import FieldElement, FiniteField, prime_field


@lru_cache(maxsize=None)
def roots_of_unity(m: int) -> np.ndarray:
    """``exp(2*pi*i*k/m)`` for k = 0 .. m-1, exact where the value is +-1 or +-i."""
    k = np.arange(m)
    w = np.exp(2j * np.pi * k / m)
    exact = {0: 1.0, 1: 1.0j, 2: -1.0, 3: -1.0j}
    for r in range(4):
        if (r * m) % 4 == 0:
            w[(r * m) // 4] = exact[r]
    w.setflags(write=False)
    return w


@dataclass(frozen=True)
class AdditiveCharacter:
    """The character ``x -> eps(a*x)`` with eps the canonical additive character."""

    field: FiniteField
    a: FieldElement

    def __post_init__(self):
        object.__setattr__(self, "a", self.field(self.a))

    @property
    def is_trivial(self) -> bool:
        return not self.a

    def __call__(self, x) -> complex:
        x = self.field(x)
        return complex(roots_of_unity(self.field.p)[self.field.trace(self.a * x)])


@dataclass(frozen=True)
class MultiplicativeCharacter:
    """``chi_j`` on the multiplicative group of ``field``, extended by ``chi(0) = 0``."""

    field: FiniteField
    j: int

    def __post_init__(self):
        object.__setattr__(self, "j", int(self.j) % (self.field.q - 1))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def order(self) -> int:
        N = self.field.q - 1
        return N // math.gcd(self.j, N)

    @property
    def is_trivial(self) -> bool:
        return self.j == 0

    @property
    def is_quadratic(self) -> bool:
        return self.order == 2

    def conj(self) -> MultiplicativeCharacter:
        return MultiplicativeCharacter(self.field, -self.j)

    def __mul__(self, other: MultiplicativeCharacter) -> MultiplicativeCharacter:
        if other.field != self.field:
            raise BadArgs("characters of different fields")
        return MultiplicativeCharacter(self.field, self.j + other.j)

    def __pow__(self, e: int) -> MultiplicativeCharacter:
        return MultiplicativeCharacter(self.field, self.j * int(e))

    def __call__(self, x) -> complex:
        field = self.field
        x = field(x)
        if not x:
            return 0j
        N = field.q - 1
        return complex(roots_of_unity(N)[(self.j * field.log(x)) % N])

    def table(self) -> np.ndarray:
        """Values at every element, indexed by element code (``table[0] == 0``)."""
        field = self.field
        N = field.q - 1
        out = np.zeros(field.q, dtype=complex)
        logs = field.log_table[1:]
        out[1:] = roots_of_unity(N)[(self.j * logs) % N]
        return out


def mult_char(p: int, j: int) -> MultiplicativeCharacter:
    """Character ``chi_j`` of the prime field GF(p)."""
    return MultiplicativeCharacter(prime_field(p), j)


def quadratic_char(p: int) -> MultiplicativeCharacter:
    """The Legendre symbol mod an odd prime p."""
    if p == 2:
        raise BadArgs("GF(2) has no quadratic character")
    return mult_char(p, (p - 1) // 2)


def additive_char(spec: AdditiveCharacter, x) -> complex:
    return spec(x)


def mult_char_eval(spec: MultiplicativeCharacter, x) -> complex:
    if isinstance(x, (int, np.integer)) and spec.field.n == 1:
        x = int(x) % spec.field.p
    return spec(x)


_GAUSS_CACHE: dict[tuple, complex] = {}
_GAUSS_LOCK = threading.Lock()


def gauss_sum(chi: MultiplicativeCharacter, a=1) -> complex:
    """``G_a(chi) = sum over x != 0 of eps(a*x) * chi(x)``, by direct summation.

    Results are memoised per (field, character, a); the cache is filled under
    a lock so concurrent callers see a single computed value.
    """
    field = chi.field
    a = field(a)
    key = (field, chi.j, a.code)
    value = _GAUSS_CACHE.get(key)
    if value is not None:
        return value
    with _GAUSS_LOCK:
        value = _GAUSS_CACHE.get(key)
        if value is None:
            value = _gauss_sum_direct(chi, a)
            _GAUSS_CACHE[key] = value
    return value


def _gauss_sum_direct(chi: MultiplicativeCharacter, a: FieldElement) -> complex:
    field = chi.field
    N = field.q - 1
    k = np.arange(N)
    chi_vals = roots_of_unity(N)[(chi.j * k) % N]
    if not a:
        eps_vals = np.ones(N)
    else:
        tr = field.trace_by_exponent[(field.log(a) + k) % N]
        eps_vals = roots_of_unity(field.p)[tr]
    terms = eps_vals * chi_vals
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


@lru_cache(maxsize=64)
def gauss_sum_table(field: FiniteField) -> np.ndarray:
    """``G(chi_j)`` (with ``a = 1``) for every j in [0, q-1), as a read-only array."""
    N = field.q - 1
    out = np.array([gauss_sum(MultiplicativeCharacter(field, j), 1) for j in range(N)])
    out.setflags(write=False)
    return out


def parse_char_spec(text: str, field: FiniteField | None = None):
    """Parse ``mult:p=<p>,j=<j>`` or ``add:a=<exponent of alpha>``.

    The additive form needs ``field`` and yields the character
    ``x -> eps(alpha**e * x)`` with alpha the field generator.
    """
    kind, sep, rest = text.strip().partition(":")
    if not sep:
        raise BadArgs(f"malformed character spec {text!r}")
    params = {}
    for item in rest.split(","):
        key, eq, value = item.partition("=")
        if not eq:
            raise BadArgs(f"malformed character spec {text!r}")
        try:
            params[key.strip()] = int(value)
        except ValueError as exc:
            raise BadArgs(f"malformed character spec {text!r}") from exc
    if kind == "mult":
        if set(params) != {"p", "j"}:
            raise BadArgs(f"mult spec needs p and j: {text!r}")
        return mult_char(params["p"], params["j"])
    if kind == "add":
        if set(params) != {"a"}:
            raise BadArgs(f"add spec needs a: {text!r}")
        if field is None:
            raise BadArgs("additive character spec needs a field")
        return AdditiveCharacter(field, field.exp(params["a"]))
    raise BadArgs(f"unknown character kind {kind!r}")
