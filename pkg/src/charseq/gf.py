"""Arithmetic in GF(p^n) with an explicit modulus polynomial.

Elements are dense coefficient vectors over Z_p in the polynomial basis
1, x, ..., x^(n-1), coefficients ascending.  Each element also carries an
integer *code* (the base-p number spelled by its coefficients), which is what
the discrete-log tables are indexed by.

Fields of order at most ``DLOG_LIMIT`` build exp/log tables against a fixed
primitive element ``field.generator`` at construction time.  That element is
the class of ``x`` when ``x`` is primitive (so "alpha, a root of the modulus"
means what it says), otherwise the primitive element with the smallest code;
for a prime field this is the smallest positive primitive root.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from .errors import (
    BadArgs,
    FieldTooLarge,
    NotCoprime,
    NotPrime,
    ReducibleModulus,
    ZeroElement,
)

DLOG_LIMIT = 1 << 20
ORDER_LIMIT = 1 << 40
MAX_DEGREE = 24
MAX_CHARACTERISTIC = 1 << 16


def _poly_mulmod(a: tuple[int, ...], b: tuple[int, ...], modulus: tuple[int, ...], p: int) -> list[int]:
    n = len(modulus) - 1
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    # modulus is monic: x^n = -(m_0 + ... + m_{n-1} x^{n-1})
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k] % p
        if c:
            base = k - n
            for i in range(n):
                prod[base + i] -= c * modulus[i]
        prod[k] = 0
    return [c % p for c in prod[:n]]


class FieldElement:
    """An element of a :class:`FiniteField`.

    Supports ``+ - * /`` and integer powers.  ``coeffs`` is the coordinate
    vector in the polynomial basis; ``int(x)`` gives the integer code.
    """

    __slots__ = ("field", "coeffs", "code")

    def __init__(self, field: FiniteField, coeffs):
        coeffs = tuple(int(c) % field.p for c in coeffs)
        if len(coeffs) != field.n:
            raise BadArgs(f"expected {field.n} coordinates, got {len(coeffs)}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)
        code = 0
        for c in reversed(coeffs):
            code = code * field.p + c
        object.__setattr__(self, "code", code)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __int__(self) -> int:
        return self.code

    def __index__(self) -> int:
        return self.code

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.code))

    def __repr__(self) -> str:
        return f"FieldElement({list(self.coeffs)}, q={self.field.q})"

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise BadArgs("elements belong to different fields")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(self.field, [(a + b) % p for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field._mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return self.field._pow(self, int(e))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def inverse(self) -> FieldElement:
        if not self:
            raise ZeroElement("zero has no inverse")
        return self ** (self.field.q - 2)


class FiniteField:
    """GF(p^n) realised as Z_p[x] / (modulus).

    Parameters
    ----------
    p : int
        The characteristic; must be prime.
    modulus : sequence of int
        Ascending coefficients ``c0, c1, ..., cn`` of a monic irreducible
        polynomial of degree ``n >= 1``.
    """

    def __init__(self, p: int, modulus):
        p = int(p)
        if p < 2 or not isprime(p):
            raise NotPrime(f"{p} is not prime")
        if p > MAX_CHARACTERISTIC:
            raise BadArgs(f"characteristic {p} exceeds {MAX_CHARACTERISTIC}")
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) < 2:
            raise BadArgs("modulus must have degree >= 1")
        if any(not 0 <= c < p for c in modulus):
            raise BadArgs(f"modulus coefficients must lie in [0, {p})")
        if modulus[-1] != 1:
            raise BadArgs("modulus must be monic")
        n = len(modulus) - 1
        if n > MAX_DEGREE:
            raise BadArgs(f"degree {n} exceeds {MAX_DEGREE}")
        if p**n > ORDER_LIMIT:
            raise FieldTooLarge(f"order {p}^{n} exceeds {ORDER_LIMIT}")
        if not gf_irreducible_p([ZZ(c) for c in reversed(modulus)], p, ZZ):
            raise ReducibleModulus(f"modulus {modulus} is reducible over Z_{p}")

        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = modulus
        self._exp = None
        self._log = None
        self._factors = tuple(sorted(factorint(self.q - 1))) if self.q > 2 else ()
        self.generator = self._find_generator()
        if self.q <= DLOG_LIMIT:
            self._build_tables()

    # -- construction helpers -------------------------------------------------

    def _find_generator(self) -> FieldElement:
        if self.n > 1:
            x = self.x
            if self.is_primitive(x):
                return x
        for code in range(1, self.q):
            e = self(code)
            if self.is_primitive(e):
                return e
        raise AssertionError("a finite field always has a primitive element")

    def _build_tables(self) -> None:
        N = self.q - 1
        exp = np.empty(N, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        g = self.generator
        cur = self.one
        for k in range(N):
            exp[k] = cur.code
            log[cur.code] = k
            cur = FieldElement(self, _poly_mulmod(cur.coeffs, g.coeffs, self.modulus, self.p))
        exp.setflags(write=False)
        log.setflags(write=False)
        self._exp = exp
        self._log = log

    # -- element construction -------------------------------------------------

    def __call__(self, value) -> FieldElement:
        """Build an element from an integer code or a coefficient sequence."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise BadArgs("element belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            v = int(value)
            if self.n == 1:
                return FieldElement(self, [v % self.p])
            if not 0 <= v < self.q:
                raise BadArgs(f"code {v} outside [0, {self.q})")
            coeffs = []
            for _ in range(self.n):
                v, c = divmod(v, self.p)
                coeffs.append(c)
            return FieldElement(self, coeffs)
        return FieldElement(self, value)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, [0] * self.n)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, [1] + [0] * (self.n - 1))

    @property
    def x(self) -> FieldElement:
        """The class of the indeterminate, a root of the modulus."""
        if self.n == 1:
            return FieldElement(self, [-self.modulus[0]])
        return FieldElement(self, [0, 1] + [0] * (self.n - 2))

    def elements(self):
        return [self(c) for c in range(self.q)]

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    # -- arithmetic -----------------------------------------------------------

    def _mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if self._log is not None:
            if not a or not b:
                return self.zero
            k = (self._log[a.code] + self._log[b.code]) % (self.q - 1)
            return self(int(self._exp[k]))
        return FieldElement(self, _poly_mulmod(a.coeffs, b.coeffs, self.modulus, self.p))

    def _pow(self, a: FieldElement, e: int) -> FieldElement:
        if not a:
            if e < 0:
                raise ZeroElement("zero has no inverse")
            return self.one if e == 0 else self.zero
        N = self.q - 1
        if self._log is not None:
            return self(int(self._exp[(int(self._log[a.code]) * e) % N]))
        e %= N
        result = self.one
        base = a
        while e:
            if e & 1:
                result = FieldElement(self, _poly_mulmod(result.coeffs, base.coeffs, self.modulus, self.p))
            base = FieldElement(self, _poly_mulmod(base.coeffs, base.coeffs, self.modulus, self.p))
            e >>= 1
        return result

    # -- discrete logs ----------------------------------------------------------

    def _require_tables(self) -> None:
        if self._exp is None:
            raise FieldTooLarge(f"no discrete-log table for q={self.q} > {DLOG_LIMIT}")

    def log(self, x) -> int:
        """Exponent k in [0, q-1) with generator**k == x."""
        self._require_tables()
        x = self(x)
        if not x:
            raise ZeroElement("log of zero")
        return int(self._log[x.code])

    def exp(self, k: int) -> FieldElement:
        self._require_tables()
        return self(int(self._exp[int(k) % (self.q - 1)]))

    @property
    def exp_table(self) -> np.ndarray:
        """Codes of generator**k for k = 0 .. q-2 (read-only)."""
        self._require_tables()
        return self._exp

    @property
    def log_table(self) -> np.ndarray:
        """Exponent of each code, -1 at code 0 (read-only)."""
        self._require_tables()
        return self._log

    # -- trace ------------------------------------------------------------------

    @cached_property
    def basis_traces(self) -> tuple[int, ...]:
        """Tr(x^i) for the basis monomials, computed by Frobenius powers."""
        out = []
        for i in range(self.n):
            mono = FieldElement(self, [0] * i + [1] + [0] * (self.n - i - 1))
            acc = self.zero
            cur = mono
            for _ in range(self.n):
                acc = acc + cur
                cur = cur**self.p
            # Tr lands in the prime subfield
            assert all(c == 0 for c in acc.coeffs[1:])
            out.append(acc.coeffs[0])
        return tuple(out)

    def trace(self, x) -> int:
        """Absolute trace Tr(x) = x + x^p + ... + x^(p^(n-1)), as a residue mod p."""
        x = self(x)
        return sum(c * t for c, t in zip(x.coeffs, self.basis_traces)) % self.p

    @cached_property
    def trace_by_exponent(self) -> np.ndarray:
        """Tr(generator**k) for k = 0 .. q-2, as int64 residues (read-only)."""
        self._require_tables()
        codes = self._exp.copy()
        tr = np.zeros(codes.shape, dtype=np.int64)
        for t in self.basis_traces:
            tr += (codes % self.p) * t
            codes //= self.p
        tr %= self.p
        tr.setflags(write=False)
        return tr

    # -- orders and primitivity -------------------------------------------------

    def order(self, x) -> int:
        x = self(x)
        if not x:
            raise ZeroElement("zero has no multiplicative order")
        N = self.q - 1
        order = N
        for r in self._factors:
            while order % r == 0 and self._pow(x, order // r) == self.one:
                order //= r
        return order

    def is_primitive(self, x) -> bool:
        """True iff the multiplicative order of x is q - 1."""
        x = self(x)
        if not x:
            raise ZeroElement("primitivity is undefined for zero")
        N = self.q - 1
        return all(self._pow(x, N // r) != self.one for r in self._factors)

    def primitive_representatives(self) -> list[FieldElement]:
        """One primitive element per Galois-conjugacy class.

        The representative of ``{a^(p^k)}`` is the member with the smallest
        discrete log; the list is sorted by that exponent and has length
        phi(q-1)/n.
        """
        self._require_tables()
        N = self.q - 1
        seen = set()
        reps = []
        for e in range(1, N + 1):
            e %= N
            if math.gcd(e, N) != 1 or e in seen:
                continue
            cls = {(e * pow(self.p, k, N)) % N for k in range(self.n)} if N > 1 else {0}
            seen |= cls
            reps.append(self.exp(min(cls)))
        return sorted(reps, key=self.log)

    def classify_decimation(self, d: int) -> DecimationClass:
        """Trivial if d = p^k, Reversing if d = -p^k (mod q-1), else Other.

        When both hold (only possible for q <= 4) Trivial wins.
        """
        N = self.q - 1
        d = int(d)
        if math.gcd(d, N) != 1:
            raise NotCoprime(f"gcd({d}, {N}) != 1")
        powers = {pow(self.p, k, N) if N > 1 else 0 for k in range(self.n)}
        r = d % N
        if r in powers:
            kind = DecimationKind.TRIVIAL
        elif (-r) % N in powers:
            kind = DecimationKind.REVERSING
        else:
            kind = DecimationKind.OTHER
        return DecimationClass(kind, d)

    # -- identity -----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, modulus={list(self.modulus)})"

    def spec(self) -> str:
        return format_field_spec(self)


class DecimationKind(enum.Enum):
    TRIVIAL = "trivial"
    REVERSING = "reversing"
    OTHER = "other"


@dataclass(frozen=True)
class DecimationClass:
    kind: DecimationKind
    d: int

    @property
    def is_trivial(self) -> bool:
        return self.kind is DecimationKind.TRIVIAL

    @property
    def is_reversing(self) -> bool:
        return self.kind is DecimationKind.REVERSING


# -- module-level API ------------------------------------------------------------

_FIELD_CACHE: dict[tuple[int, tuple[int, ...]], FiniteField] = {}


def make_field(p: int, modulus) -> FiniteField:
    """Construct (or fetch the cached) field Z_p[x]/(modulus)."""
    key = (int(p), tuple(int(c) for c in modulus))
    field = _FIELD_CACHE.get(key)
    if field is None:
        field = FiniteField(*key)
        _FIELD_CACHE.setdefault(key, field)
    return _FIELD_CACHE[key]


def prime_field(p: int) -> FiniteField:
    """GF(p) as Z_p[x]/(x); its generator is the least primitive root mod p."""
    return make_field(p, (0, 1))


def trace(field: FiniteField, x) -> int:
    return field.trace(x)


def is_primitive(field: FiniteField, x) -> bool:
    return field.is_primitive(x)


def primitive_representatives(field: FiniteField) -> list[FieldElement]:
    return field.primitive_representatives()


def classify_decimation(field: FiniteField, d: int) -> DecimationClass:
    return field.classify_decimation(d)


# Moduli used by the experiments.  The degree-8 choice is arbitrary: the
# length-255 histograms aggregate over every generator pair, so any
# primitive modulus gives the same multiset of demerit factors.
BUILTIN_MODULI: dict[str, tuple[int, tuple[int, ...]]] = {
    "F4": (2, (1, 1, 1)),
    "F8": (2, (1, 1, 0, 1)),
    "F9": (3, (2, 1, 1)),
    "F16": (2, (1, 1, 0, 0, 1)),
    "F32": (2, (1, 0, 1, 0, 0, 1)),
    "F64": (2, (1, 1, 0, 0, 0, 0, 1)),
    "F128": (2, (1, 1, 0, 0, 0, 0, 0, 1)),
    "F243": (3, (1, 2, 0, 0, 0, 1)),
    "F256": (2, (1, 0, 1, 1, 1, 0, 0, 0, 1)),
    "F256b": (2, (1, 1, 0, 1, 0, 1, 0, 0, 1)),
    "F512": (2, (1, 0, 0, 0, 1, 0, 0, 0, 0, 1)),
    "F729": (3, (2, 1, 0, 0, 0, 0, 1)),
    "F1024": (2, (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1)),
}


def builtin_field(name: str) -> FiniteField:
    try:
        p, modulus = BUILTIN_MODULI[name]
    except KeyError:
        raise BadArgs(f"unknown built-in field {name!r}; choose from {sorted(BUILTIN_MODULI)}") from None
    return make_field(p, modulus)


def parse_field_spec(text: str) -> FiniteField:
    """Parse ``p=<int>; modulus=<c0,c1,...,cn>`` (or a built-in name like ``F512``)."""
    text = text.strip()
    if text in BUILTIN_MODULI:
        return builtin_field(text)
    parts = {}
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        key, sep, value = chunk.partition("=")
        if not sep:
            raise BadArgs(f"malformed field spec {text!r}")
        parts[key.strip()] = value.strip()
    if set(parts) != {"p", "modulus"}:
        raise BadArgs(f"field spec needs exactly p and modulus: {text!r}")
    try:
        p = int(parts["p"])
        modulus = [int(c) for c in parts["modulus"].split(",")]
    except ValueError as exc:
        raise BadArgs(f"malformed field spec {text!r}") from exc
    return make_field(p, modulus)


def format_field_spec(field: FiniteField) -> str:
    return f"p={field.p}; modulus={','.join(str(c) for c in field.modulus)}"
