"""Limiting demerit formulae and the counting / character-sum checks behind them.

Everything is expressed through the kernel

    Omega(x, y) = sum over integers n of max(0, 1 - |n x - y|)**2

evaluated at ``x = 1/Lambda``.  ``Lambda`` is the limiting fractional length,
``Delta`` the fractional difference of shifts and ``Sigma`` the fractional sum
of shifts.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .chars import MultiplicativeCharacter, gauss_sum_table
from .errors import BadArgs, BadCase, FieldTooLarge, NonPositive, NotCoprime, ZeroX
from .gf import DecimationKind, FiniteField

H_BRUTE_MAX_Q = 64


def omega(x: float, y: float) -> float:
    """``sum_n max(0, 1 - |n x - y|)**2``."""
    if x == 0:
        raise ZeroX("Omega needs x != 0")
    ax = abs(float(x))
    y = float(y)
    # Omega(x, y) = Omega(-x, y) (substitute n -> -n); pad the index range by one
    lo = math.floor((y - 1) / ax) - 1
    hi = math.ceil((y + 1) / ax) + 1
    terms = [max(0.0, 1.0 - abs(n * ax - y)) ** 2 for n in range(lo, hi + 1)]
    return math.fsum(terms)


def phi_closed(x: float) -> float:
    """``Omega(1/x, 0)`` in closed form (piecewise on integer bands)."""
    if x <= 0:
        raise NonPositive("x must be positive")
    m = math.floor(x)
    return 2 * m + 1 - 2 * m * (m + 1) / x + m * (m + 1) * (2 * m + 1) / (3 * x * x)


def phi_prime(x: float) -> float:
    if x <= 0:
        raise NonPositive("x must be positive")
    m = math.floor(x)
    return 2 * m * (m + 1) / x**2 - 2 * m * (m + 1) * (2 * m + 1) / (3 * x**3)


def psi_closed(x: float) -> float:
    """``Omega(1/x, 1/(2x))`` in closed form (piecewise on half-integer bands)."""
    if x <= 0:
        raise NonPositive("x must be positive")
    if x <= 0.5:
        return 0.0
    m = math.floor(x + 0.5)
    return 2 * m - 2 * m * m / x + m * (4 * m * m - 1) / (6 * x * x)


def psi_prime(x: float) -> float:
    if x <= 0:
        raise NonPositive("x must be positive")
    if x <= 0.5:
        return 0.0
    m = math.floor(x + 0.5)
    return 2 * m * m / x**2 - m * (4 * m * m - 1) / (3 * x**3)


class Family(enum.Enum):
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"


class Subcase(enum.Enum):
    SAME = "same"  # d a power of p, or phi == chi (nonquadratic)
    REVERSING = "reversing"  # -d a power of p, or phi == conj(chi)
    UNRELATED = "unrelated"
    QUADRATIC = "quadratic"  # phi == chi quadratic


@dataclass(frozen=True)
class AsymptoticCase:
    family: Family
    subcase: Subcase
    lam: float
    delta: float = 0.0
    sigma: float = 0.0
    p: int = 2

    def __post_init__(self):
        if not self.lam > 0:
            raise NonPositive("Lambda must be positive")
        if self.subcase is Subcase.QUADRATIC and self.family is not Family.MULTIPLICATIVE:
            raise BadCase("the quadratic subcase exists only for multiplicative characters")

    @property
    def sigma_prime(self) -> float:
        """Sigma, moved by 1/2 for additive sequences in odd characteristic."""
        if self.family is Family.ADDITIVE and self.p % 2 == 1:
            return self.sigma + 0.5
        return self.sigma


def _acdf(case: AsymptoticCase, sigma: float) -> float:
    lam = case.lam
    x = 1.0 / lam
    base = omega(x, 0.0)
    if case.subcase is Subcase.UNRELATED:
        return base
    if case.subcase is Subcase.SAME:
        return -2 / 3 * lam + base + omega(x, case.delta / lam)
    if case.subcase is Subcase.REVERSING:
        return -2 / 3 * lam + base + omega(x, 1 + sigma / lam)
    return -4 / 3 * lam + base + omega(x, case.delta / lam) + omega(x, 1 + sigma / lam)


def acdf_additive(case: AsymptoticCase) -> float:
    """Limiting CDF of additive character sequence pairs ``alpha`` vs ``alpha**d``."""
    if case.family is not Family.ADDITIVE:
        raise BadCase("expected an additive case")
    return _acdf(case, case.sigma_prime)


def acdf_multiplicative(case: AsymptoticCase) -> float:
    """Limiting CDF of multiplicative character sequence pairs ``phi`` vs ``chi``."""
    if case.family is not Family.MULTIPLICATIVE:
        raise BadCase("expected a multiplicative case")
    return _acdf(case, case.sigma)


def acdf(case: AsymptoticCase) -> float:
    if case.family is Family.ADDITIVE:
        return acdf_additive(case)
    return acdf_multiplicative(case)


def reversing_limit_curve(sigma: float, p: int = 2) -> float:
    """Limiting CDF of natural-length reversing m-sequence pairs as a function of Sigma."""
    s = sigma + (0.5 if p % 2 else 0.0)
    fr = s - math.floor(s)
    return 1 / 3 + fr**2 + (fr - 1) ** 2


# quadruple counts


class QuadKind(enum.Enum):
    A = "A"  # t + u = v + w
    B = "B"  # ... and v - t = a (mod m)
    C = "C"  # ... and w - t = a (mod m)
    D = "D"  # ... and t + u = a (mod m)


def count_quadruples(kind: QuadKind | str, length: int, m: int = 1, a: int = 0) -> int:
    """Number of (t, u, v, w) in [0, length)**4 with t+u = v+w and the side condition."""
    kind = QuadKind(kind) if isinstance(kind, str) else kind
    if length < 1 or m < 1:
        raise BadArgs("length and m must be positive")
    n = length
    if kind is QuadKind.A:
        return (2 * n**3 + n) // 3
    if kind in (QuadKind.B, QuadKind.C):
        value = n * n * omega(m / n, a / n)
    else:
        value = n * n * omega(m / n, 1 - (a + 1) / n)
    return int(round(value))


def count_quadruples_brute(kind: QuadKind | str, length: int, m: int = 1, a: int = 0) -> int:
    kind = QuadKind(kind) if isinstance(kind, str) else kind
    r = np.arange(length)
    t, u, v = np.meshgrid(r, r, r, indexing="ij")
    w = t + u - v
    ok = (w >= 0) & (w < length)
    if kind is QuadKind.B:
        ok &= (v - t - a) % m == 0
    elif kind is QuadKind.C:
        ok &= (w - t - a) % m == 0
    elif kind is QuadKind.D:
        ok &= (t + u - a) % m == 0
    return int(np.count_nonzero(ok))


# the four-Gauss-sum average


def _check_d(field: FiniteField, d: int) -> int:
    N = field.q - 1
    if math.gcd(int(d), N) != 1:
        raise NotCoprime(f"gcd({d}, {N}) != 1")
    return int(d) % N


def h_main_term(k: int, l: int, m: int, n: int, d: int, field: FiniteField) -> complex:
    """Main term of ``H`` for characters ``chi_k, chi_l, chi_m, chi_n`` (indices mod q-1)."""
    N = field.q - 1
    d = _check_d(field, d)
    k, l, m, n = (i % N for i in (k, l, m, n))
    if k == m and l == n:
        return 1 + 0j
    kind = field.classify_decimation(d).kind
    if kind is DecimationKind.TRIVIAL and k == (d * n) % N and m == (d * l) % N:
        return 1 + 0j
    if kind is DecimationKind.REVERSING and k == (d * l) % N and m == (d * n) % N:
        return MultiplicativeCharacter(field, k - m)(-field.one)
    return 0j


def _require_small(field: FiniteField) -> None:
    if field.q > H_BRUTE_MAX_Q:
        raise FieldTooLarge(f"q = {field.q} exceeds {H_BRUTE_MAX_Q}")


def h_brute(k: int, l: int, m: int, n: int, d: int, field: FiniteField) -> complex:
    """``(q-1)**-3 sum_xi G(kappa xi**d) G(lambda xi) conj(G(mu xi**d) G(nu xi))``."""
    _require_small(field)
    d = _check_d(field, d)
    N = field.q - 1
    G = gauss_sum_table(field)
    x = np.arange(N)
    terms = G[(k + d * x) % N] * G[(l + x) % N] * np.conj(G[(m + d * x) % N] * G[(n + x) % N])
    return complex(math.fsum(terms.real), math.fsum(terms.imag)) / N**3


def h_brute_all(field: FiniteField, d: int) -> np.ndarray:
    """``H`` for every index quadruple, as an array indexed ``[k, l, m, n]``."""
    _require_small(field)
    d = _check_d(field, d)
    N = field.q - 1
    G = gauss_sum_table(field)
    idx = np.arange(N)
    out = np.zeros((N, N, N, N), dtype=complex)
    for x in range(N):
        a = G[(idx + d * x) % N]  # kappa / mu factor
        b = G[(idx + x) % N]  # lambda / nu factor
        out += np.einsum("k,l,m,n->klmn", a, b, np.conj(a), np.conj(b))
    return out / N**3


def h_main_all(field: FiniteField, d: int) -> np.ndarray:
    """:func:`h_main_term` for every index quadruple."""
    N = field.q - 1
    d = _check_d(field, d)
    k, l, m, n = np.meshgrid(*(np.arange(N),) * 4, indexing="ij")
    same = (k == m) & (l == n)
    out = same.astype(complex)
    kind = field.classify_decimation(d).kind
    if kind is DecimationKind.TRIVIAL:
        out[~same & (k == (d * n) % N) & (m == (d * l) % N)] = 1
    elif kind is DecimationKind.REVERSING:
        hit = ~same & (k == (d * l) % N) & (m == (d * n) % N)
        minus_one = roots_of_minus_one(field)
        out[hit] = minus_one[(k - m)[hit] % N]
    return out


def roots_of_minus_one(field: FiniteField) -> np.ndarray:
    """``chi_j(-1)`` for every j: ``(-1)**j`` in odd characteristic, else 1."""
    N = field.q - 1
    if field.p == 2:
        return np.ones(N, dtype=complex)
    return np.where(np.arange(N) % 2 == 0, 1.0, -1.0).astype(complex)


def h_error_bound(field: FiniteField, d: int) -> float:
    """Bound on ``|H - main term|``: ``|d| q**1.5 / (q-1)**2`` with ``|d|`` replaced by 1
    when d or -d is a power of p; d is taken as its least-magnitude residue."""
    q = field.q
    r = _check_d(field, d)
    N = q - 1
    kind = field.classify_decimation(r).kind
    size = 1 if kind is not DecimationKind.OTHER else min(r, N - r)
    return size * q**1.5 / (q - 1) ** 2
