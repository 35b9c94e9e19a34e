"""Aperiodic correlation and (cross)demerit factors.

``C_{f,g}(s) = sum_j f_j * conj(g_{j+s})`` with terms outside ``[0, len)``
taken as zero.  The direct path is the reference; the FFT path and the batch
helpers exist because the figure scans need many thousands of evaluations,
and they are checked against the direct path in the test suite.

The batch helpers rest on Parseval: with both sequences zero-padded to
``N >= 2*len - 1`` the full correlation fits in one period of the cyclic
correlation, so ``sum_s |C(s)|**2 = (1/N) sum_k |F_k|**2 |G_k|**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, TooLong, ZeroEnergy
from .seqgen import ComplexSequence

PS_TOL = 1e-9
ORACLE_MAX_LEN = 64


def _terms(x) -> np.ndarray:
    if isinstance(x, ComplexSequence):
        return x.terms
    return np.asarray(x, dtype=complex).ravel()


def _pad_length(n: int) -> int:
    return 1 << max(0, (2 * n - 2).bit_length())


@dataclass(frozen=True, eq=False)
class CorrelationProfile:
    """``C(s)`` for ``s`` in ``[-(len-1), len-1]``; zero outside that range."""

    values: np.ndarray
    length: int

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def shifts(self) -> np.ndarray:
        return np.arange(-(self.length - 1), self.length)

    def __getitem__(self, s: int) -> complex:
        if abs(s) >= self.length:
            return 0j
        return complex(self.values[s + self.length - 1])

    def sum_abs2(self, exclude_zero: bool = False) -> float:
        a = np.abs(self.values) ** 2
        if exclude_zero:
            a = np.delete(a, self.length - 1)
        return math.fsum(a)


def crosscorrelate(f, g, method: str = "direct") -> CorrelationProfile:
    """Aperiodic crosscorrelation of equal-length sequences ``f`` and ``g``."""
    f, g = _terms(f), _terms(g)
    n = f.size
    if g.size != n:
        raise LengthMismatch(f"lengths {n} and {g.size} differ")
    if method == "direct":
        # np.correlate gives sum_j g_{j+s} conj(f_j) = conj(C(s))
        values = np.conj(np.correlate(g, f, mode="full"))
    elif method == "fft":
        N = _pad_length(n)
        c = np.fft.ifft(np.fft.fft(g, N) * np.conj(np.fft.fft(f, N)))
        values = np.conj(np.concatenate([c[N - n + 1 :], c[:n]]))
    else:
        raise ValueError(f"unknown method {method!r}")
    return CorrelationProfile(values, n)


def _energy(x: np.ndarray) -> float:
    e = math.fsum(np.abs(x) ** 2)
    if e == 0:
        raise ZeroEnergy("sequence has zero energy")
    return e


def demerit_factor(f) -> float:
    """``sum_{s != 0} |C_ff(s)|**2 / |C_ff(0)|**2``."""
    f = _terms(f)
    e = _energy(f)
    return crosscorrelate(f, f).sum_abs2(exclude_zero=True) / (e * e)


def cross_demerit(f, g) -> float:
    """``sum_s |C_fg(s)|**2 / (|C_ff(0)| |C_gg(0)|)``."""
    f, g = _terms(f), _terms(g)
    if f.size != g.size:
        raise LengthMismatch(f"lengths {f.size} and {g.size} differ")
    ef, eg = _energy(f), _energy(g)
    return crosscorrelate(f, g).sum_abs2() / (ef * eg)


def merit_factor(f) -> float:
    return 1.0 / demerit_factor(f)


def cross_merit(f, g) -> float:
    return 1.0 / cross_demerit(f, g)


@dataclass(frozen=True)
class DemeritReport:
    df_f: float
    df_g: float
    cdf: float
    cmf: float
    ps_lower: float
    ps_upper: float

    @property
    def ps_ok(self) -> bool:
        return self.ps_lower - PS_TOL <= self.cdf <= self.ps_upper + PS_TOL

    def as_row(self) -> tuple[float, ...]:
        return (self.df_f, self.df_g, self.cdf, self.cmf, self.ps_lower, self.ps_upper)


def metrics(f, g) -> DemeritReport:
    df_f, df_g = demerit_factor(f), demerit_factor(g)
    cdf = cross_demerit(f, g)
    root = math.sqrt(df_f * df_g)
    return DemeritReport(df_f, df_g, cdf, math.inf if cdf == 0 else 1.0 / cdf, 1 - root, 1 + root)


def pursley_sarwate_gap(f, g) -> tuple[float, float, float]:
    """``(1 - sqrt(DF_f DF_g), 1 + sqrt(DF_f DF_g), CDF)``, asserting the sandwich."""
    r = metrics(f, g)
    if not r.ps_ok:
        raise AssertionError(f"bound violated: {r.ps_lower} <= {r.cdf} <= {r.ps_upper}")
    return r.ps_lower, r.ps_upper, r.cdf


def norm4_quadruple_oracle(f, g) -> float:
    """``sum over t+u=v+w of f_t g_u conj(f_v g_w)``, enumerated in O(len**3)."""
    f, g = _terms(f), _terms(g)
    n = f.size
    if g.size != n:
        raise LengthMismatch(f"lengths {n} and {g.size} differ")
    if n > ORACLE_MAX_LEN:
        raise TooLong(f"oracle limited to length {ORACLE_MAX_LEN}")
    t, u, v = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    w = t + u - v
    ok = (w >= 0) & (w < n)
    t, u, v, w = t[ok], u[ok], v[ok], w[ok]
    terms = f[t] * g[u] * np.conj(f[v] * g[w])
    return math.fsum(terms.real)


# batch paths


def power_spectra(rows: np.ndarray) -> np.ndarray:
    """``|FFT|**2`` of each row, zero-padded so that no cyclic wrap occurs."""
    rows = np.atleast_2d(np.asarray(rows, dtype=complex))
    N = _pad_length(rows.shape[1])
    return np.abs(np.fft.fft(rows, N, axis=1)) ** 2


def batch_cross_demerit(f_rows: np.ndarray, g_rows: np.ndarray) -> np.ndarray:
    """``CDF(f_rows[i], g_rows[j])`` for all i, j, as a matrix."""
    f_rows = np.atleast_2d(np.asarray(f_rows, dtype=complex))
    g_rows = np.atleast_2d(np.asarray(g_rows, dtype=complex))
    if f_rows.shape[1] != g_rows.shape[1]:
        raise LengthMismatch("row lengths differ")
    P, Q = power_spectra(f_rows), power_spectra(g_rows)
    N = P.shape[1]
    ef = np.sum(np.abs(f_rows) ** 2, axis=1)
    eg = np.sum(np.abs(g_rows) ** 2, axis=1)
    if np.any(ef == 0) or np.any(eg == 0):
        raise ZeroEnergy("a row has zero energy")
    return (P @ Q.T) / N / np.outer(ef, eg)


def batch_pair_cross_demerit(f_rows: np.ndarray, g_rows: np.ndarray) -> np.ndarray:
    """``CDF(f_rows[i], g_rows[i])`` row by row."""
    f_rows = np.atleast_2d(np.asarray(f_rows, dtype=complex))
    g_rows = np.atleast_2d(np.asarray(g_rows, dtype=complex))
    if f_rows.shape != g_rows.shape:
        raise LengthMismatch("row shapes differ")
    P, Q = power_spectra(f_rows), power_spectra(g_rows)
    N = P.shape[1]
    ef = np.sum(np.abs(f_rows) ** 2, axis=1)
    eg = np.sum(np.abs(g_rows) ** 2, axis=1)
    if np.any(ef == 0) or np.any(eg == 0):
        raise ZeroEnergy("a row has zero energy")
    return np.sum(P * Q, axis=1) / N / (ef * eg)


def batch_demerit(rows: np.ndarray) -> np.ndarray:
    """``DF`` of every row: ``CDF(f, f) - 1``."""
    rows = np.atleast_2d(np.asarray(rows, dtype=complex))
    return batch_pair_cross_demerit(rows, rows) - 1.0


def cyclic_shifts(seq) -> np.ndarray:
    """Matrix whose row j is the left cyclic shift of ``seq`` by j."""
    x = _terms(seq)
    n = x.size
    idx = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return x[idx]


def avg_cdf_over_all_shifts(f, g) -> float:
    """Mean of ``CDF(T^j f, T^k g)`` over all cyclic shift pairs (j, k)."""
    f, g = _terms(f), _terms(g)
    if f.size != g.size:
        raise LengthMismatch(f"lengths {f.size} and {g.size} differ")
    m = batch_cross_demerit(cyclic_shifts(f), cyclic_shifts(g))
    return math.fsum(m.ravel()) / m.size


def sarwate_average(length: int) -> float:
    """Closed-form shift-averaged CDF of an m-sequence pair with nontrivial decimation."""
    n = float(length)
    return 1 + 2 / (3 * n) - 1 / n**2 + 1 / (3 * n**3)
