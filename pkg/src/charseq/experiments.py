"""Figure reproduction: shift scans and demerit-factor histograms as CSV.

Work is split into chunks whose boundaries depend only on the problem size,
never on the thread count, and chunk results are merged in order, so the
bytes written are the same however many threads run.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field, replace
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import __version__
from .asym import AsymptoticCase, Family, Subcase, acdf
from .chars import quadratic_char
from .corr import batch_demerit, batch_pair_cross_demerit, power_spectra
from .errors import BadArgs, BadBinWidth, LengthMismatch, UnknownFigure
from .gf import FiniteField, builtin_field
from .optim import LAMBDA_TRUNC
from .seqgen import ComplexSequence, Family as SeqFamily, SequenceSpec, additive_sequence, mult_sequence, unimodularize

_ADD = SeqFamily.ADDITIVE
FIGURES = ("andrew", "bartholomew", "lester", "laura", "linus", "lisa", "percy", "monica")
CHUNK = 64
HIST_LO, HIST_HI, HIST_WIDTH = 0.6, 1.6, 0.005
DEFAULT_SAMPLES = 100_000


def fmt(x: float) -> str:
    """12 significant digits, with negative zero printed as 0."""
    s = f"{float(x):.12g}"
    return "0" if s == "-0" else s


def parallel_map(fn: Callable, items: Sequence, threads: int = 1) -> list:
    """``[fn(item) for item in items]`` on a thread pool, results in input order."""
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _chunks(n: int, size: int = CHUNK) -> list[range]:
    return [range(i, min(i + size, n)) for i in range(0, n, size)]


@dataclass
class Table:
    header: tuple[str, ...] | None
    rows: list[tuple]

    def column(self, name: str) -> np.ndarray:
        i = self.header.index(name)
        return np.array([r[i] for r in self.rows], dtype=float)

    def to_csv(self) -> str:
        lines = [] if self.header is None else [",".join(self.header)]
        for row in self.rows:
            lines.append(",".join(v if isinstance(v, str) else (str(v) if isinstance(v, (int, np.integer)) else fmt(v)) for v in row))
        return "\n".join(lines) + "\n"

    def write(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="\n") as fh:
            fh.write(self.to_csv())
        return path


# histograms


def histogram(values: Iterable[float], bin_width: float, lo: float | None = None, hi: float | None = None) -> Table:
    """Counts in half-open bins ``[lo + i w, lo + (i+1) w)``.

    Without explicit limits the bins run from the one holding the smallest
    value to the one holding the largest.  With limits, values outside
    ``[lo, hi)`` are dropped.
    """
    if not bin_width > 0:
        raise BadBinWidth("bin width must be positive")
    v = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=float).ravel()
    if lo is None:
        if v.size == 0:
            return Table(("bin_lo", "bin_hi", "count"), [])
        first = math.floor(v.min() / bin_width)
        nbins = math.floor(v.max() / bin_width) - first + 1
        idx = np.floor(v / bin_width).astype(np.int64) - first
    else:
        first = 0
        nbins = int(round((hi - lo) / bin_width))
        idx = np.floor((v - lo) / bin_width).astype(np.int64)
        idx = idx[(idx >= 0) & (idx < nbins)]
    counts = np.bincount(idx, minlength=nbins)
    base = 0.0 if lo is None else lo
    rows = [
        (base + (first + i) * bin_width, base + (first + i + 1) * bin_width, int(c))
        for i, c in enumerate(counts)
    ]
    return Table(("bin_lo", "bin_hi", "count"), rows)


# shift scans


@dataclass
class ScanResult:
    shifts: np.ndarray
    sigma: np.ndarray
    cdf: np.ndarray
    df_f: np.ndarray
    df_g: np.ndarray

    def ps_ok(self, tol: float = 1e-9) -> bool:
        root = np.sqrt(self.df_f * self.df_g)
        return bool(np.all(self.cdf >= 1 - root - tol) and np.all(self.cdf <= 1 + root + tol))


def _scan_rows(f: ComplexSequence, g_rows: np.ndarray, threads: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    f_rows = np.broadcast_to(f.terms, g_rows.shape)
    df_f = float(batch_demerit(f.terms[None, :])[0])

    def work(rng: range):
        sl = slice(rng.start, rng.stop)
        return batch_pair_cross_demerit(f_rows[sl], g_rows[sl]), batch_demerit(g_rows[sl])

    parts = parallel_map(work, _chunks(g_rows.shape[0]), threads)
    cdf = np.concatenate([p[0] for p in parts])
    df_g = np.concatenate([p[1] for p in parts])
    return cdf, np.full(cdf.shape, df_f), df_g


def scan_shifts(f_spec: SequenceSpec, g_spec: SequenceSpec, shifts: Iterable[int], threads: int = 1) -> ScanResult:
    """CDF of ``f`` against ``g`` for each shift of ``g`` in ``shifts`` (ascending)."""
    if f_spec.length != g_spec.length:
        raise LengthMismatch("f and g lengths differ")
    shifts = np.array(sorted(int(s) for s in shifts), dtype=np.int64)
    f = f_spec.build()
    g_rows = np.array([replace(g_spec, shift=int(s)).build().terms for s in shifts])
    if g_rows.size == 0:
        raise BadArgs("empty shift grid")
    cdf, df_f, df_g = _scan_rows(f, g_rows, threads)
    sigma = np.mod((f_spec.shift + shifts) / g_spec.period, 1.0)
    return ScanResult(shifts, sigma, cdf, df_f, df_g)


def additive_scan(field: FiniteField, d: int, length: int, r: int = 0, threads: int = 1) -> ScanResult:
    """f = additive sequence of the generator (shift r); g = of generator**d, every shift."""
    N = field.q - 1
    f_spec = SequenceSpec(_ADD, r, length, field, 1)
    g_spec = SequenceSpec(_ADD, 0, length, field, d)
    return scan_shifts(f_spec, g_spec, range(N), threads)


def legendre_scan(p: int, length: int, diff: int, threads: int = 1) -> ScanResult:
    """Unimodularized quadratic-character pairs with shifts (r, r - diff), r over F_p."""
    eta = quadratic_char(p)
    rs = np.arange(p)

    def build(r: int) -> np.ndarray:
        return unimodularize(mult_sequence(eta, int(r), length)).terms

    f_rows = np.array([build(r) for r in rs])
    g_rows = np.array([build(r - diff) for r in rs])

    def work(rng: range):
        sl = slice(rng.start, rng.stop)
        return (
            batch_pair_cross_demerit(f_rows[sl], g_rows[sl]),
            batch_demerit(f_rows[sl]),
            batch_demerit(g_rows[sl]),
        )

    parts = parallel_map(work, _chunks(p), threads)
    cdf, df_f, df_g = (np.concatenate([q[i] for q in parts]) for i in range(3))
    sigma = np.mod((2 * rs - diff) / p, 1.0)
    return ScanResult(rs, sigma, cdf, df_f, df_g)


# figure definitions


@dataclass(frozen=True)
class ExperimentSpec:
    figure: str
    scale: str = "full"
    out: Path | None = None
    threads: int = 1
    seed: int = 0
    samples: int = DEFAULT_SAMPLES
    full: bool = False

    def __post_init__(self):
        if self.figure not in FIGURES:
            raise UnknownFigure(f"unknown figure {self.figure!r}; choose from {', '.join(FIGURES)}")
        if self.scale not in ("full", "reduced"):
            raise BadArgs("scale must be 'full' or 'reduced'")
        if self.threads < 1:
            raise BadArgs("threads must be positive")


@dataclass
class FigureData:
    tables: dict[str, Table]
    meta: dict = dc_field(default_factory=dict)
    scans: dict[str, ScanResult] = dc_field(default_factory=dict)


def _additive_panel(field: FiniteField, d: int, length: int, threads: int) -> tuple[Table, ScanResult]:
    scan = additive_scan(field, d, length, threads=threads)
    lam = length / (field.q - 1)
    kind = field.classify_decimation(d)
    rows = []
    for sigma, cdf in zip(scan.sigma, scan.cdf):
        if kind.is_reversing:
            case = AsymptoticCase(Family.ADDITIVE, Subcase.REVERSING, lam, sigma=float(sigma), p=field.p)
        elif kind.is_trivial:
            case = AsymptoticCase(Family.ADDITIVE, Subcase.SAME, lam, delta=float(-sigma), p=field.p)
        else:
            case = AsymptoticCase(Family.ADDITIVE, Subcase.UNRELATED, lam, p=field.p)
        rows.append((float(sigma), float(cdf), acdf(case)))
    rows.sort(key=lambda r: r[0])
    return Table(("fractional_shift_sum", "cdf_measured", "cdf_asymptotic"), rows), scan


_ADDITIVE_FIGURES = {
    # figure: (full field, reduced field, nonreversing d (full, reduced), length factor)
    "lester": ("F512", "F256", (3, 7), None),
    "laura": ("F729", "F243", (5, 5), None),
    "linus": ("F512", "F256", (3, 7), 570 / 511),
    "lisa": ("F512", "F256", (3, 7), 285 / 511),
}


def _figure_additive(spec: ExperimentSpec) -> FigureData:
    full_name, reduced_name, ds, factor = _ADDITIVE_FIGURES[spec.figure]
    reduced = spec.scale == "reduced"
    field = builtin_field(reduced_name if reduced else full_name)
    N = field.q - 1
    length = N if factor is None else int(round(N * factor))
    d_top = ds[1] if reduced else ds[0]
    top, scan_top = _additive_panel(field, d_top, length, spec.threads)
    bottom, scan_bottom = _additive_panel(field, -1, length, spec.threads)
    meta = {
        "field": field.spec(),
        "length": length,
        "fractional_length": length / N,
        "d_top": d_top,
        "d_bottom": -1,
        "f_shift": 0,
        "g_shifts": f"0..{N - 1}",
    }
    return FigureData({"top": top, "bottom": bottom}, meta, {"top": scan_top, "bottom": scan_bottom})


def _figure_legendre(spec: ExperimentSpec) -> FigureData:
    p = 127 if spec.scale == "reduced" else 257
    diff = (p - 1) // 2
    if spec.figure == "percy":
        lam_nominal = LAMBDA_TRUNC
        length = int(round(p * LAMBDA_TRUNC))
    else:
        lam_nominal = 0.5
        length = (p - 1) // 2
    scan = legendre_scan(p, length, diff, spec.threads)
    M = Family.MULTIPLICATIVE
    rows = []
    for r, sigma, df, cdf in zip(scan.shifts, scan.sigma, scan.df_f, scan.cdf):
        cdf_asym = acdf(AsymptoticCase(M, Subcase.QUADRATIC, lam_nominal, delta=0.5, sigma=float(sigma)))
        # f against itself: Delta = 0 and Sigma = 2r/p
        df_asym = acdf(AsymptoticCase(M, Subcase.QUADRATIC, lam_nominal, delta=0.0, sigma=float(2 * r / p))) - 1
        rows.append((float(sigma), float(df), df_asym, float(cdf), cdf_asym))
    rows.sort(key=lambda row: row[0])
    header = ("fractional_shift_sum", "df_measured", "df_asymptotic", "cdf_measured", "cdf_asymptotic")
    meta = {
        "p": p,
        "length": length,
        "difference_of_shifts": diff,
        "asymptotic_lambda": lam_nominal,
        "asymptotic_delta": 0.5,
        "unimodularization": 1,
    }
    return FigureData({"": Table(header, rows)}, meta, {"": scan})


def generator_class_spectra(field: FiniteField) -> tuple[list[int], np.ndarray]:
    """Discrete logs of the Galois-class representatives and the power spectra of
    every cyclic shift of each representative's m-sequence."""
    reps = field.primitive_representatives()
    logs = [field.log(a) for a in reps]
    N = field.q - 1
    spectra = []
    for a in reps:
        rows = np.array([additive_sequence(field, a, j, N).terms for j in range(N)])
        spectra.append(power_spectra(rows))
    return logs, np.array(spectra)


def pair_cdf_values(
    field: FiniteField,
    threads: int = 1,
    samples: int | None = None,
    seed: int = 0,
) -> tuple[list[tuple[int, int, bool]], list[np.ndarray]]:
    """CDFs for all ordered pairs of distinct generator classes.

    Each entry of the second list holds the CDFs of every shift pair (j, k)
    for that generator pair, or of a seeded uniform sample of ``samples``
    shift pairs when that is fewer than all of them.
    """
    logs, P = generator_class_spectra(field)
    N = field.q - 1
    npad = P.shape[2]
    pairs = []
    for i, a in enumerate(logs):
        for j, b in enumerate(logs):
            if i == j:
                continue
            rel = (b * pow(a, -1, N)) % N
            pairs.append((i, j, field.classify_decimation(rel).is_reversing))
    total = N * N
    subsample = samples is not None and samples < total

    def work(item):
        i, j, _ = item
        if subsample:
            rng = np.random.default_rng([seed, i, j])
            flat = rng.choice(total, size=samples, replace=False)
            jj, kk = np.divmod(flat, N)
            vals = np.sum(P[i][jj] * P[j][kk], axis=1)
        else:
            vals = (P[i] @ P[j].T).ravel()
        return vals / npad / (N * N)

    values = parallel_map(work, pairs, threads)
    return pairs, values


def _figure_histogram(spec: ExperimentSpec) -> FigureData:
    field = builtin_field("F128" if spec.scale == "reduced" else "F256")
    N = field.q - 1
    samples = None if spec.full else spec.samples
    pairs, values = pair_cdf_values(field, spec.threads, samples, spec.seed)
    total = N * N
    used = total if samples is None or samples >= total else samples
    meta = {
        "field": field.spec(),
        "length": N,
        "generator_pairs": len(pairs),
        "shift_pairs_per_generator_pair": used,
        "sampling": "full enumeration" if used == total else f"uniform without replacement, seed {spec.seed}",
        "bin_width": HIST_WIDTH,
        "range": [HIST_LO, HIST_HI],
    }
    if spec.figure == "andrew":
        allv = np.concatenate(values)
        meta["out_of_range"] = int(np.count_nonzero((allv < HIST_LO) | (allv >= HIST_HI)))
        return FigureData({"": histogram(allv, HIST_WIDTH, HIST_LO, HIST_HI)}, meta)
    rev = np.concatenate([v for (_, _, r), v in zip(pairs, values) if r])
    non = np.concatenate([v for (_, _, r), v in zip(pairs, values) if not r])
    meta["reversing_values"] = int(rev.size)
    meta["nonreversing_values"] = int(non.size)
    tables = {
        "top": histogram(rev, HIST_WIDTH, HIST_LO, HIST_HI),
        "bottom": histogram(non, HIST_WIDTH, HIST_LO, HIST_HI),
    }
    return FigureData(tables, meta)


def figure_data(spec: ExperimentSpec) -> FigureData:
    if spec.figure in ("andrew", "bartholomew"):
        data = _figure_histogram(spec)
    elif spec.figure in _ADDITIVE_FIGURES:
        data = _figure_additive(spec)
    else:
        data = _figure_legendre(spec)
    data.meta = {"figure": spec.figure, "scale": spec.scale, "version": __version__, **data.meta}
    return data


def reproduce(spec: ExperimentSpec) -> list[Path]:
    """Write the figure's CSV file(s) and a JSON metadata sidecar into ``spec.out``."""
    out = Path(spec.out if spec.out is not None else ".")
    data = figure_data(spec)
    paths = []
    for panel, table in data.tables.items():
        name = f"{spec.figure}_{panel}.csv" if panel else f"{spec.figure}.csv"
        paths.append(table.write(out / name))
    meta_path = out / f"{spec.figure}.meta.json"
    meta_path.write_text(json.dumps(data.meta, indent=2, sort_keys=True) + "\n")
    paths.append(meta_path)
    return paths
