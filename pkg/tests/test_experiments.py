import json

import numpy as np
import pytest

from charseq.asym import reversing_limit_curve
from charseq.errors import BadArgs, BadBinWidth, UnknownFigure
from charseq.experiments import (
    FIGURES,
    ExperimentSpec,
    Table,
    additive_scan,
    figure_data,
    fmt,
    histogram,
    parallel_map,
    reproduce,
    scan_shifts,
)
from charseq.gf import builtin_field
from charseq.seqgen import Family, SequenceSpec, m_sequence


def rms_from_limit(scan):
    dev = scan.cdf - np.array([reversing_limit_curve(s) for s in scan.sigma])
    return float(np.sqrt(np.mean(dev**2)))


def canonical_rotation(terms):
    n = len(terms)
    keys = [tuple(np.roll(terms.real, -k).astype(int)) for k in range(n)]
    return min(keys)


def test_fmt():
    assert fmt(1 / 3) == "0.333333333333"
    assert fmt(-0.0) == "0"
    assert fmt(2.0) == "2"


def test_parallel_map_order():
    items = list(range(50))
    assert parallel_map(lambda x: x * x, items, threads=4) == [x * x for x in items]


def test_histogram_examples():
    t = histogram([0.5, 0.5], 0.1)
    assert len(t.rows) == 1
    assert t.rows[0][2] == 2
    assert t.rows[0][0] == pytest.approx(0.5)
    t = histogram([0.6, 0.6049, 0.605, 1.6, 0.5], 0.005, 0.6, 1.6)
    counts = t.column("count")
    assert len(counts) == 200
    assert counts[0] == 2 and counts[1] == 1 and counts.sum() == 3
    with pytest.raises(BadBinWidth):
        histogram([1.0], 0)
    with pytest.raises(BadBinWidth):
        histogram([1.0], -0.1)


def test_table_csv():
    t = Table(("a", "b"), [(1, 0.5), (2, 1 / 3)])
    assert t.to_csv() == "a,b\n1,0.5\n2,0.333333333333\n"
    assert list(t.column("a")) == [1, 2]


def test_scan_ordering():
    F = builtin_field("F128")
    f = SequenceSpec(Family.ADDITIVE, 0, 127, F)
    g = SequenceSpec(Family.ADDITIVE, 0, 127, F, generator_power=-1)
    res = scan_shifts(f, g, [5, 1, 3])
    assert list(res.shifts) == [1, 3, 5]
    assert res.sigma == pytest.approx([1 / 127, 3 / 127, 5 / 127])
    assert res.ps_ok()


def test_lester_scan_rows():
    F = builtin_field("F512")
    res = additive_scan(F, -1, 511)
    assert len(res.shifts) == 511
    assert res.ps_ok()


def test_spec_validation():
    with pytest.raises(UnknownFigure):
        ExperimentSpec("nobody")
    with pytest.raises(BadArgs):
        ExperimentSpec("lester", scale="tiny")
    with pytest.raises(BadArgs):
        ExperimentSpec("lester", threads=0)


@pytest.mark.parametrize("figure", FIGURES)
def test_reproduce_is_thread_invariant(figure, tmp_path):
    kw = dict(scale="reduced", samples=2000)
    one = reproduce(ExperimentSpec(figure, out=tmp_path / "one", threads=1, **kw))
    four = reproduce(ExperimentSpec(figure, out=tmp_path / "four", threads=4, **kw))
    assert [p.name for p in one] == [p.name for p in four]
    for a, b in zip(one, four):
        assert a.read_bytes() == b.read_bytes()
    meta = json.loads(one[-1].read_text())
    assert meta["figure"] == figure and meta["scale"] == "reduced"


def test_reproduce_headers(tmp_path):
    paths = reproduce(ExperimentSpec("lester", "reduced", out=tmp_path))
    assert [p.name for p in paths] == ["lester_top.csv", "lester_bottom.csv", "lester.meta.json"]
    assert paths[0].read_text().splitlines()[0] == "fractional_shift_sum,cdf_measured,cdf_asymptotic"
    paths = reproduce(ExperimentSpec("monica", "reduced", out=tmp_path))
    header = paths[0].read_text().splitlines()[0]
    assert header == "fractional_shift_sum,df_measured,df_asymptotic,cdf_measured,cdf_asymptotic"
    paths = reproduce(ExperimentSpec("andrew", "reduced", out=tmp_path, samples=500))
    assert paths[0].read_text().splitlines()[0] == "bin_lo,bin_hi,count"


def test_reduced_satellite_peak():
    data = figure_data(ExperimentSpec("bartholomew", "reduced", samples=5000))
    top, bottom = data.tables["top"], data.tables["bottom"]
    lo = top.column("bin_lo")
    peak = lo[np.argmax(top.column("count"))]
    assert 0.8 <= peak <= 0.9
    near = (lo >= 0.8) & (lo < 0.9)
    assert bottom.column("count")[near].sum() / bottom.column("count").sum() < 0.05
    assert top.column("count")[near].sum() / top.column("count").sum() > 0.25


def test_histogram_full_enumeration_when_samples_exceed():
    data = figure_data(ExperimentSpec("andrew", "reduced", samples=10**9))
    assert data.meta["sampling"] == "full enumeration"
    assert data.meta["shift_pairs_per_generator_pair"] == 127 * 127


def test_limit_fit_improves_with_length():
    reduced = figure_data(ExperimentSpec("lester", "reduced")).scans["bottom"]
    full = figure_data(ExperimentSpec("lester", "full")).scans["bottom"]
    assert rms_from_limit(full) < rms_from_limit(reduced)


def test_degree8_moduli_give_the_same_sequences():
    a, b = builtin_field("F256"), builtin_field("F256b")
    classes = []
    for F in (a, b):
        N = F.q - 1
        seqs = {canonical_rotation(m_sequence(F, F.exp(e)).terms) for e in range(1, N) if np.gcd(e, N) == 1}
        classes.append(seqs)
    assert classes[0] == classes[1]
    assert len(classes[0]) == 16
