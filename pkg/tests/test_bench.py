import shutil
from types import SimpleNamespace

import numpy as np
import pandas as pd
import pytest

import workers.resources
from bench import (
    SweepSpec, run_table, figure_anchors, load_reference, load_figure_anchors,
    diff_against_reference, DATA_DIR, METRIC_L2, METRIC_MAX, METRIC_QUADRATURE
)
from config import AppConfig
from errors import CapacityError, DomainError, ReferenceDataError, ShapeMismatchError


def _check(table: int, tolerance: float, threads: int = 1):
    result = run_table(SweepSpec.for_table(table), threads=threads)
    return result, diff_against_reference(result.frame, load_reference(table), tolerance)


def test_default_sweeps():
    assert SweepSpec.for_table(1).ps == (0, 1, 2, 3, 4)
    assert SweepSpec.for_table(2).Ns == (256,)
    assert SweepSpec.for_table(3).rhs == 'f2'
    spec = SweepSpec.for_table(5)
    assert spec.Ns == (32, 64, 128) and spec.ps == (0,) and spec.ms == (25, 50, 100)
    assert spec.alphas == (0.1, 0.25, 0.5, 0.75, 0.9)
    with pytest.raises(DomainError):
        SweepSpec.for_table(6)
    with pytest.raises(DomainError):
        SweepSpec(table=2)


def test_reference_layouts():
    table1 = load_reference(1)
    assert list(table1.columns) == ['m', 'p', '0.1', '0.25', '0.5', '0.75', '0.9']
    assert table1.shape == (15, 7)
    table4 = load_reference(4)
    assert list(table4.columns[:3]) == ['N', 'm', 'error']
    assert table4.shape == (18, 8)
    assert load_figure_anchors('f2')[0.75] == pytest.approx(0.1906235)


def test_reference_checksum_is_enforced(tmp_path):
    data_dir = tmp_path / "data"
    shutil.copytree(DATA_DIR, data_dir)
    assert load_reference(2, data_dir=data_dir).shape == (18, 8)

    path = data_dir / "table2.csv"
    path.write_text(path.read_text(encoding="utf-8").replace("9.979937e-08", "9.979938e-08"), encoding="utf-8")
    with pytest.raises(ReferenceDataError):
        load_reference(2, data_dir=data_dir)

    (data_dir / "table3.csv").unlink()
    with pytest.raises(ReferenceDataError):
        load_reference(3, data_dir=data_dir)


def test_diff_identical_and_scaled():
    reference = load_reference(1)
    same = diff_against_reference(reference.copy(), reference, 0.01)
    assert same.passed and same.max_deviation == 0.0 and same.cells_checked == 75

    scaled = reference.copy()
    value_columns = ['0.1', '0.25', '0.5', '0.75', '0.9']
    scaled[value_columns] = scaled[value_columns] * 1.005
    assert diff_against_reference(scaled, reference, 0.01).passed

    scaled[value_columns] = reference[value_columns] * 1.02
    report = diff_against_reference(scaled, reference, 0.01)
    assert not report.passed
    assert len(report.failures) == 75
    assert report.failures[0]['m'] == 25 and report.failures[0]['alpha'] == '0.1'
    assert report.to_dict()['max_deviation'] == pytest.approx(0.02)


def test_diff_shape_mismatch():
    reference = load_reference(4)
    with pytest.raises(ShapeMismatchError):
        diff_against_reference(reference.iloc[:-1], reference, 0.01)
    with pytest.raises(ShapeMismatchError):
        diff_against_reference(reference.drop(columns=['0.9']), reference, 0.01)
    shuffled = reference.copy()
    shuffled.loc[0, 'N'] = 48
    with pytest.raises(ShapeMismatchError):
        diff_against_reference(shuffled, reference, 0.01)


def test_small_sweep_layout_and_cells():
    spec = SweepSpec.for_table(4, Ns=(16,), ms=(5, 10), alphas=(0.5,))
    result = run_table(spec)
    assert list(result.frame.columns) == ['N', 'm', 'error', '0.5']
    assert result.frame['error'].tolist() == [METRIC_L2, METRIC_MAX, METRIC_L2, METRIC_MAX]
    assert len(result.cells) == 4
    cell = result.cells[0]
    assert (cell.table, cell.rhs, cell.N, cell.p, cell.m, cell.alpha) == (4, 'f1', 16, 0, 5, 0.5)
    assert result.value(METRIC_L2, 10, 0.5, N=16) < result.value(METRIC_L2, 5, 0.5, N=16)
    with pytest.raises(KeyError):
        result.value(METRIC_L2, 50, 0.5)


def test_sweep_is_reproducible_across_thread_counts():
    spec = SweepSpec.for_table(5, Ns=(16, 24), ms=(10, 20), alphas=(0.25, 0.75))
    serial = run_table(spec, threads=1).frame
    parallel = run_table(spec, threads=3).frame
    pd.testing.assert_frame_equal(serial, parallel, check_exact=True)


def test_capacity_guard(monkeypatch):
    monkeypatch.setattr(workers.resources.psutil, "virtual_memory", lambda: SimpleNamespace(available=1024))
    with pytest.raises(CapacityError):
        run_table(SweepSpec.for_table(4, Ns=(16,), ms=(5,), alphas=(0.5,)))


def test_table1_reproduction():
    result, diff = _check(1, 0.01)
    assert diff.passed, diff.failures
    assert all(cell.metric == METRIC_QUADRATURE for cell in result.cells)
    # Errors fall with p at fixed (m, alpha)
    frame = result.frame
    for m in (25, 50, 100):
        rows = frame[frame['m'] == m]
        for column in ('0.1', '0.25', '0.5', '0.75', '0.9'):
            assert np.all(np.diff(rows[column].to_numpy()) < 0)


@pytest.mark.parametrize("table", [4, 5])
def test_grid_size_tables_reproduction(table):
    _, diff = _check(table, 0.01, threads=2)
    assert diff.passed, diff.failures


def test_nonsmooth_source_is_less_accurate():
    spec = dict(Ns=(32,), ms=(25, 50, 100))
    smooth = run_table(SweepSpec.for_table(4, **spec)).frame
    rough = run_table(SweepSpec.for_table(5, **spec)).frame
    columns = ['0.1', '0.25', '0.5', '0.75', '0.9']
    assert np.all(rough[columns].to_numpy() > smooth[columns].to_numpy())


def test_small_figure_anchor():
    anchors = figure_anchors('f1', alphas=(0.25, 0.75), N=16, m=25)
    assert set(anchors) == {0.25, 0.75}
    assert anchors[0.25] > anchors[0.75] > 0


@pytest.mark.slow
@pytest.mark.parametrize("table", [2, 3])
def test_fine_grid_tables_reproduction(table):
    result, diff = _check(table, 0.01, threads=AppConfig.resolve_threads())
    assert diff.passed, diff.failures
    frame = result.frame
    for p in (0, 1, 2):
        rows = frame[(frame['p'] == p) & (frame['error'] == METRIC_L2)]
        for column in ('0.1', '0.25', '0.5', '0.75', '0.9'):
            assert np.all(np.diff(rows[column].to_numpy()) < 0)


@pytest.mark.slow
@pytest.mark.parametrize("rhs", ['f1', 'f2'])
def test_figure_anchors_reproduction(rhs):
    expected = load_figure_anchors(rhs)
    produced = figure_anchors(rhs, alphas=tuple(expected), threads=AppConfig.resolve_threads())
    for alpha, value in expected.items():
        assert produced[alpha] == pytest.approx(value, rel=1e-3)


@pytest.mark.slow
def test_grid_size_insensitivity():
    spec = SweepSpec.for_table(4, Ns=(64, 128, 256), ms=(50,), alphas=(0.5,))
    result = run_table(spec, threads=AppConfig.resolve_threads())
    fine = result.value(METRIC_L2, 50, 0.5, N=256)
    for N in (64, 128):
        assert 1 / 1.5 < result.value(METRIC_L2, 50, 0.5, N=N) / fine < 1.5
