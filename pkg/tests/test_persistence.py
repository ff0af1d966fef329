import numpy as np
import pandas as pd
import pytest

from errors import DimensionError
from grid import Grid2D, GridFunction
from persistence import ReportWriter, REPORT_VERSION, FIELD_COLUMNS


def test_report_save_and_load(tmp_path):
    path = tmp_path / "nested" / "report.json"
    assert ReportWriter.save_report({'alpha': 0.5, 'eps2': 1.25e-7}, path)
    loaded = ReportWriter.load_report(path)
    assert loaded['version'] == REPORT_VERSION
    assert loaded['alpha'] == 0.5 and loaded['eps2'] == 1.25e-7
    assert 'saved_at' in loaded


def test_report_not_serializable(tmp_path):
    assert not ReportWriter.save_report({'field': object()}, tmp_path / "bad.json")


def test_missing_report(tmp_path):
    assert ReportWriter.load_report(tmp_path / "none.json") is None


def test_corrupt_report_is_moved_aside(tmp_path):
    path = tmp_path / "report.json"
    path.write_text('{"alpha": ', encoding='utf-8')
    assert ReportWriter.load_report(path) is None
    assert not path.exists()
    backups = list(tmp_path.glob("report_corrupted_*.json"))
    assert len(backups) == 1


def test_field_csv_read_back_is_exact(tmp_path, rng):
    grid = Grid2D(5, 4, 1.0, 0.3)
    field = GridFunction(grid, rng.standard_normal(grid.K) * 1e-9)
    path = ReportWriter.write_field_csv(field, tmp_path / "field.csv")

    frame = pd.read_csv(path)
    assert list(frame.columns) == FIELD_COLUMNS
    assert frame[['i1', 'i2']].iloc[:4].values.tolist() == [[1, 1], [1, 2], [1, 3], [2, 1]]
    assert frame['x2'].iloc[1] == pytest.approx(2 * 0.3 / 4)

    restored = ReportWriter.read_field_csv(path, grid)
    assert np.array_equal(restored.values, field.values)


def test_field_csv_wrong_grid(tmp_path):
    grid = Grid2D.unit_square(4)
    path = ReportWriter.write_field_csv(GridFunction(grid, np.ones(grid.K)), tmp_path / "field.csv")
    with pytest.raises(DimensionError):
        ReportWriter.read_field_csv(path, Grid2D.unit_square(5))
    with pytest.raises(DimensionError):
        ReportWriter.read_field_csv(path, Grid2D(3, 6))


def test_field_csv_bad_columns(tmp_path):
    path = tmp_path / "field.csv"
    pd.DataFrame({'a': [1], 'b': [2]}).to_csv(path, index=False)
    with pytest.raises(DimensionError):
        ReportWriter.read_field_csv(path, Grid2D.unit_square(2))


def test_table_csv(tmp_path):
    frame = pd.DataFrame({'m': [25, 50], 'p': [0, 0], '0.5': [1.0 / 3.0, 2.5e-12]})
    path = ReportWriter.write_table_csv(frame, tmp_path / "out" / "table.csv")
    restored = ReportWriter.read_table_csv(path)
    pd.testing.assert_frame_equal(restored, frame, check_exact=True)


def test_table_csv_read_back_is_exact_for_random_values(tmp_path, rng):
    values = rng.standard_normal(200) * 10.0 ** rng.integers(-12, 3, 200)
    frame = pd.DataFrame({'m': np.arange(200), '0.25': values})
    path = ReportWriter.write_table_csv(frame, tmp_path / "random.csv")
    restored = ReportWriter.read_table_csv(path)
    assert np.array_equal(restored['0.25'].to_numpy(), values)
