import json

import pytest

import config.app_config as app_config
from config import AppConfig, DEFAULT_CONFIG
from errors import UsageError


def test_defaults_without_file():
    assert AppConfig.load_config() == DEFAULT_CONFIG
    assert AppConfig.get_log_level() == 'NORMAL'
    bench = AppConfig.get_bench_settings()
    assert bench['kappa_count'] == 2000
    assert (bench['kappa_min'], bench['kappa_max'], bench['kappa_zero']) == (1.0, 1e5, False)


def test_save_and_merge(isolated_config):
    assert AppConfig.save_config({'solver': {'dense_cap': 100}, 'logging': {'level': 'DEBUG'}})
    assert (isolated_config / "config.json").exists()

    config = AppConfig.load_config()
    assert config['solver']['dense_cap'] == 100
    assert config['solver']['max_grid_nodes'] == DEFAULT_CONFIG['solver']['max_grid_nodes']
    assert AppConfig.get_log_level() == 'DEBUG'


def test_load_does_not_share_defaults():
    AppConfig.load_config()['bench']['tolerance'] = 5.0
    assert AppConfig.get_bench_settings()['tolerance'] == 0.01


def test_corrupt_config_falls_back(isolated_config):
    isolated_config.mkdir(parents=True)
    (isolated_config / "config.json").write_text("{not json", encoding='utf-8')
    assert AppConfig.load_config() == DEFAULT_CONFIG


def test_save_log_level():
    assert AppConfig.save_log_level('VERBOSE')
    stored = json.loads(app_config.CONFIG_FILE.read_text(encoding='utf-8'))
    assert stored['logging']['level'] == 'VERBOSE'


def test_thread_precedence(monkeypatch):
    monkeypatch.setattr(app_config.psutil, "cpu_count", lambda logical=True: 6)
    assert AppConfig.resolve_threads() == 6

    AppConfig.save_config({'runtime': {'threads': 3}})
    assert AppConfig.resolve_threads() == 3

    monkeypatch.setenv(app_config.THREADS_ENV_VAR, "2")
    assert AppConfig.resolve_threads() == 2
    assert AppConfig.resolve_threads(5) == 5


def test_thread_count_fallback_when_unknown(monkeypatch):
    monkeypatch.setattr(app_config.psutil, "cpu_count", lambda logical=True: None)
    assert AppConfig.resolve_threads() == 1


@pytest.mark.parametrize("bad", [0, -2, "many"])
def test_invalid_thread_counts(bad, monkeypatch):
    with pytest.raises(UsageError):
        AppConfig.resolve_threads(bad)
    monkeypatch.setenv(app_config.THREADS_ENV_VAR, str(bad))
    with pytest.raises(UsageError):
        AppConfig.resolve_threads()


def test_run_file_values(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text(
        "alpha = 0.75   # trailing comment\n"
        "\n"
        "m = 50\n"
        "rhs = f2\n"
        'basis = "dense"\n'
        "field-csv = out/run\n"
        "check = true\n",
        encoding='utf-8',
    )
    assert AppConfig.load_run_file(path) == {
        'alpha': 0.75, 'm': 50, 'rhs': 'f2', 'basis': 'dense', 'field_csv': 'out/run', 'check': True,
    }


@pytest.mark.parametrize("text", ["alpha 0.5\n", "= 3\n", "m =\n"])
def test_malformed_run_file(tmp_path, text):
    path = tmp_path / "run.conf"
    path.write_text(text, encoding='utf-8')
    with pytest.raises(UsageError):
        AppConfig.load_run_file(path)


def test_missing_run_file(tmp_path):
    with pytest.raises(UsageError):
        AppConfig.load_run_file(tmp_path / "absent.conf")
