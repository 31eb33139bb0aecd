import json
import logging

import pytest

from utils.config import HARD_MAX_N, ConfigManager, default_max_n
from utils.monitoring import ComputationMonitor, PolyspaceLogger
from utils.parallel import map_ranges, parallel_sum, split_range


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    monkeypatch.delenv("POLYSPACE_CONFIG", raising=False)
    monkeypatch.delenv("POLYSPACE_MAX_N", raising=False)


@pytest.fixture
def restore_logging():
    root = logging.getLogger()
    results = logging.getLogger('results')
    saved = (list(root.handlers), root.level, list(results.handlers), results.level)
    yield
    for logger, handlers, level in ((root, saved[0], saved[1]), (results, saved[2], saved[3])):
        for handler in list(logger.handlers):
            if handler not in handlers:
                logger.removeHandler(handler)
                handler.close()
        logger.setLevel(level)


def test_defaults_without_file():
    config = ConfigManager()
    assert config.max_n == HARD_MAX_N
    assert config.threads == 1
    assert config.get('sampling', 'max_weight') == 12
    with pytest.raises(KeyError):
        config.get('broker')
    with pytest.raises(KeyError):
        config.get('limits', 'api_key')


def test_file_overrides_defaults(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({'compute': {'threads': 3}, 'limits': {'max_n': 9}}))
    config = ConfigManager(str(path))
    assert config.threads == 3
    assert config.max_n == 9
    assert config.get('sampling', 'seed') == 20240607


def test_config_path_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "env.json"
    path.write_text(json.dumps({'compute': {'threads': 2}}))
    monkeypatch.setenv("POLYSPACE_CONFIG", str(path))
    assert ConfigManager().threads == 2


def test_environment_caps_max_n(tmp_path, monkeypatch):
    monkeypatch.setenv("POLYSPACE_MAX_N", "7")
    assert ConfigManager().max_n == 7
    assert default_max_n() == 7
    monkeypatch.setenv("POLYSPACE_MAX_N", "70")
    with pytest.raises(ValueError):
        ConfigManager()


@pytest.mark.parametrize("payload", [
    {'compute': {'threads': 0}},
    {'limits': {'max_n': 2}},
    {'logging': 'verbose'},
])
def test_invalid_files_are_rejected(tmp_path, payload):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(payload))
    with pytest.raises(ValueError):
        ConfigManager(str(path))


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        ConfigManager(str(tmp_path / "absent.json"))


def test_update_and_save(tmp_path):
    path = tmp_path / "saved.json"
    config = ConfigManager()
    config.update('compute', 'threads', 4)
    config.save(str(path))
    assert ConfigManager(str(path)).threads == 4
    with pytest.raises(ValueError):
        config.update('compute', 'threads', 0)


def test_create_default_config(tmp_path):
    sample = tmp_path / "config.sample.json"
    sample.write_text(json.dumps({'compute': {'threads': 2}}))
    target = tmp_path / "config.json"
    ConfigManager.create_default_config(str(target))
    assert json.loads(target.read_text()) == {'compute': {'threads': 2}}
    with pytest.raises(FileExistsError):
        ConfigManager.create_default_config(str(target))


def test_logger_writes_files(tmp_path, restore_logging):
    PolyspaceLogger(log_dir=str(tmp_path), log_level="INFO")
    logging.getLogger("polyspace.test").info("computing")
    PolyspaceLogger.log_result({'betti': [1, 5, 1]})
    PolyspaceLogger.log_error(ValueError("bad weights"), context="validate")
    for handler in logging.getLogger().handlers + logging.getLogger('results').handlers:
        handler.flush()

    assert "computing" in (tmp_path / "polyspace.log").read_text()
    assert '"betti": [1, 5, 1]' in (tmp_path / "results.log").read_text()
    assert "validate: bad weights" in (tmp_path / "errors.log").read_text()


def test_logger_does_not_stack_handlers(restore_logging):
    PolyspaceLogger(log_level="WARNING")
    PolyspaceLogger(log_level="DEBUG")
    ours = [h for h in logging.getLogger().handlers if getattr(h, '_polyspace', False)]
    assert len(ours) == 1
    assert logging.getLogger().level == logging.DEBUG


def test_monitor_report(tmp_path):
    monitor = ComputationMonitor(output_dir=str(tmp_path / "reports"))
    for _ in range(3):
        with monitor.track("poincare"):
            pass
    with pytest.raises(RuntimeError):
        with monitor.track("evaluate"):
            raise RuntimeError("boom")

    report = monitor.generate_report()
    assert list(report) == ['evaluate', 'poincare']
    assert report['poincare']['calls'] == 3
    assert report['poincare']['max_seconds'] >= report['poincare']['mean_seconds'] >= 0

    saved = monitor.save_report()
    assert json.loads(saved.read_text()) == report


def test_monitor_without_directory():
    assert ComputationMonitor().save_report() is None


def test_split_range_covers_everything():
    assert split_range(10, 3) == [(0, 4), (4, 7), (7, 10)]
    assert split_range(2, 5) == [(0, 1), (1, 2)]
    assert split_range(0, 4) == [(0, 0)]


def test_parallel_sum_matches_serial():
    def chunk_sum(lo, hi):
        return sum(range(lo, hi))

    assert parallel_sum(chunk_sum, 1000, workers=4) == sum(range(1000))
    assert map_ranges(lambda lo, hi: (lo, hi), 6, workers=2) == [(0, 3), (3, 6)]
