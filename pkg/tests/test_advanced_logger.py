#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Logging ve performans izleme testleri"""

import json
import logging

from advanced_logger import LOGGER_PREFIX, StructuredFormatter, get_logger, setup_logging
from performance_monitor import PerformanceMonitor, monitor_performance, performance_monitor


def _record(message, **extra):
    record = logging.LogRecord("rm_mwpc.simulation", logging.INFO, __file__, 10, message, None, None)
    for key, value in extra.items():
        setattr(record, key, value)
    return record


def test_structured_formatter_emits_json():
    line = StructuredFormatter().format(_record("nokta bitti", category="SIMULATION", bler=0.25))
    entry = json.loads(line)
    assert entry["message"] == "nokta bitti"
    assert entry["category"] == "SIMULATION"
    assert entry["extra_data"]["bler"] == 0.25


def test_structured_formatter_stringifies_unserializable_extra():
    entry = json.loads(StructuredFormatter().format(_record("x", payload={1, 2})))
    assert isinstance(entry["extra_data"]["payload"], str)


def test_file_logging_writes_structured_lines(tmp_path):
    log_file = tmp_path / "logs" / "rm.log"
    setup_logging({"level": "INFO", "file_logging": True, "file_path": str(log_file),
                   "console_logging": False})
    get_logger("simulation").info("deneme", extra={"category": "SIMULATION", "frames": 10})
    for handler in logging.getLogger().handlers:
        handler.flush()
    entry = json.loads(log_file.read_text(encoding="utf-8").strip().splitlines()[-1])
    assert entry["extra_data"]["frames"] == 10
    assert get_logger("decoder").name == f"{LOGGER_PREFIX}.decoder"
    setup_logging({"level": "WARNING", "colored_console": False})


def test_monitor_performance_records_timings():
    performance_monitor.reset()

    @monitor_performance("test")
    def work(x):
        return x * 2

    assert work(4) == 8
    summary = performance_monitor.get_performance_summary()
    timing = next(v for k, v in summary["function_timings"].items() if k.endswith(".work"))
    assert timing["calls"] == 1
    assert summary["metrics_count"] == 1


def test_memory_sampling():
    monitor = PerformanceMonitor()
    sample = monitor.sample_memory()
    if sample is not None:
        assert sample > 0
        assert monitor.get_performance_summary()["peak_memory_mb"] is not None
