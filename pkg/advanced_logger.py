#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
RM-MWPC - Gelişmiş Logging Sistemi
Structured logging, log rotation ve kategori logger'ları
"""

import json
import logging
import logging.handlers
import os
import sys
import threading
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

import colorlog

LOGGER_PREFIX = "rm_mwpc"


class LogCategory(Enum):
    """Log kategorileri"""
    SYSTEM = "SYSTEM"
    SIMULATION = "SIMULATION"
    DECODER = "DECODER"
    PERFORMANCE = "PERFORMANCE"


@dataclass
class StructuredLogEntry:
    """Yapılandırılmış log entry"""
    timestamp: str
    level: str
    category: str
    message: str
    module: str
    function: str
    line_number: int
    thread_id: str
    process_id: int
    extra_data: Optional[Dict[str, Any]] = None


# LogRecord'un standart alanları; extra_data'ya kopyalanmaz
_SKIP_ATTRS = {
    'name', 'msg', 'args', 'levelname', 'levelno', 'pathname', 'filename',
    'module', 'lineno', 'funcName', 'created', 'msecs', 'relativeCreated',
    'thread', 'threadName', 'processName', 'process', 'getMessage',
    'exc_info', 'exc_text', 'stack_info', 'taskName', 'category', 'message',
}


class StructuredFormatter(logging.Formatter):
    """JSON formatında structured logging formatter"""

    def __init__(self, include_extra: bool = True):
        super().__init__()
        self.include_extra = include_extra

    def format(self, record: logging.LogRecord) -> str:
        log_entry = StructuredLogEntry(
            timestamp=datetime.fromtimestamp(record.created, tz=timezone.utc).isoformat(),
            level=record.levelname,
            category=getattr(record, 'category', LogCategory.SYSTEM.value),
            message=record.getMessage(),
            module=record.module,
            function=record.funcName,
            line_number=record.lineno,
            thread_id=str(threading.get_ident()),
            process_id=os.getpid(),
        )

        if self.include_extra:
            extra_data = {}
            for key, value in record.__dict__.items():
                if key in _SKIP_ATTRS or key.startswith('_'):
                    continue
                try:
                    json.dumps(value)
                    extra_data[key] = value
                except (TypeError, ValueError):
                    extra_data[key] = str(value)
            if extra_data:
                log_entry.extra_data = extra_data

        if record.exc_info:
            if not log_entry.extra_data:
                log_entry.extra_data = {}
            log_entry.extra_data['exception'] = self.formatException(record.exc_info)

        try:
            return json.dumps(asdict(log_entry), ensure_ascii=False, separators=(',', ':'))
        except Exception:
            return f"{log_entry.timestamp} [{log_entry.level}] {log_entry.message}"


class AdvancedLogger:
    """Gelişmiş logging sistemi"""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = self._get_default_config()
        if config:
            self.config.update(config)
        self.loggers: Dict[str, logging.Logger] = {}
        self.handlers: Dict[str, logging.Handler] = {}

        self._setup_logging()

    def _get_default_config(self) -> Dict[str, Any]:
        """Default logging konfigürasyonu"""
        return {
            'level': 'INFO',
            'file_path': 'logs/rm_mwpc.log',
            'max_file_size_mb': 10,
            'backup_count': 5,
            'console_logging': True,
            'file_logging': False,
            'structured': True,
            'colored_console': True,
        }

    def _setup_logging(self):
        """Logging sistemini kur"""
        root_logger = logging.getLogger()
        root_logger.setLevel(getattr(logging, str(self.config['level']).upper(), logging.INFO))

        # Önceki kurulumdan kalan handler'ları temizle
        for handler in list(root_logger.handlers):
            root_logger.removeHandler(handler)

        if self.config.get('console_logging', True):
            console_handler = logging.StreamHandler(sys.stderr)
            console_format = '%(asctime)s [%(levelname)8s] %(name)s: %(message)s'
            if self.config.get('colored_console', True):
                console_formatter = colorlog.ColoredFormatter(
                    '%(log_color)s' + console_format,
                    log_colors={
                        'DEBUG': 'cyan',
                        'INFO': 'green',
                        'WARNING': 'yellow',
                        'ERROR': 'red',
                        'CRITICAL': 'purple',
                    },
                )
            else:
                console_formatter = logging.Formatter(console_format)
            console_handler.setFormatter(console_formatter)
            root_logger.addHandler(console_handler)
            self.handlers['console'] = console_handler

        if self.config.get('file_logging', False):
            self._setup_file_handler()

        for category in LogCategory:
            self.loggers[category.value.lower()] = logging.getLogger(
                f"{LOGGER_PREFIX}.{category.value.lower()}")

    def _setup_file_handler(self):
        """Dosya handler'ını kur"""
        log_file = Path(self.config['file_path'])
        log_file.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=int(self.config.get('max_file_size_mb', 10)) * 1024 * 1024,
            backupCount=int(self.config.get('backup_count', 5)),
            encoding='utf-8',
        )
        if self.config.get('structured', True):
            file_handler.setFormatter(StructuredFormatter())
        else:
            file_handler.setFormatter(logging.Formatter(
                '%(asctime)s [%(levelname)8s] %(name)s:%(funcName)s:%(lineno)d - %(message)s'))

        logging.getLogger().addHandler(file_handler)
        self.handlers['main_file'] = file_handler

    def get_logger(self, category: str = "system") -> logging.Logger:
        """Kategori logger'ını al"""
        category = category.lower()
        if category in self.loggers:
            return self.loggers[category]
        return logging.getLogger(f"{LOGGER_PREFIX}.{category}")

    def log_performance_metric(self, metric_name: str, value: float,
                               unit: str, details: Optional[Dict[str, Any]] = None):
        """Performance metriğini logla"""
        extra = {
            'category': LogCategory.PERFORMANCE.value,
            'metric_name': metric_name,
            'metric_value': value,
            'metric_unit': unit,
        }
        if details:
            extra.update(details)
        self.get_logger("performance").info(
            f"Performance metric: {metric_name} = {value:.6g} {unit}", extra=extra)

    def log_sweep_point(self, record: Any):
        """Tamamlanan bir sweep noktasını logla"""
        extra = {
            'category': LogCategory.SIMULATION.value,
            'channel_param': record.param,
            'frames': record.frames,
            'block_errors': record.block_errors,
            'bler': record.bler,
        }
        self.get_logger("simulation").info(
            f"{record.code} {record.channel}={record.param:g} {record.decoder}/{record.matrix_policy}: "
            f"{record.block_errors}/{record.frames} errors, BLER={record.bler:.4g}",
            extra=extra,
        )


# Global logger instance (setup_logging ile oluşturulur)
_advanced_logger: Optional[AdvancedLogger] = None


def setup_logging(config: Optional[Dict[str, Any]] = None) -> AdvancedLogger:
    """Logging sistemini kur ve global instance'ı döndür"""
    global _advanced_logger
    _advanced_logger = AdvancedLogger(config)
    return _advanced_logger


def get_logger(category: str = "system") -> logging.Logger:
    """Logger al"""
    if _advanced_logger is None:
        return logging.getLogger(f"{LOGGER_PREFIX}.{category.lower()}")
    return _advanced_logger.get_logger(category)


def log_performance_metric(metric_name: str, value: float, unit: str, **kwargs):
    """Performance metrik logla"""
    if _advanced_logger is not None:
        _advanced_logger.log_performance_metric(metric_name, value, unit, kwargs)
    else:
        get_logger("performance").info(f"Performance metric: {metric_name} = {value:.6g} {unit}")


def log_sweep_point(record: Any):
    """Sweep noktası logla"""
    if _advanced_logger is not None:
        _advanced_logger.log_sweep_point(record)
    else:
        get_logger("simulation").info(
            f"{record.code} {record.channel}={record.param:g}: "
            f"{record.block_errors}/{record.frames} errors, BLER={record.bler:.4g}")
