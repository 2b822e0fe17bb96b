#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
RM-MWPC - Performance Monitor
Simülasyon süresi, fonksiyon zamanlamaları ve bellek kullanımı takibi
"""

import logging
import threading
import time
from collections import deque
from dataclasses import dataclass
from datetime import datetime
from functools import wraps
from typing import Any, Callable, Dict, Optional

# Psutil'i güvenli şekilde import et
try:
    import psutil
    PSUTIL_AVAILABLE = True
except ImportError:
    PSUTIL_AVAILABLE = False
    psutil = None


@dataclass
class PerformanceMetric:
    """Performance metrik veri yapısı"""
    name: str
    value: float
    unit: str
    timestamp: datetime
    category: str
    details: Optional[Dict[str, Any]] = None


class PerformanceMonitor:
    """Performance monitoring sınıfı"""

    def __init__(self, max_metrics: int = 1000):
        self.logger = logging.getLogger(__name__)
        self.max_metrics = max_metrics

        self.metrics = deque(maxlen=max_metrics)
        self.function_timings: Dict[str, Dict[str, float]] = {}
        self.memory_usage = deque(maxlen=100)

        self.thresholds = {
            'slow_function_s': 600.0,
            'high_memory_mb': 4096,
        }

        self.lock = threading.Lock()

    def record_metric(self, name: str, value: float, unit: str,
                      category: str = "general", details: Optional[Dict] = None):
        """Manuel metrik kaydı"""
        metric = PerformanceMetric(
            name=name,
            value=value,
            unit=unit,
            timestamp=datetime.now(),
            category=category,
            details=details,
        )
        with self.lock:
            self.metrics.append(metric)

    def record_timing(self, func_name: str, execution_time: float):
        """Fonksiyon süresini kaydet"""
        with self.lock:
            timing = self.function_timings.setdefault(
                func_name, {'total_time': 0.0, 'call_count': 0, 'avg_time': 0.0})
            timing['total_time'] += execution_time
            timing['call_count'] += 1
            timing['avg_time'] = timing['total_time'] / timing['call_count']

        if execution_time > self.thresholds['slow_function_s']:
            self.logger.warning(f"Slow function: {func_name} took {execution_time:.1f}s")

    def sample_memory(self) -> Optional[float]:
        """Process bellek kullanımını örnekle (MB)"""
        if not PSUTIL_AVAILABLE:
            return None
        try:
            process_mb = psutil.Process().memory_info().rss / 1024 / 1024
        except Exception as e:
            self.logger.debug(f"Memory sampling failed: {e}")
            return None

        with self.lock:
            self.memory_usage.append({'timestamp': datetime.now(), 'process_mb': process_mb})
        if process_mb > self.thresholds['high_memory_mb']:
            self.logger.warning(f"High memory usage: {process_mb:.1f}MB")
        return process_mb

    def get_performance_summary(self) -> Dict[str, Any]:
        """Performance özeti döndür"""
        with self.lock:
            memory = [m['process_mb'] for m in self.memory_usage]
            return {
                'timestamp': datetime.now().isoformat(),
                'metrics_count': len(self.metrics),
                'peak_memory_mb': round(max(memory), 1) if memory else None,
                'function_timings': {
                    name: {
                        'calls': int(data['call_count']),
                        'total_s': round(data['total_time'], 3),
                        'avg_s': round(data['avg_time'], 3),
                    }
                    for name, data in self.function_timings.items()
                },
            }

    def reset(self):
        """Tüm kayıtları temizle"""
        with self.lock:
            self.metrics.clear()
            self.function_timings.clear()
            self.memory_usage.clear()


def monitor_performance(category: str = "function"):
    """Function performance monitoring decorator"""
    def decorator(func: Callable):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            func_name = f"{func.__module__}.{func.__name__}"
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                execution_time = time.perf_counter() - start_time
                performance_monitor.logger.error(
                    f"Function {func.__name__} failed after {execution_time:.3f}s: {e}")
                raise

            execution_time = time.perf_counter() - start_time
            performance_monitor.record_timing(func_name, execution_time)
            performance_monitor.record_metric(
                name="function_execution_time",
                value=execution_time,
                unit="seconds",
                category=category,
                details={'function': func_name},
            )
            return result
        return wrapper
    return decorator


# Global performance monitor instance
performance_monitor = PerformanceMonitor()
