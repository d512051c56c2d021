"""
Metrics collection for umbilic analyses.
This module defines the Prometheus metrics and helpers to record them.
"""

import logging
import time
from typing import Optional

from prometheus_client import REGISTRY, Counter, Gauge, Histogram, write_to_textfile

logger = logging.getLogger('umbilic_atlas')

# Counters
analyses_total = Counter('analyses_total', 'Total number of CLI analyses', ['command'])
umbilics_found_total = Counter('umbilics_found_total', 'Umbilic points located', ['kind'])
errors_total = Counter('errors_total', 'Total number of errors', ['component', 'error_type'])
log_events_total = Counter('log_events_total', 'Warning and error log records', ['level', 'component'])

# Histograms for timing
analysis_stage_duration = Histogram('analysis_stage_seconds', 'Time spent per analysis stage', ['stage'],
                                    buckets=[0.001, 0.01, 0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0])

# Gauges for the last ledger
last_ph_sum_halves = Gauge('last_ph_sum_halves', 'Index sum (in halves) of the last ledger')


# Timer context manager
class Timer:
    """Observe a stage duration; `elapsed_ms` is available after exit."""

    def __init__(self, stage: str, metric: Optional[Histogram] = None):
        self.stage = stage
        self.metric = metric if metric is not None else analysis_stage_duration
        self.elapsed_ms = 0.0

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        elapsed = time.perf_counter() - self.start
        self.elapsed_ms = elapsed * 1000.0
        self.metric.labels(stage=self.stage).observe(elapsed)


def record_analysis(command: str):
    analyses_total.labels(command=command).inc()


def record_umbilics(kind: str, count: int):
    if count:
        umbilics_found_total.labels(kind=kind).inc(count)


def record_error(component, error_type):
    """Record an error"""
    errors_total.labels(component=component, error_type=error_type).inc()


def record_log_event(level: str, component: str):
    log_events_total.labels(level=level, component=component).inc()


def record_ledger(sum_halves: int):
    last_ph_sum_halves.set(sum_halves)


def write_metrics(path: str) -> None:
    """Write the registry in the node-exporter textfile format."""
    try:
        write_to_textfile(path, REGISTRY)
        logger.info(f"Metrics written to {path}")
    except OSError as e:
        logger.error(f"Failed to write metrics to {path}: {str(e)}")
