import logging
import threading
from typing import Any, Dict

# Dictionary of warning and error counts, exposed in the CLI summary
log_metrics = {
    'event_count': 0,
    'events_by_level': {},
    'events_by_component': {},
}

# Lock for thread-safe access to metrics
metrics_lock = threading.Lock()


class DiagnosticsLogHandler(logging.Handler):
    """
    Log handler that counts warning and error records.

    Counts are kept per level and per component (the app logger name, e.g.
    'umbilics') and mirrored into the Prometheus counter log_events_total.
    """

    def __init__(self, level=logging.WARNING):
        super().__init__(level)

    def emit(self, record: logging.LogRecord) -> None:
        try:
            component = record.name.split('.')[0]
            with metrics_lock:
                log_metrics['event_count'] += 1
                by_level = log_metrics['events_by_level']
                by_level[record.levelname] = by_level.get(record.levelname, 0) + 1
                by_component = log_metrics['events_by_component']
                by_component[component] = by_component.get(component, 0) + 1

            from umbilic_atlas.metrics import record_log_event
            record_log_event(record.levelname, component)
        except Exception:
            self.handleError(record)


def get_log_metrics() -> Dict[str, Any]:
    """
    Get a copy of the current counts.

    Returns:
        Dict: Copy of the counts, nested dictionaries included
    """
    with metrics_lock:
        return {
            'event_count': log_metrics['event_count'],
            'events_by_level': dict(log_metrics['events_by_level']),
            'events_by_component': dict(log_metrics['events_by_component']),
        }


def reset_log_metrics() -> None:
    """
    Reset all counts to their initial values.
    Used by tests and at the start of each CLI invocation.
    """
    with metrics_lock:
        log_metrics['event_count'] = 0
        log_metrics['events_by_level'] = {}
        log_metrics['events_by_component'] = {}
