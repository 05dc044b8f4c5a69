"""
Run and stage timing shared by the CLI and the pipelines.

Every completed run is logged as one JSON event; stage timings are logged at
DEBUG and folded into the summary printed when the CLI exits.
"""

import json
import logging
import time
from collections import Counter, deque
from dataclasses import asdict, dataclass
from datetime import datetime
from typing import Any, Deque, Dict, List, Optional, Sequence

logger = logging.getLogger(__name__)


@dataclass
class Metric:
    """One finished command or pipeline run."""

    timestamp: str
    app_name: str
    run_id: str
    latency_ms: float
    success: bool
    error: Optional[str] = None


def _percentile(ordered: Sequence[float], fraction: float) -> float:
    return ordered[min(len(ordered) - 1, int(len(ordered) * fraction))]


class MetricsCollector:
    """Bounded history of runs plus per-stage latencies for one app."""

    def __init__(self, app_name: str, max_history: int = 1000):
        self.app_name = app_name
        self.metrics: Deque[Metric] = deque(maxlen=max_history)
        self.run_times: List[float] = []
        self.stage_times: Dict[str, List[float]] = {}
        self.errors: Counter = Counter()

    def record(
        self, run_id: str, latency_ms: float, success: bool = True, error: Optional[str] = None
    ) -> None:
        """Record one completed command or pipeline run."""
        metric = Metric(
            timestamp=datetime.utcnow().isoformat(),
            app_name=self.app_name,
            run_id=run_id,
            latency_ms=latency_ms,
            success=success,
            error=error,
        )
        self.metrics.append(metric)
        self.run_times.append(latency_ms)
        if not success:
            self.errors[error or "unknown"] += 1
        logger.info(json.dumps({"event": "run_completed", "metric": asdict(metric)}))

    def record_stage(self, run_id: str, stage: str, latency_ms: float, **details: Any) -> None:
        """Record the duration of one named stage of a run."""
        self.stage_times.setdefault(stage, []).append(latency_ms)
        event = {
            "event": "stage_completed",
            "app_name": self.app_name,
            "run_id": run_id,
            "stage": stage,
            "latency_ms": round(latency_ms, 3),
        }
        event.update(details)
        logger.debug(json.dumps(event))

    def get_stats(self) -> Dict[str, Any]:
        """Latency summary over all runs; empty until the first run is recorded."""
        if not self.run_times:
            return {}
        ordered = sorted(self.run_times)
        stats: Dict[str, Any] = {
            "total_runs": len(ordered),
            "avg_latency_ms": sum(ordered) / len(ordered),
            "p50_latency_ms": _percentile(ordered, 0.5),
            "p99_latency_ms": _percentile(ordered, 0.99),
            "min_latency_ms": ordered[0],
            "max_latency_ms": ordered[-1],
            "error_count": sum(self.errors.values()),
        }
        if self.errors:
            stats["errors"] = dict(self.errors)
        if self.stage_times:
            stats["stage_avg_ms"] = {
                stage: sum(values) / len(values) for stage, values in sorted(self.stage_times.items())
            }
            stats["stage_max_ms"] = {stage: max(values) for stage, values in sorted(self.stage_times.items())}
        return stats

    def log_summary(self) -> None:
        stats = self.get_stats()
        if stats:
            logger.info(json.dumps({"event": "app_summary", "app_name": self.app_name, "stats": stats}))


_collectors: Dict[str, MetricsCollector] = {}


def get_collector(app_name: str) -> MetricsCollector:
    """Collector shared by every caller using the same app name."""
    if app_name not in _collectors:
        _collectors[app_name] = MetricsCollector(app_name)
    return _collectors[app_name]


class Timer:
    """Wall-clock timer; `elapsed_ms` is set when the block exits, even on error."""

    def __init__(self):
        self.start_time: Optional[float] = None
        self.elapsed_ms: float = 0.0

    def __enter__(self) -> "Timer":
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        if self.start_time is not None:
            self.elapsed_ms = (time.perf_counter() - self.start_time) * 1000
