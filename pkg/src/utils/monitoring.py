import json
import logging
import logging.handlers
import sys
import time
from contextlib import contextmanager
from datetime import datetime
from pathlib import Path
from typing import Dict, Iterator, List, Optional

import numpy as np

FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class PolyspaceLogger:
    """Configures and manages logging for polygon-space computations."""

    def __init__(self, log_dir: Optional[str] = None, log_level: str = "WARNING"):
        """
        Initialize the logger.

        Args:
            log_dir: Directory to store log files; console only when None
            log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        """
        self.log_dir = Path(log_dir) if log_dir else None
        self.log_level = getattr(logging, log_level.upper())
        self._setup_logging()

    def _setup_logging(self) -> None:
        formatter = logging.Formatter(FORMAT)

        root_logger = logging.getLogger()
        root_logger.setLevel(self.log_level)
        for handler in list(root_logger.handlers):
            if getattr(handler, '_polyspace', False):
                root_logger.removeHandler(handler)

        # stdout carries command output
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        console_handler._polyspace = True
        root_logger.addHandler(console_handler)

        if self.log_dir is None:
            return

        self.log_dir.mkdir(parents=True, exist_ok=True)

        general_handler = logging.handlers.RotatingFileHandler(
            self.log_dir / 'polyspace.log',
            maxBytes=10*1024*1024,  # 10MB
            backupCount=5
        )
        general_handler.setFormatter(formatter)
        general_handler._polyspace = True

        error_handler = logging.handlers.RotatingFileHandler(
            self.log_dir / 'errors.log',
            maxBytes=10*1024*1024,
            backupCount=5
        )
        error_handler.setFormatter(formatter)
        error_handler.setLevel(logging.ERROR)
        error_handler._polyspace = True

        results_handler = logging.handlers.RotatingFileHandler(
            self.log_dir / 'results.log',
            maxBytes=10*1024*1024,
            backupCount=5
        )
        results_handler.setFormatter(formatter)
        results_handler._polyspace = True

        root_logger.addHandler(general_handler)
        root_logger.addHandler(error_handler)

        results_logger = logging.getLogger('results')
        for handler in list(results_logger.handlers):
            if getattr(handler, '_polyspace', False):
                results_logger.removeHandler(handler)
        results_logger.addHandler(results_handler)
        results_logger.setLevel(logging.INFO)

    @staticmethod
    def log_result(payload: dict) -> None:
        """
        Log a command result.

        Args:
            payload: JSON-serialisable result description
        """
        logger = logging.getLogger('results')
        logger.info(f"Result: {json.dumps(payload, sort_keys=True)}")

    @staticmethod
    def log_error(error: Exception, context: Optional[str] = None) -> None:
        """
        Log error details with context.

        Args:
            error: Exception that occurred
            context: Additional context about the error
        """
        logger = logging.getLogger()
        error_msg = f"{str(error)}"
        if context:
            error_msg = f"{context}: {error_msg}"
        logger.error(error_msg, exc_info=logging.getLogger().isEnabledFor(logging.DEBUG))


class ComputationMonitor:
    """Tracks how long each operation takes across a session."""

    def __init__(self, output_dir: Optional[str] = None):
        """
        Initialize the monitor.

        Args:
            output_dir: Directory to store timing reports (optional)
        """
        self.output_dir = Path(output_dir) if output_dir else None
        if self.output_dir is not None:
            self.output_dir.mkdir(parents=True, exist_ok=True)
        self.logger = logging.getLogger(__name__)
        self.current_session = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.timings: Dict[str, List[float]] = {}

    @contextmanager
    def track(self, operation: str) -> Iterator[None]:
        """Time the enclosed block under ``operation``."""
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - start
            self.timings.setdefault(operation, []).append(elapsed)
            self.logger.debug(f"{operation} took {elapsed:.6f}s")

    def generate_report(self) -> dict:
        """
        Summarise recorded timings.

        Returns:
            Mapping operation -> {calls, total_seconds, mean_seconds, max_seconds}
        """
        report = {}
        for operation, samples in sorted(self.timings.items()):
            values = np.asarray(samples, dtype=float)
            report[operation] = {
                'calls': int(values.size),
                'total_seconds': float(values.sum()),
                'mean_seconds': float(values.mean()),
                'max_seconds': float(values.max()),
            }
        return report

    def save_report(self) -> Optional[Path]:
        """Write the report to the output directory, if one is configured."""
        if self.output_dir is None:
            return None
        output_file = self.output_dir / f"timings_{self.current_session}.json"
        try:
            with open(output_file, 'w') as f:
                json.dump(self.generate_report(), f, indent=4)
        except OSError as e:
            self.logger.error(f"Failed to save timings: {str(e)}")
            return None
        return output_file
