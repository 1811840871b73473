"""Logging utilities for pidensity."""

import json
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

from loguru import logger


class StructuredLogger:
    """Structured logger with optional JSON-lines output.

    Console output goes to stderr; stdout carries reports only.
    """

    def __init__(
        self,
        log_dir: Optional[str] = None,
        run_id: Optional[str] = None,
        level: str = "WARNING",
    ):
        self.run_id = run_id or datetime.now().strftime("%Y%m%d_%H%M%S")
        self.log_dir = Path(log_dir) if log_dir else None

        logger.remove()

        logger.add(
            sys.stderr,
            format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
                   "<level>{level: <8}</level> | "
                   "<cyan>{name}</cyan>:<cyan>{function}</cyan> - "
                   "<level>{message}</level>",
            level=level,
        )

        self.json_log_path: Optional[Path] = None
        if self.log_dir is not None:
            self.log_dir.mkdir(parents=True, exist_ok=True)
            self.json_log_path = self.log_dir / f"run_{self.run_id}.jsonl"
            logger.add(
                self.json_log_path,
                format="{time} | {level} | {name}:{function}:{line} | {message}",
                level="DEBUG",
                serialize=True,
            )

    def info(self, message: str, **kwargs: Any) -> None:
        logger.bind(**kwargs).info(message)

    def warning(self, message: str, **kwargs: Any) -> None:
        logger.bind(**kwargs).warning(message)

    def error(self, message: str, **kwargs: Any) -> None:
        logger.bind(**kwargs).error(message)

    def debug(self, message: str, **kwargs: Any) -> None:
        logger.bind(**kwargs).debug(message)

    def save_summary(self, summary: Dict[str, Any]) -> Optional[Path]:
        """Write a run summary next to the JSON log, if a log directory is configured."""
        if self.log_dir is None:
            return None
        path = self.log_dir / f"summary_{self.run_id}.json"
        payload = dict(summary, run_id=self.run_id, timestamp=datetime.now().isoformat())
        with open(path, "w", encoding="utf-8") as f:
            json.dump(payload, f, ensure_ascii=False, indent=2)
        self.info(f"Summary saved to {path}")
        return path


def get_logger(
    log_dir: Optional[str] = None, run_id: Optional[str] = None, level: str = "WARNING"
) -> StructuredLogger:
    """Get configured logger instance."""
    return StructuredLogger(log_dir, run_id, level)
